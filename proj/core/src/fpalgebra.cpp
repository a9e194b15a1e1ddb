#include "crystalline/fpalgebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crystalline {

namespace {

const RingSpec kZ = RingSpec::integers();

FpVec fp_add(const FpVec& x, const FpVec& y, const BigInt& p) {
    FpVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod_norm(x[i] + y[i], p);
    return z;
}

FpVec fp_scale(const BigInt& c, const FpVec& x, const BigInt& p) {
    FpVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod_mul(c, x[i], p);
    return z;
}

bool fp_is_zero(const FpVec& x) {
    return std::all_of(x.begin(), x.end(), [](const BigInt& c) { return c == 0; });
}

}  // namespace

FpBasis fp_rref(FpBasis rows, const BigInt& p) {
    std::size_t r = 0;
    const std::size_t k = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < k && r < rows.size(); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][col] != 0) { piv = i; break; }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        BigInt inv = mod_inv(rows[r][col], p);
        rows[r] = fp_scale(inv, rows[r], p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            BigInt f = mod_norm(p - rows[i][col], p);
            rows[i] = fp_add(rows[i], fp_scale(f, rows[r], p), p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool fp_in_span(const FpBasis& rref, FpVec v, const BigInt& p) {
    for (const FpVec& row : rref) {
        std::size_t pc = 0;
        while (pc < row.size() && row[pc] == 0) ++pc;
        if (pc == row.size() || v[pc] == 0) continue;
        BigInt f = mod_norm(p - v[pc], p);
        v = fp_add(v, fp_scale(f, row, p), p);
    }
    return fp_is_zero(v);
}

FpBasis fp_left_nullspace(const std::vector<FpVec>& A, const BigInt& p) {
    const std::size_t m = A.size();
    if (m == 0) return {};
    const std::size_t k = A[0].size();
    // row-reduce [A | I] and read off rows whose A-part vanished
    FpBasis aug(m, FpVec(k + m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = A[i][j];
        aug[i][k + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < m; ++col) {
        std::size_t piv = m;
        for (std::size_t i = r; i < m; ++i)
            if (aug[i][col] != 0) { piv = i; break; }
        if (piv == m) continue;
        std::swap(aug[r], aug[piv]);
        BigInt inv = mod_inv(aug[r][col], p);
        aug[r] = fp_scale(inv, aug[r], p);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || aug[i][col] == 0) continue;
            BigInt f = mod_norm(p - aug[i][col], p);
            aug[i] = fp_add(aug[i], fp_scale(f, aug[r], p), p);
        }
        ++r;
    }
    FpBasis out;
    for (std::size_t i = r; i < m; ++i)
        out.emplace_back(aug[i].begin() + k, aug[i].end());
    return fp_rref(std::move(out), p);
}

FpVec FpQuotient::project(const AElement& x) const {
    FlatVec f = flat_of_elem(x);
    KRow v(f.v.size());
    for (std::size_t j = 0; j < f.v.size(); ++j)
        v[j] = knormalize({RElem(f.v[j].a * amb.den), f.den});
    auto c = solve_in_echelon(kZ, amb.zbasis, v);
    if (!c) throw std::logic_error("FpQuotient::project: element outside the ambient lattice");
    RRow coords(c->size());
    for (std::size_t j = 0; j < c->size(); ++j) {
        if (!kis_integral((*c)[j]))
            throw std::logic_error("FpQuotient::project: element outside the ambient lattice");
        coords[j] = (*c)[j].num;
    }
    RRow rem = rmat_reduce_row(kZ, rel_hnf, std::move(coords));
    FpVec out(proj_cols.size());
    for (std::size_t k = 0; k < proj_cols.size(); ++k) out[k] = mod_norm(rem[proj_cols[k]].a, p);
    return out;
}

AElement FpQuotient::lift(const FpVec& v) const {
    AElement acc = elem_zero(ring);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        acc = elem_add(acc, elem_scale(kfrom_int(v[k]), lift_basis((int)k)));
    }
    return acc;
}

AElement FpQuotient::lift_basis(int k) const {
    return elem_of_flat(ring, amb.zbasis[proj_cols[k]], amb.den);
}

FpQuotient fp_quotient(const FullLattice& amb, const FullLattice& sub, const BigInt& p) {
    if (!lat_contains(amb, sub)) throw std::logic_error("fp_quotient: sub is not inside amb");
    FpQuotient Q;
    Q.ring = amb.ring;
    Q.amb = amb;
    Q.sub = sub;
    Q.p = p;
    const int d = amb.dim();
    RMat T;
    for (const auto& row : sub.zbasis) {
        KRow v(d);
        for (int j = 0; j < d; ++j) v[j] = knormalize({RElem(row[j].a * amb.den), sub.den});
        auto c = solve_in_echelon(kZ, amb.zbasis, v);
        if (!c) throw std::logic_error("fp_quotient: inconsistent bases");
        RRow coords(d);
        for (int j = 0; j < d; ++j) {
            if (!kis_integral((*c)[j])) throw std::logic_error("fp_quotient: inconsistent bases");
            coords[j] = (*c)[j].num;
        }
        T.push_back(std::move(coords));
    }
    Q.rel_hnf = rmat_hnf(kZ, std::move(T));
    if ((int)Q.rel_hnf.size() != d) throw std::logic_error("fp_quotient: sublattice not full");
    for (int i = 0; i < d; ++i) {
        const BigInt& piv = Q.rel_hnf[i][i].a;
        if (piv == p)
            Q.proj_cols.push_back(i);
        else if (piv != 1)
            throw std::logic_error("fp_quotient: quotient exponent is not p");
    }
    Q.dim = (int)Q.proj_cols.size();
    return Q;
}

FpVec FpAlgebra::mul(const FpVec& x, const FpVec& y) const {
    FpVec z(dim(), 0);
    for (int i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim(); ++j) {
            if (y[j] == 0) continue;
            BigInt c = mod_mul(x[i], y[j], p());
            z = fp_add(z, fp_scale(c, mult[i][j], p()), p());
        }
    }
    return z;
}

FpVec FpAlgebra::pow(const FpVec& x, unsigned e) const {
    FpVec r = one, b = x;
    while (e) {
        if (e & 1u) r = mul(r, b);
        b = mul(b, b);
        e >>= 1u;
    }
    return r;
}

std::vector<FpVec> FpAlgebra::left_regular(const FpVec& x) const {
    std::vector<FpVec> M(dim());
    for (int i = 0; i < dim(); ++i) {
        FpVec e(dim(), 0);
        e[i] = 1;
        M[i] = mul(x, e);
    }
    return M;
}

FpAlgebra fp_algebra(const FullLattice& order, const RElem& pi) {
    const RingPtr& A = order.ring;
    if (pi.b != 0 && A->has_conjugation())
        throw std::logic_error("fp_algebra: non-invariant modulus");
    BigInt p;
    if (pi.b == 0) {
        p = abs_int(pi.a);
    } else {
        auto fs = factor_integer(rnorm_abs(A->ring, pi));
        p = fs.front().first;
    }
    if (!is_prime(p)) throw NotPrimeError("fp_algebra: modulus is not prime");
    FullLattice sub = lat_scale(order, kfrom(pi));
    FpAlgebra alg;
    alg.q = fp_quotient(order, sub, p);
    const int m = alg.q.dim;
    alg.mult.assign(m, std::vector<FpVec>(m));
    for (int i = 0; i < m; ++i) {
        AElement bi = alg.q.lift_basis(i);
        for (int j = 0; j < m; ++j)
            alg.mult[i][j] = alg.q.project(elem_mul(bi, alg.q.lift_basis(j)));
    }
    alg.one = alg.q.project(elem_one(A));
    return alg;
}

std::vector<BigInt> charpoly_mod_p(const std::vector<FpVec>& M, const BigInt& p) {
    const int m = (int)M.size();
    // Faddeev-LeVerrier on an integer lift; every division is exact
    std::vector<std::vector<BigInt>> A(m, std::vector<BigInt>(m)), N(m, std::vector<BigInt>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A[i][j] = M[i][j];
    for (int i = 0; i < m; ++i) N[i][i] = 1;
    std::vector<BigInt> cs;
    BigInt c = 1;
    for (int k = 1; k <= m; ++k) {
        // N <- A * (N + c_{k-1} I) with c_0 = 1 handled by seeding N = I
        std::vector<std::vector<BigInt>> AN(m, std::vector<BigInt>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < m; ++l) {
                if (A[i][l] == 0) continue;
                for (int j = 0; j < m; ++j) AN[i][j] += A[i][l] * N[l][j];
            }
        BigInt tr = 0;
        for (int i = 0; i < m; ++i) tr += AN[i][i];
        c = -exact_div(tr, k);
        cs.push_back(mod_norm(c, p));
        for (int i = 0; i < m; ++i) AN[i][i] += c;
        N = std::move(AN);
    }
    return cs;
}

FpBasis fp_radical(const FpAlgebra& A) {
    const BigInt& p = A.p();
    const int m = A.dim();
    FpBasis cur;
    for (int i = 0; i < m; ++i) {
        FpVec e(m, 0);
        e[i] = 1;
        cur.push_back(std::move(e));
    }
    cur = fp_rref(std::move(cur), p);
    BigInt pj = 1;  // p^j <= m
    for (int j = 0; pj <= m; ++j, pj *= p) {
        if (cur.empty()) break;
        std::size_t idx = (std::size_t)pj.convert_to<unsigned long>() - 1;  // c_{p^j}
        std::vector<FpVec> constraints;
        for (const FpVec& x : cur) {
            FpVec row;
            for (const FpVec& y : cur)
                row.push_back(charpoly_mod_p(A.left_regular(A.mul(x, y)), p)[idx]);
            constraints.push_back(std::move(row));
        }
        FpBasis lam = fp_left_nullspace(constraints, p);
        FpBasis next;
        for (const FpVec& l : lam) {
            FpVec v(m, 0);
            for (std::size_t i = 0; i < cur.size(); ++i)
                if (l[i] != 0) v = fp_add(v, fp_scale(l[i], cur[i], p), p);
            next.push_back(std::move(v));
        }
        next = fp_rref(std::move(next), p);
        // the kernel description relies on additivity of the coefficient map
        // on the current ideal; re-verify membership directly
        for (const FpVec& x : next)
            for (const FpVec& y : cur)
                if (charpoly_mod_p(A.left_regular(A.mul(x, y)), p)[idx] != 0)
                    throw std::logic_error("fp_radical: coefficient map not additive");
        cur = std::move(next);
    }
    // sanity: two-sided and nilpotent
    for (const FpVec& r : cur)
        for (int i = 0; i < m; ++i) {
            FpVec e(m, 0);
            e[i] = 1;
            if (!fp_in_span(cur, A.mul(r, e), p) || !fp_in_span(cur, A.mul(e, r), p))
                throw std::logic_error("fp_radical: result is not an ideal");
        }
    FpBasis pw = cur;
    for (int step = 0; step < m + 1 && !pw.empty(); ++step) {
        FpBasis nxt;
        for (const FpVec& x : pw)
            for (const FpVec& y : cur) nxt.push_back(A.mul(x, y));
        pw = fp_rref(std::move(nxt), p);
    }
    if (!pw.empty()) throw std::logic_error("fp_radical: result is not nilpotent");
    return cur;
}

FpBasis fp_center(const FpAlgebra& A) {
    const int m = A.dim();
    std::vector<FpVec> constraints(m);
    for (int j = 0; j < m; ++j) {
        FpVec row;
        for (int i = 0; i < m; ++i) {
            FpVec diff = fp_add(A.mult[j][i], fp_scale(A.p() - 1, A.mult[i][j], A.p()), A.p());
            row.insert(row.end(), diff.begin(), diff.end());
        }
        constraints[j] = std::move(row);
    }
    return fp_left_nullspace(constraints, A.p());
}

namespace {

// --- dense univariate polynomials over F_p ----------------------------------

using Poly = std::vector<BigInt>;  // little-endian, no leading zeros

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, const BigInt& p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = mod_norm(h[i + j] + f[i] * g[j], p);
    return poly_trim(std::move(h));
}

Poly poly_mod(Poly f, const Poly& g, const BigInt& p) {
    BigInt lead_inv = mod_inv(g.back(), p);
    while (f.size() >= g.size() && !f.empty()) {
        BigInt c = mod_mul(f.back(), lead_inv, p);
        std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = mod_norm(f[shift + i] - c * g[i], p);
        f = poly_trim(std::move(f));
    }
    return f;
}

Poly poly_gcd(Poly f, Poly g, const BigInt& p) {
    f = poly_trim(std::move(f));
    g = poly_trim(std::move(g));
    while (!g.empty()) {
        Poly r = poly_mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        BigInt inv = mod_inv(f.back(), p);
        for (auto& c : f) c = mod_mul(c, inv, p);
    }
    return f;
}

Poly poly_powmod(Poly base, BigInt e, const Poly& mod, const BigInt& p) {
    Poly r{1};
    base = poly_mod(std::move(base), mod, p);
    while (e > 0) {
        if ((e & 1) != 0) r = poly_mod(poly_mul(r, base, p), mod, p);
        base = poly_mod(poly_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

Poly poly_deriv(const Poly& f, const BigInt& p) {
    Poly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mod_norm(f[i] * i, p));
    return poly_trim(std::move(d));
}

// deterministic little generator for the splitting attempts
struct Lcg {
    unsigned long long s;
    unsigned long long next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 11;
    }
};

void factor_equal_degree(const Poly& f, std::size_t d, const BigInt& p, std::vector<Poly>& out,
                         Lcg& rng) {
    if (f.size() - 1 == d) {
        out.push_back(f);
        return;
    }
    const std::size_t deg = f.size() - 1;
    for (;;) {
        Poly r(deg);
        for (auto& c : r) c = mod_norm(BigInt(rng.next()), p);
        r = poly_trim(std::move(r));
        if (r.size() < 2) continue;
        Poly g;
        if (p == 2) {
            // trace map over F_{2^d}
            Poly t = r, acc = r;
            for (std::size_t i = 1; i < d; ++i) {
                t = poly_mod(poly_mul(t, t, p), f, p);
                for (std::size_t j = 0; j < t.size(); ++j) {
                    if (acc.size() <= j) acc.resize(j + 1, 0);
                    acc[j] = mod_norm(acc[j] + t[j], p);
                }
            }
            g = poly_gcd(f, poly_trim(std::move(acc)), p);
        } else {
            BigInt e = (pow_int(p, (unsigned)d) - 1) / 2;
            Poly s = poly_powmod(r, e, f, p);
            if (!s.empty()) s[0] = mod_norm(s[0] - 1, p);
            g = poly_gcd(f, poly_trim(std::move(s)), p);
        }
        if (g.size() > 1 && g.size() < f.size()) {
            Poly q = f, rem;
            // f / g by repeated subtraction via poly_mod of a product check
            // (compute quotient by long division)
            Poly quot;
            {
                Poly num = f;
                BigInt lead_inv = mod_inv(g.back(), p);
                quot.assign(num.size() - g.size() + 1, 0);
                while (num.size() >= g.size() && !num.empty()) {
                    BigInt c = mod_mul(num.back(), lead_inv, p);
                    std::size_t shift = num.size() - g.size();
                    quot[shift] = c;
                    for (std::size_t i = 0; i < g.size(); ++i)
                        num[shift + i] = mod_norm(num[shift + i] - c * g[i], p);
                    num = poly_trim(std::move(num));
                }
            }
            factor_equal_degree(g, d, p, out, rng);
            factor_equal_degree(poly_trim(std::move(quot)), d, p, out, rng);
            return;
        }
    }
}

// f monic squarefree; returns monic irreducible factors sorted
std::vector<Poly> poly_factor_squarefree(const Poly& f0, const BigInt& p) {
    std::vector<Poly> out;
    Poly f = f0;
    Lcg rng{0x9e3779b97f4a7c15ull ^ (unsigned long long)f0.size()};
    Poly x{0, 1};
    Poly h = x;  // x^(p^d) mod f
    std::size_t d = 0;
    while (f.size() > 1) {
        ++d;
        h = poly_powmod(h, p, f, p);
        Poly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = mod_norm(hx[1] - 1, p);
        Poly g = poly_gcd(f, poly_trim(std::move(hx)), p);
        if (g.size() > 1) {
            factor_equal_degree(g, d, p, out, rng);
            // f /= g
            Poly num = f;
            BigInt lead_inv = mod_inv(g.back(), p);
            Poly quot(num.size() - g.size() + 1, 0);
            while (num.size() >= g.size() && !num.empty()) {
                BigInt c = mod_mul(num.back(), lead_inv, p);
                std::size_t shift = num.size() - g.size();
                quot[shift] = c;
                for (std::size_t i = 0; i < g.size(); ++i)
                    num[shift + i] = mod_norm(num[shift + i] - c * g[i], p);
                num = poly_trim(std::move(num));
            }
            f = poly_trim(std::move(quot));
            h = poly_mod(h, f, p);
        }
        if (2 * (d + 1) > f.size() - 1 && f.size() > 1) {
            out.push_back(f);  // remaining factor is irreducible
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// extended euclid: u with u*a = 1 mod m (a, m coprime polynomials)
Poly poly_invmod(const Poly& a, const Poly& m, const BigInt& p) {
    Poly r0 = m, r1 = poly_mod(a, m, p), s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        Poly num = r0, quot(std::max<std::size_t>(r0.size(), 1), 0);
        BigInt lead_inv = mod_inv(r1.back(), p);
        while (num.size() >= r1.size() && !num.empty()) {
            BigInt c = mod_mul(num.back(), lead_inv, p);
            std::size_t shift = num.size() - r1.size();
            quot[shift] = mod_norm(quot[shift] + c, p);
            for (std::size_t i = 0; i < r1.size(); ++i)
                num[shift + i] = mod_norm(num[shift + i] - c * r1[i], p);
            num = poly_trim(std::move(num));
        }
        Poly r2 = std::move(num);
        Poly qs1 = poly_mul(poly_trim(std::move(quot)), s1, p);
        Poly s2 = s0;
        if (s2.size() < qs1.size()) s2.resize(qs1.size(), 0);
        for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] = mod_norm(s2[i] - qs1[i], p);
        s2 = poly_trim(std::move(s2));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (r0.size() != 1) throw std::logic_error("poly_invmod: inputs not coprime");
    BigInt inv = mod_inv(r0[0], p);
    for (auto& c : s0) c = mod_mul(c, inv, p);
    return poly_trim(std::move(s0));
}

FpVec poly_eval_in_algebra(const FpAlgebra& A, const Poly& f, const FpVec& w, const FpVec& unit) {
    FpVec acc(A.dim(), 0);
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = A.mul(acc, w);
        if (f[i] != 0) acc = fp_add(acc, fp_scale(f[i], unit, A.p()), A.p());
    }
    return acc;
}

struct QuotientAlg {
    FpAlgebra alg;                 // quotient structure on complement coordinates
    std::vector<FpVec> reps;       // quotient basis vectors inside the parent
    FpBasis ideal;                 // rref of the ideal
    std::vector<int> free_cols;

    FpVec project(const FpVec& v, const BigInt& p) const {
        FpVec w = v;
        for (const FpVec& row : ideal) {
            std::size_t pc = 0;
            while (pc < row.size() && row[pc] == 0) ++pc;
            if (pc == row.size() || w[pc] == 0) continue;
            BigInt f = mod_norm(p - w[pc], p);
            w = fp_add(w, fp_scale(f, row, p), p);
        }
        FpVec out(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) out[k] = w[free_cols[k]];
        return out;
    }
};

// algebra structure on A/I for a two-sided ideal I (linear-algebra level
// only; lifts stay in the parent)
QuotientAlg quotient_algebra(const FpAlgebra& A, const FpBasis& ideal) {
    const BigInt& p = A.p();
    QuotientAlg Q;
    Q.ideal = ideal;
    std::set<int> pivots;
    for (const FpVec& row : ideal) {
        std::size_t pc = 0;
        while (pc < row.size() && row[pc] == 0) ++pc;
        pivots.insert((int)pc);
    }
    for (int i = 0; i < A.dim(); ++i)
        if (!pivots.count(i)) Q.free_cols.push_back(i);
    const int m = (int)Q.free_cols.size();
    for (int k = 0; k < m; ++k) {
        FpVec e(A.dim(), 0);
        e[Q.free_cols[k]] = 1;
        Q.reps.push_back(std::move(e));
    }
    Q.alg.q.p = p;
    Q.alg.q.dim = m;
    Q.alg.mult.assign(m, std::vector<FpVec>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            Q.alg.mult[i][j] = Q.project(A.mul(Q.reps[i], Q.reps[j]), p);
    Q.alg.one = Q.project(A.one, p);
    return Q;
}

}  // namespace

std::vector<FpBasis> fp_maximal_two_sided(const FpAlgebra& A) {
    const BigInt& p = A.p();
    FpBasis rad = fp_radical(A);
    QuotientAlg S = quotient_algebra(A, rad);
    const FpAlgebra& T = S.alg;
    if (T.dim() == 0) throw std::logic_error("fp_maximal_two_sided: zero quotient");

    FpBasis center = fp_center(T);
    std::vector<FpVec> idems{T.one};
    for (const FpVec& z0 : center) {
        std::vector<FpVec> next;
        for (const FpVec& e : idems) {
            FpVec w = T.mul(z0, e);
            // minimal polynomial of w in the unital algebra e*T
            std::vector<FpVec> pows{e};
            Poly minpoly;
            for (;;) {
                FpVec nxt = T.mul(pows.back(), w);
                std::vector<FpVec> test = pows;
                test.push_back(nxt);
                FpBasis null = fp_left_nullspace(test, p);
                bool dep = false;
                Poly dep_poly;
                for (const FpVec& lam : null)
                    if (lam.back() != 0) {
                        BigInt inv = mod_inv(lam.back(), p);
                        dep_poly.assign(lam.begin(), lam.end());
                        for (auto& c : dep_poly) c = mod_mul(c, inv, p);
                        dep = true;
                        break;
                    }
                if (dep) {
                    minpoly = poly_trim(std::move(dep_poly));
                    break;
                }
                pows.push_back(std::move(nxt));
            }
            if (minpoly.size() <= 2) {  // w scalar on this block
                next.push_back(e);
                continue;
            }
            Poly der = poly_deriv(minpoly, p);
            if (poly_gcd(minpoly, der, p).size() != 1)
                throw std::logic_error("fp_maximal_two_sided: center not semisimple");
            std::vector<Poly> factors = poly_factor_squarefree(minpoly, p);
            if (factors.size() == 1) {
                next.push_back(e);
                continue;
            }
            for (const Poly& fi : factors) {
                // h = minpoly / fi
                Poly num = minpoly, h(minpoly.size() - fi.size() + 1, 0);
                BigInt lead_inv = mod_inv(fi.back(), p);
                while (num.size() >= fi.size() && !num.empty()) {
                    BigInt c = mod_mul(num.back(), lead_inv, p);
                    std::size_t shift = num.size() - fi.size();
                    h[shift] = c;
                    for (std::size_t k = 0; k < fi.size(); ++k)
                        num[shift + k] = mod_norm(num[shift + k] - c * fi[k], p);
                    num = poly_trim(std::move(num));
                }
                h = poly_trim(std::move(h));
                Poly u = poly_invmod(h, fi, p);
                FpVec ei = poly_eval_in_algebra(T, poly_mul(u, h, p), w, e);
                next.push_back(std::move(ei));
            }
        }
        idems = std::move(next);
    }

    std::vector<FpBasis> out;
    for (const FpVec& e : idems) {
        // maximal ideal = preimage in A of the kernel of right multiplication
        // by the block idempotent on A/rad
        std::vector<FpVec> rows;
        for (const FpVec& r : rad) rows.push_back(r);
        std::vector<FpVec> constraints;
        for (int i = 0; i < A.dim(); ++i) {
            FpVec v(A.dim(), 0);
            v[i] = 1;
            constraints.push_back(T.mul(S.project(v, p), e));
        }
        for (const FpVec& v : fp_left_nullspace(constraints, p)) rows.push_back(v);
        out.push_back(fp_rref(std::move(rows), p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FpBasis> fp_all_two_sided(const FpAlgebra& A, unsigned long budget) {
    const BigInt& p = A.p();
    const int m = A.dim();
    BigInt total = pow_int(p, (unsigned)m);
    if (total > budget) throw BudgetExceededError("fp_all_two_sided: p^dim exceeds the budget");
    unsigned long count = total.convert_to<unsigned long>();
    unsigned long pl = p.convert_to<unsigned long>();
    std::set<FpBasis> ideals;
    ideals.insert(FpBasis{});
    for (unsigned long code = 1; code < count; ++code) {
        FpVec v(m, 0);
        unsigned long c = code;
        for (int i = 0; i < m; ++i) {
            v[i] = c % pl;
            c /= pl;
        }
        // two-sided closure of v
        FpBasis cur = fp_rref({v}, p);
        for (;;) {
            FpBasis nxt = cur;
            bool grew = false;
            for (const FpVec& x : cur)
                for (int i = 0; i < m; ++i) {
                    FpVec e(m, 0);
                    e[i] = 1;
                    for (const FpVec& prod : {A.mul(x, e), A.mul(e, x)})
                        if (!fp_in_span(nxt, prod, p)) {
                            nxt.push_back(prod);
                            nxt = fp_rref(std::move(nxt), p);
                            grew = true;
                        }
                }
            cur = std::move(nxt);
            if (!grew) break;
        }
        ideals.insert(cur);
    }
    // close under sums
    for (;;) {
        bool grew = false;
        std::vector<FpBasis> cur(ideals.begin(), ideals.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                FpBasis sum = cur[i];
                sum.insert(sum.end(), cur[j].begin(), cur[j].end());
                sum = fp_rref(std::move(sum), p);
                if (ideals.insert(sum).second) grew = true;
            }
        if (!grew) break;
    }
    return {ideals.begin(), ideals.end()};
}

FpVec FpModule::act(std::size_t a, const FpVec& v) const {
    FpVec z(q.dim, 0);
    const BigInt& p = q.p;
    for (int i = 0; i < q.dim; ++i)
        if (v[i] != 0) z = fp_add(z, fp_scale(v[i], action[a][i], p), p);
    return z;
}

FpBasis FpModule::submodule_closure(const FpBasis& seed) const {
    FpBasis cur = fp_rref(seed, q.p);
    for (;;) {
        bool grew = false;
        FpBasis nxt = cur;
        for (const FpVec& v : cur)
            for (std::size_t a = 0; a < actors.size(); ++a) {
                FpVec img = act(a, v);
                if (!fp_in_span(nxt, img, q.p)) {
                    nxt.push_back(img);
                    nxt = fp_rref(std::move(nxt), q.p);
                    grew = true;
                }
            }
        cur = std::move(nxt);
        if (!grew) break;
    }
    return cur;
}

FpModule fp_module(const FullLattice& order, const FullLattice& amb, const FullLattice& sub,
                   const BigInt& p) {
    FpModule M;
    M.q = fp_quotient(amb, sub, p);
    M.actors = lattice_zelements(order);
    M.action.resize(M.actors.size());
    for (std::size_t a = 0; a < M.actors.size(); ++a) {
        M.action[a].resize(M.q.dim);
        for (int i = 0; i < M.q.dim; ++i)
            M.action[a][i] = M.q.project(elem_mul(M.actors[a], M.q.lift_basis(i)));
    }
    return M;
}

std::vector<FpBasis> fp_all_submodules(const FpModule& M, unsigned long budget) {
    const BigInt& p = M.q.p;
    const int m = M.q.dim;
    BigInt total = pow_int(p, (unsigned)m);
    if (total > budget) throw BudgetExceededError("fp_all_submodules: p^dim exceeds the budget");
    unsigned long count = total.convert_to<unsigned long>();
    unsigned long pl = p.convert_to<unsigned long>();
    std::set<FpBasis> subs;
    subs.insert(FpBasis{});
    for (unsigned long code = 1; code < count; ++code) {
        FpVec v(m, 0);
        unsigned long c = code;
        for (int i = 0; i < m; ++i) {
            v[i] = c % pl;
            c /= pl;
        }
        subs.insert(M.submodule_closure({v}));
    }
    for (;;) {
        bool grew = false;
        std::vector<FpBasis> cur(subs.begin(), subs.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                FpBasis sum = cur[i];
                sum.insert(sum.end(), cur[j].begin(), cur[j].end());
                sum = fp_rref(std::move(sum), p);
                if (subs.insert(sum).second) grew = true;
            }
        if (!grew) break;
    }
    return {subs.begin(), subs.end()};
}

FpBasis fp_maximal_submodule(const FpModule& M, unsigned long budget) {
    if (M.q.dim == 0) throw std::logic_error("fp_maximal_submodule: zero module");
    std::vector<FpBasis> subs = fp_all_submodules(M, budget);
    std::vector<FpBasis> proper;
    for (const auto& s : subs)
        if ((int)s.size() < M.q.dim) proper.push_back(s);
    std::size_t best_dim = 0;
    for (const auto& s : proper) best_dim = std::max(best_dim, s.size());
    for (const auto& s : proper)
        if (s.size() == best_dim) return s;  // list is sorted, first is canonical
    throw std::logic_error("fp_maximal_submodule: unreachable");
}

}  // namespace crystalline
