#include "crystalline/graded.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace crystalline {

namespace {

const RingSpec kZ = RingSpec::integers();

void check_same_ring(const GradedLattice& X, const GradedLattice& Y) {
    if (X.ring.get() != Y.ring.get()) throw RingMismatchError();
}

KElem ideal_gen_from_valuations(const RingPtr& A, const std::vector<RElem>& primes,
                                const std::vector<long>& vals) {
    const RingSpec& R = A->ring;
    KElem gen = kfrom_int(1);
    for (std::size_t q = 0; q < primes.size(); ++q) {
        KElem pq = kfrom(primes[q]);
        for (long i = 0; i < vals[q]; ++i) gen = kmul(R, gen, pq);
        for (long i = 0; i > vals[q]; --i) gen = kmul(R, gen, kinv(R, pq));
    }
    return gen;
}

// canonical primes of R above the rational prime p
std::vector<RElem> primes_over(const RingSpec& R, const BigInt& p) {
    std::vector<RElem> out;
    for (const auto& f : factor_rational_prime(R, p)) out.push_back(f.prime);
    return out;
}

struct PrimeSupport {
    std::vector<RElem> primes;      // canonical, sorted by rational prime then cmp
    std::vector<int> conj_index;    // index of the conjugate prime

    int conj(int q) const { return conj_index[q]; }
};

PrimeSupport build_support(const RingPtr& A, const std::vector<BigInt>& rational_primes) {
    const RingSpec& R = A->ring;
    std::set<BigInt> ps(rational_primes.begin(), rational_primes.end());
    PrimeSupport S;
    for (const BigInt& p : ps)
        for (const RElem& pi : primes_over(R, p)) S.primes.push_back(pi);
    S.conj_index.resize(S.primes.size());
    for (std::size_t q = 0; q < S.primes.size(); ++q) {
        RElem c = canonical_associate(R, rconj(R, S.primes[q]));
        int found = -1;
        for (std::size_t r = 0; r < S.primes.size(); ++r)
            if (S.primes[r] == c) found = (int)r;
        if (found < 0) throw std::logic_error("prime support not conjugation-stable");
        S.conj_index[q] = found;
    }
    return S;
}

std::vector<BigInt> rational_primes_of(const RingSpec& R, const KElem& x) {
    std::vector<BigInt> out;
    if (x.is_zero()) return out;
    BigInt nn = rnorm_abs(R, x.num);
    for (const auto& [p, e] : factor_integer(nn * x.den)) out.push_back(p);
    return out;
}

using ValMat = std::vector<std::vector<long>>;  // [g][q]

ValMat valuations_of(const GradedLattice& X, const PrimeSupport& S) {
    const RingSpec& R = X.ring->ring;
    ValMat v(X.comps.size(), std::vector<long>(S.primes.size(), 0));
    for (std::size_t g = 0; g < X.comps.size(); ++g)
        for (std::size_t q = 0; q < S.primes.size(); ++q)
            v[g][q] = valuation_at(R, X.comps[g], S.primes[q]);
    return v;
}

GradedLattice from_valuations(const RingPtr& A, const PrimeSupport& S, const ValMat& v) {
    std::vector<FracIdeal> comps;
    for (std::size_t g = 0; g < v.size(); ++g)
        comps.push_back(make_frac_ideal(A->ring, ideal_gen_from_valuations(A, S.primes, v[g])));
    return make_graded(A, std::move(comps));
}

// sigma_g as a permutation of the support primes (sigma_g(pi_q) ~ pi_{out})
int sigma_on_prime(const RingPtr& A, const PrimeSupport& S, int g, int q) {
    return A->sigma(g).conjugates ? S.conj(q) : q;
}

long alpha_val(const RingPtr& A, const PrimeSupport& S, int g, int h, int q) {
    return relem_valuation(A->ring, A->alpha_at(g, h), S.primes[q]);
}

// closure condition of a graded product X*Y inside Z at the valuation level:
// for all g,h,q: vX[g][q] + vY[h][sigma_g^{-1} q] + v_q(alpha(g,h)) >= vZ[gh][q]
bool closure_ok(const RingPtr& A, const PrimeSupport& S, const ValMat& vx, const ValMat& vy,
                const ValMat& vz) {
    const int n = A->n();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (std::size_t q = 0; q < S.primes.size(); ++q) {
                // sigma_g has order <= 2, so sigma_g^{-1} acts like sigma_g
                long lhs = vx[g][q] + vy[h][sigma_on_prime(A, S, g, (int)q)] +
                           alpha_val(A, S, g, h, (int)q);
                if (lhs < vz[A->group.op(g, h)][q]) return false;
            }
    return true;
}

}  // namespace

GradedLattice make_graded(const RingPtr& A, std::vector<FracIdeal> comps) {
    if ((int)comps.size() != A->n()) throw std::logic_error("make_graded: wrong arity");
    for (const FracIdeal& I : comps)
        if (I.is_zero()) throw ZeroIdealError("graded lattice with a zero component");
    return {A, std::move(comps)};
}

bool gr_equal(const GradedLattice& X, const GradedLattice& Y) {
    check_same_ring(X, Y);
    return X.comps == Y.comps;
}

int gr_cmp(const GradedLattice& X, const GradedLattice& Y) {
    check_same_ring(X, Y);
    for (std::size_t g = 0; g < X.comps.size(); ++g) {
        int c = kelem_cmp(X.comps[g].gen, Y.comps[g].gen);
        if (c != 0) return c;
    }
    return 0;
}

bool gr_contains(const GradedLattice& X, const GradedLattice& Y) {
    check_same_ring(X, Y);
    for (std::size_t g = 0; g < X.comps.size(); ++g)
        if (!fi_contains(X.ring->ring, X.comps[g], Y.comps[g])) return false;
    return true;
}

FracIdeal component_ideal(const FullLattice& M, int g) {
    const RingPtr& A = M.ring;
    const RingSpec& R = A->ring;
    const int deg = R.degree();
    const int d = M.dim();
    // kill all flat coordinates outside the u_g block
    RMat outside;
    for (const auto& row : M.zbasis) {
        RRow r;
        for (int j = 0; j < d; ++j)
            if (j / deg != g) r.push_back(row[j]);
        outside.push_back(std::move(r));
    }
    RMat ker = rmat_left_kernel(kZ, outside);
    RElem acc(0);
    for (const auto& kv : ker) {
        RElem a(0), b(0);
        for (int i = 0; i < d; ++i) {
            if (kv[i].is_zero()) continue;
            a.a += kv[i].a * M.zbasis[i][g * deg].a;
            if (deg == 2) b.a += kv[i].a * M.zbasis[i][g * deg + 1].a;
        }
        acc = rgcd(R, acc, RElem(a.a, deg == 2 ? b.a : BigInt(0)));
    }
    return make_frac_ideal(R, KElem(acc, M.den));
}

bool is_graded(const FullLattice& M) {
    std::vector<FracIdeal> comps;
    for (int g = 0; g < M.n(); ++g) {
        FracIdeal I = component_ideal(M, g);
        if (I.is_zero()) return false;
        comps.push_back(std::move(I));
    }
    return lat_equal(from_graded(make_graded(M.ring, std::move(comps))), M);
}

GradedLattice to_graded(const FullLattice& M) {
    if (!is_graded(M)) throw NotGradedError();
    std::vector<FracIdeal> comps;
    for (int g = 0; g < M.n(); ++g) comps.push_back(component_ideal(M, g));
    return make_graded(M.ring, std::move(comps));
}

FullLattice from_graded(const GradedLattice& G) {
    std::vector<AElement> gens;
    for (int g = 0; g < G.ring->n(); ++g)
        gens.push_back(elem_scale(G.comps[g].gen, elem_u(G.ring, g)));
    return lattice_from_generators(G.ring, gens);
}

GradedLattice gr_mul(const GradedLattice& X, const GradedLattice& Y) {
    check_same_ring(X, Y);
    const RingPtr& A = X.ring;
    const RingSpec& R = A->ring;
    std::vector<FracIdeal> comps(A->n(), FracIdeal{KElem(RElem(0), 1)});
    for (int g = 0; g < A->n(); ++g)
        for (int h = 0; h < A->n(); ++h) {
            int k = A->group.op(g, h);
            FracIdeal term = fi_mul(R, X.comps[g], fi_sigma(R, A->sigma(g), Y.comps[h]));
            term = fi_mul(R, term, make_frac_ideal(R, kfrom(A->alpha_at(g, h))));
            comps[k] = fi_add(R, comps[k], term);
        }
    return make_graded(A, std::move(comps));
}

GradedLattice gr_scale(const GradedLattice& X, const KElem& k) {
    const RingSpec& R = X.ring->ring;
    std::vector<FracIdeal> comps;
    for (const FracIdeal& I : X.comps)
        comps.push_back(fi_mul(R, I, make_frac_ideal(R, k)));
    return make_graded(X.ring, std::move(comps));
}

GradedLattice gr_inverse(const GradedLattice& X) {
    const RingPtr& A = X.ring;
    const RingSpec& R = A->ring;
    const int n = A->n();
    std::vector<FracIdeal> comps;
    for (int k = 0; k < n; ++k) {
        // c u_k with (J_g u_g)(c u_k)(J_h u_h) in J_{gkh} u_{gkh} for all g,h
        FracIdeal acc;
        bool first = true;
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) {
                int gk = A->group.op(g, k);
                int gkh = A->group.op(gk, h);
                FracIdeal bound = X.comps[gkh];
                bound = fi_mul(R, bound, fi_inv(R, X.comps[g]));
                bound = fi_mul(R, bound,
                               fi_inv(R, fi_sigma(R, A->sigma(gk), X.comps[h])));
                KElem al = kmul(R, kfrom(A->alpha_at(g, k)), kfrom(A->alpha_at(gk, h)));
                bound = fi_mul(R, bound, fi_inv(R, make_frac_ideal(R, al)));
                bound = fi_sigma(R, A->sigma(g), bound);  // sigma_g^{-1} = sigma_g
                acc = first ? bound : fi_intersect(R, acc, bound);
                first = false;
            }
        comps.push_back(acc);
    }
    return make_graded(A, std::move(comps));
}

bool gr_validate_order(const GradedLattice& X) {
    const RingPtr& A = X.ring;
    const RingSpec& R = A->ring;
    if (!(X.comps[0] == fi_one(R))) return false;
    for (int g = 0; g < A->n(); ++g)
        for (int h = 0; h < A->n(); ++h) {
            FracIdeal prod = fi_mul(R, X.comps[g], fi_sigma(R, A->sigma(g), X.comps[h]));
            prod = fi_mul(R, prod, make_frac_ideal(R, kfrom(A->alpha_at(g, h))));
            if (!fi_contains(R, X.comps[A->group.op(g, h)], prod)) return false;
        }
    return true;
}

GradedLattice gr_maximize(const GradedLattice& X) {
    if (!gr_validate_order(X)) throw NotGrOrderError();
    const RingPtr& A = X.ring;
    const RingSpec& R = A->ring;
    const int n = A->n();

    std::vector<BigInt> rp;
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (const BigInt& p : rational_primes_of(R, kfrom(A->alpha_at(g, h))))
                rp.push_back(p);
    for (const FracIdeal& I : X.comps)
        for (const BigInt& p : rational_primes_of(R, I.gen)) rp.push_back(p);
    PrimeSupport S = build_support(A, rp);
    const std::size_t s = S.primes.size();

    ValMat v0 = valuations_of(X, S);
    // box: identity component pinned at 0; others bounded above by v0 and
    // below by the pairing with the inverse component
    ValMat lo(n, std::vector<long>(s, 0)), hi(n, std::vector<long>(s, 0));
    for (int g = 1; g < n; ++g)
        for (std::size_t q = 0; q < s; ++q) {
            hi[g][q] = v0[g][q];
            int gi = A->group.inverse(g);
            int qg = sigma_on_prime(A, S, g, (int)q);
            lo[g][q] = -v0[gi][qg] - alpha_val(A, S, g, gi, (int)q);
            if (lo[g][q] > hi[g][q])
                throw std::logic_error("gr_maximize: empty valuation box");
        }

    // enumerate the box
    std::vector<std::pair<int, std::size_t>> slots;
    for (int g = 1; g < n; ++g)
        for (std::size_t q = 0; q < s; ++q) slots.emplace_back(g, q);
    BigInt total = 1;
    for (const auto& [g, q] : slots) total *= BigInt(hi[g][q] - lo[g][q] + 1);
    if (total > 2000000) throw BudgetExceededError("gr_maximize: valuation box too large");

    std::vector<ValMat> valid;
    ValMat cur(n, std::vector<long>(s, 0));
    std::vector<long> digits(slots.size());
    unsigned long count = total.convert_to<unsigned long>();
    for (unsigned long code = 0; code < count; ++code) {
        unsigned long c = code;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            long w = hi[slots[i].first][slots[i].second] - lo[slots[i].first][slots[i].second] + 1;
            digits[i] = lo[slots[i].first][slots[i].second] + (long)(c % (unsigned long)w);
            c /= (unsigned long)w;
        }
        for (std::size_t i = 0; i < slots.size(); ++i)
            cur[slots[i].first][slots[i].second] = digits[i];
        if (closure_ok(A, S, cur, cur, cur)) valid.push_back(cur);
    }

    // keep the maximal elements (componentwise-minimal valuations)
    auto leq = [](const ValMat& a, const ValMat& b) {  // a >= b as lattices
        for (std::size_t g = 0; g < a.size(); ++g)
            for (std::size_t q = 0; q < a[g].size(); ++q)
                if (a[g][q] > b[g][q]) return false;
        return true;
    };
    std::vector<ValMat> maximal;
    for (const ValMat& a : valid) {
        bool dominated = false;
        for (const ValMat& b : valid)
            if (&a != &b && leq(b, a) && !(b == a)) dominated = true;
        if (!dominated) maximal.push_back(a);
    }
    std::vector<GradedLattice> lats;
    for (const ValMat& m : maximal) lats.push_back(from_valuations(A, S, m));
    std::sort(lats.begin(), lats.end(),
              [](const GradedLattice& a, const GradedLattice& b) { return gr_cmp(a, b) < 0; });
    lats.erase(std::unique(lats.begin(), lats.end(),
                           [](const GradedLattice& a, const GradedLattice& b) {
                               return gr_equal(a, b);
                           }),
               lats.end());
    if (lats.empty()) throw std::logic_error("gr_maximize: no maximal order found");
    if (lats.size() > 1) throw GrAmbiguousError(std::move(lats));
    return lats.front();
}

bool gr_is_maximal(const GradedLattice& X) {
    if (!gr_validate_order(X)) return false;
    try {
        return gr_equal(gr_maximize(X), X);
    } catch (const GrAmbiguousError&) {
        return false;
    }
}

std::vector<GradedLattice> gr_primes_above(const GradedLattice& order, const BigInt& p) {
    if (!gr_is_maximal(order)) throw NotGrMaximalError();
    const RingPtr& A = order.ring;
    const RingSpec& R = A->ring;
    const int n = A->n();

    std::vector<BigInt> rp{p};
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (const BigInt& q : rational_primes_of(R, kfrom(A->alpha_at(g, h))))
                rp.push_back(q);
    for (const FracIdeal& I : order.comps)
        for (const BigInt& q : rational_primes_of(R, I.gen)) rp.push_back(q);
    PrimeSupport S = build_support(A, rp);
    const std::size_t s = S.primes.size();

    ValMat vI = valuations_of(order, S);
    std::vector<long> pval(s);
    for (std::size_t q = 0; q < s; ++q) pval[q] = relem_valuation(R, RElem(p), S.primes[q]);

    std::vector<std::pair<int, std::size_t>> slots;
    for (int g = 0; g < n; ++g)
        for (std::size_t q = 0; q < s; ++q)
            if (pval[q] > 0) slots.emplace_back(g, q);
    BigInt total = 1;
    for (const auto& [g, q] : slots) total *= BigInt(pval[q] + 1);
    if (total > 2000000) throw BudgetExceededError("gr_primes_above: valuation box too large");

    std::vector<ValMat> valid;
    unsigned long count = total.convert_to<unsigned long>();
    for (unsigned long code = 0; code < count; ++code) {
        ValMat vJ = vI;
        unsigned long c = code;
        for (const auto& [g, q] : slots) {
            unsigned long w = (unsigned long)pval[q] + 1;
            vJ[g][q] += (long)(c % w);
            c /= w;
        }
        bool proper = false;
        for (const auto& [g, q] : slots)
            if (vJ[g][q] != vI[g][q]) proper = true;
        if (!proper) continue;
        if (closure_ok(A, S, vI, vJ, vJ) && closure_ok(A, S, vJ, vI, vJ))
            valid.push_back(std::move(vJ));
    }
    // maximal ideals = containment-maximal among the proper graded two-sided
    auto leq = [](const ValMat& a, const ValMat& b) {  // a >= b as lattices
        for (std::size_t g = 0; g < a.size(); ++g)
            for (std::size_t q = 0; q < a[g].size(); ++q)
                if (a[g][q] > b[g][q]) return false;
        return true;
    };
    std::vector<GradedLattice> out;
    for (const ValMat& a : valid) {
        bool dominated = false;
        for (const ValMat& b : valid)
            if (&a != &b && leq(b, a) && !(b == a)) dominated = true;
        if (!dominated) out.push_back(from_valuations(A, S, a));
    }
    std::sort(out.begin(), out.end(),
              [](const GradedLattice& a, const GradedLattice& b) { return gr_cmp(a, b) < 0; });
    return out;
}

GradedFactorization gr_factor(const GradedLattice& order, const GradedLattice& M,
                              std::optional<std::uint64_t> shuffle_seed) {
    check_same_ring(order, M);
    const RingPtr& A = order.ring;
    const RingSpec& R = A->ring;
    if (!gr_is_maximal(order)) throw NotGrMaximalError();
    if (!gr_contains(order, M) ||
        !gr_contains(M, gr_mul(order, M)) || !gr_contains(M, gr_mul(M, order)))
        throw NotTwoSidedError("gr_factor: not an integral graded two-sided ideal");

    std::mt19937_64 rng(shuffle_seed.value_or(0));
    std::map<BigInt, std::vector<GradedLattice>> cache;
    std::vector<GradedLattice> applied;
    GradedLattice cur = M;
    while (!gr_equal(cur, order)) {
        std::set<BigInt> ps;
        for (int g = 0; g < A->n(); ++g) {
            KElem ratio = kdiv(R, cur.comps[g].gen, order.comps[g].gen);
            for (const BigInt& p : rational_primes_of(R, kfrom(ratio.num))) ps.insert(p);
        }
        std::vector<const GradedLattice*> candidates;
        for (const BigInt& p : ps) {
            auto it = cache.find(p);
            if (it == cache.end()) it = cache.emplace(p, gr_primes_above(order, p)).first;
            for (const GradedLattice& P : it->second)
                if (gr_contains(P, cur)) candidates.push_back(&P);
        }
        if (candidates.empty())
            throw std::logic_error("gr_factor: no gr-prime contains the ideal");
        std::size_t pick = shuffle_seed ? (std::size_t)(rng() % candidates.size()) : 0;
        const GradedLattice& P = *candidates[pick];
        applied.push_back(P);
        cur = gr_mul(cur, gr_inverse(P));
    }

    GradedFactorization out;
    std::vector<GradedLattice> uniq;
    std::vector<unsigned> mult;
    for (const GradedLattice& P : applied) {
        bool found = false;
        for (std::size_t i = 0; i < uniq.size(); ++i)
            if (gr_equal(uniq[i], P)) {
                ++mult[i];
                found = true;
                break;
            }
        if (!found) {
            uniq.push_back(P);
            mult.push_back(1);
        }
    }
    std::vector<std::size_t> idxs(uniq.size());
    for (std::size_t i = 0; i < idxs.size(); ++i) idxs[i] = i;
    std::sort(idxs.begin(), idxs.end(),
              [&](std::size_t a, std::size_t b) { return gr_cmp(uniq[a], uniq[b]) < 0; });
    GradedLattice witness = order;
    for (std::size_t i : idxs) {
        out.factors.emplace_back(uniq[i], mult[i]);
        for (unsigned k = 0; k < mult[i]; ++k) witness = gr_mul(witness, uniq[i]);
    }
    out.witness = witness;
    if (!gr_equal(out.witness, M))
        throw std::logic_error("gr_factor: reassembled product differs from the input");
    return out;
}

std::vector<AElement> graded_ideal_is_full(const RingPtr& A, const std::vector<KElem>& comps) {
    if ((int)comps.size() != A->n()) throw std::logic_error("graded_ideal_is_full: wrong arity");
    int g0 = -1;
    for (int g = 0; g < A->n(); ++g)
        if (!comps[g].is_zero()) {
            g0 = g;
            break;
        }
    if (g0 < 0) throw ZeroIdealError("graded_ideal_is_full: all components vanish");
    // u_{g0^{-1}} * (c u_{g0}) is a nonzero multiple of u_e
    AElement seed = elem_scale(comps[g0], elem_u(A, g0));
    AElement we = elem_mul(elem_u(A, A->group.inverse(g0)), seed);
    if (we.is_zero() || we.coeffs[0].is_zero())
        throw std::logic_error("graded_ideal_is_full: identity component did not appear");
    std::vector<AElement> cert;
    for (int h = 0; h < A->n(); ++h) {
        AElement wh = elem_mul(elem_u(A, h), we);
        if (wh.coeffs[h].is_zero())
            throw std::logic_error("graded_ideal_is_full: component vanished");
        cert.push_back(std::move(wh));
    }
    return cert;
}

}  // namespace crystalline
