#include "crystalline/oracle.hpp"

#include <algorithm>
#include <set>

#include "crystalline/fpalgebra.hpp"

namespace crystalline {
namespace oracle {

namespace {

const RingSpec kZ = RingSpec::integers();

struct RawLattice {
    RMat basis;  // square flat HNF
    BigInt den;
};

RawLattice raw_of(const FullLattice& M) { return {M.zbasis, M.den}; }

RawLattice raw_dual(const RawLattice& L) {
    const std::size_t d = L.basis.size();
    KMat W(d, KRow(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) W[i][j] = knormalize({L.basis[i][j], L.den});
    auto inv = kmat_inverse(kZ, W);
    if (!inv) throw std::logic_error("raw_dual: singular basis");
    // rows of (W^{-1})^T generate the dual
    BigInt den = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) den = lcm_int(den, (*inv)[i][j].den);
    RMat rows(d, RRow(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rows[i][j] = RElem((*inv)[j][i].num.a * (den / (*inv)[j][i].den));
    return {rmat_hnf(kZ, std::move(rows)), den};
}

// all upper-triangular integer HNF matrices of determinant idx and size d
void hnf_shapes(int d, const BigInt& idx, RMat cur, std::vector<RMat>& out,
                unsigned long max_candidates) {
    if ((int)cur.size() == d) {
        if (idx == 1) out.push_back(cur);
        return;
    }
    if (out.size() > max_candidates) throw BudgetExceededError();
    const int row = (int)cur.size();
    for (BigInt dk = 1; dk <= idx; ++dk) {
        if (idx % dk != 0) continue;
        // rows fill top-down; the off-diagonal entries of *earlier* rows at
        // this column range over residues mod dk
        std::vector<RMat> partials{cur};
        for (int i = 0; i < row; ++i) {
            std::vector<RMat> next;
            for (const RMat& m : partials)
                for (BigInt r = 0; r < dk; ++r) {
                    RMat m2 = m;
                    m2[i][row] = RElem(r);
                    next.push_back(std::move(m2));
                }
            partials = std::move(next);
            if (partials.size() > max_candidates) throw BudgetExceededError();
        }
        for (RMat& m : partials) {
            m.push_back(RRow(d, RElem(0)));
            m.back()[row] = RElem(dk);
            hnf_shapes(d, idx / dk, std::move(m), out, max_candidates);
        }
    }
}

std::vector<RawLattice> raw_sublattices(const RawLattice& L, const BigInt& idx,
                                        unsigned long max_candidates) {
    const int d = (int)L.basis.size();
    std::vector<RMat> shapes;
    hnf_shapes(d, idx, RMat{}, shapes, max_candidates);
    std::vector<RawLattice> out;
    for (RMat& H : shapes)
        out.push_back({rmat_hnf(kZ, rmat_mul(kZ, H, L.basis)), L.den});
    return out;
}

bool raw_contains(const RawLattice& M, const RawLattice& N) {
    for (const auto& row : N.basis) {
        KRow v(row.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            v[j] = knormalize({RElem(row[j].a * M.den), N.den});
        auto c = solve_in_echelon(kZ, M.basis, v);
        if (!c) return false;
        for (const KElem& x : *c)
            if (!kis_integral(x)) return false;
    }
    return true;
}

// closed under both R-actions (left and right multiplication by theta)
bool raw_is_bimodule(const RingPtr& A, const RawLattice& L) {
    if (A->ring.kind == RingKind::Integers) return true;
    AElement th = elem_zero(A);
    th.coeffs[0] = kfrom(RElem(0, 1));
    for (const FlatMap& map : {flat_left_mul(th), flat_right_mul(th)}) {
        for (const auto& row : L.basis) {
            RRow img = rrow_mul_mat(kZ, row, map.mat);
            // img/(den*map.den) must lie in L = basis/den
            KRow v(img.size());
            for (std::size_t j = 0; j < img.size(); ++j)
                v[j] = knormalize({RElem(img[j].a * L.den), L.den * map.den});
            auto c = solve_in_echelon(kZ, L.basis, v);
            if (!c) return false;
            bool ok = true;
            for (const KElem& x : *c)
                if (!kis_integral(x)) ok = false;
            if (!ok) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<FullLattice> enumerate_superlattices(const FullLattice& M, const EnumBudget& budget) {
    RawLattice dual = raw_dual(raw_of(M));
    std::vector<FullLattice> out;
    unsigned long seen = 0;
    for (BigInt j = 2; j <= budget.max_index; ++j) {
        for (const RawLattice& sub : raw_sublattices(dual, j, budget.max_candidates)) {
            if (++seen > budget.max_candidates) throw BudgetExceededError();
            RawLattice cand = raw_dual(sub);
            if (!raw_is_bimodule(M.ring, cand)) continue;
            FullLattice N = lattice_from_flat_rows(M.ring, cand.basis, cand.den);
            if (lat_equal(N, M)) continue;
            out.push_back(std::move(N));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FullLattice& a, const FullLattice& b) { return lat_cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const FullLattice& a, const FullLattice& b) {
                              return lat_equal(a, b);
                          }),
              out.end());
    return out;
}

std::vector<FullLattice> enumerate_sublattices(const FullLattice& M, const EnumBudget& budget) {
    std::vector<FullLattice> out;
    unsigned long seen = 0;
    for (BigInt j = 2; j <= budget.max_index; ++j) {
        for (const RawLattice& sub : raw_sublattices(raw_of(M), j, budget.max_candidates)) {
            if (++seen > budget.max_candidates) throw BudgetExceededError();
            if (!raw_is_bimodule(M.ring, sub)) continue;
            out.push_back(lattice_from_flat_rows(M.ring, sub.basis, sub.den));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FullLattice& a, const FullLattice& b) { return lat_cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const FullLattice& a, const FullLattice& b) {
                              return lat_equal(a, b);
                          }),
              out.end());
    return out;
}

std::vector<FullLattice> enumerate_two_sided_ideals_mod_p(const FullLattice& order, const BigInt& p,
                                                          const EnumBudget& budget) {
    FpAlgebra alg = fp_algebra(order, RElem(p));
    std::vector<FullLattice> out;
    for (const FpBasis& ideal : fp_all_two_sided(alg, budget.max_candidates)) {
        std::vector<AElement> gens = lattice_zelements(alg.q.sub);
        for (const FpVec& v : ideal) gens.push_back(alg.q.lift(v));
        out.push_back(lattice_from_generators(order.ring, gens));
    }
    std::sort(out.begin(), out.end(),
              [](const FullLattice& a, const FullLattice& b) { return lat_cmp(a, b) < 0; });
    return out;
}

bool certify_maximal(const FullLattice& order, const EnumBudget& budget) {
    if (!is_order(order)) throw NotOrderError();
    for (const FullLattice& N : enumerate_superlattices(order, budget))
        if (is_order(N)) return false;
    return true;
}

std::vector<FullLattice> enumerate_left_ideals(const OrderHandle& order, const BigInt& max_index,
                                               const EnumBudget& budget) {
    const FullLattice& lam = order.lattice;
    std::vector<BigInt> primes;
    for (BigInt p = 2; p <= max_index; ++p)
        if (is_prime(p)) primes.push_back(p);

    auto cmp = [](const FullLattice& a, const FullLattice& b) { return lat_cmp(a, b) < 0; };
    std::set<FullLattice, decltype(cmp)> seen(cmp);
    std::vector<FullLattice> frontier{lam};
    seen.insert(lam);
    while (!frontier.empty()) {
        std::vector<FullLattice> next;
        for (const FullLattice& N : frontier) {
            BigInt base = lat_index(lam, N);
            for (const BigInt& p : primes) {
                if (base * p > max_index) continue;
                FullLattice W = lat_scale(N, kfrom_int(p));
                FpModule V = fp_module(lam, N, W, p);
                for (const FpBasis& sub : fp_all_submodules(V, budget.max_candidates)) {
                    if ((int)sub.size() == V.q.dim) continue;  // the module itself
                    std::vector<AElement> gens = lattice_zelements(W);
                    for (const FpVec& v : sub) gens.push_back(V.q.lift(v));
                    FullLattice C = lattice_from_generators(lam.ring, gens);
                    if (lat_index(lam, C) > max_index) continue;
                    if (seen.insert(C).second) next.push_back(C);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<FullLattice> out;
    for (const FullLattice& N : seen)
        if (!lat_equal(N, lam)) out.push_back(N);
    std::sort(out.begin(), out.end(), [&](const FullLattice& a, const FullLattice& b) {
        BigInt ia = lat_index(lam, a), ib = lat_index(lam, b);
        if (ia != ib) return ia < ib;
        return lat_cmp(a, b) < 0;
    });
    return out;
}

unsigned module_length(const OrderHandle& order, const FullLattice& M, const EnumBudget& budget) {
    const FullLattice& lam = order.lattice;
    BigInt idx = lat_index(lam, M);
    auto fs = factor_integer(idx);
    if (fs.size() != 1)
        throw BudgetExceededError("module_length: only prime-power quotients are supported");
    const BigInt& p = fs.front().first;
    FpModule V = fp_module(lam, lam, M, p);  // throws unless the exponent is p
    std::vector<FpBasis> subs = fp_all_submodules(V, budget.max_candidates);
    std::sort(subs.begin(), subs.end(),
              [](const FpBasis& a, const FpBasis& b) { return a.size() < b.size(); });
    // longest chain in the containment order
    std::vector<unsigned> height(subs.size(), 1);
    unsigned best = 1;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (subs[j].size() >= subs[i].size()) continue;
            bool inside = true;
            for (const FpVec& v : subs[j])
                if (!fp_in_span(subs[i], v, p)) inside = false;
            if (inside) height[i] = std::max(height[i], height[j] + 1);
        }
        best = std::max(best, height[i]);
    }
    return best - 1;  // chain edges = composition length
}

}  // namespace oracle
}  // namespace crystalline
