#include "crystalline/orders.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "crystalline/fpalgebra.hpp"

namespace crystalline {

namespace {

const RingSpec kZ = RingSpec::integers();

KElem kmat_det(const RingSpec& R, KMat A) {
    const std::size_t n = A.size();
    KElem det = kfrom_int(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) return kfrom_int(0);
        if (piv != col) {
            std::swap(A[piv], A[col]);
            det = kneg(det);
        }
        det = kmul(R, det, A[col][col]);
        KElem inv = kinv(R, A[col][col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (A[i][col].is_zero()) continue;
            KElem f = kmul(R, A[i][col], inv);
            for (std::size_t j = col; j < n; ++j)
                A[i][j] = ksub(A[i][j], kmul(R, f, A[col][j]));
        }
    }
    return det;
}

// regular trace over K^G of the element w (trace of left multiplication on
// the flat Q-structure, or on the K-structure when K is central)
KElem regular_trace_q(const AElement& w) {
    FlatMap L = flat_left_mul(w);
    BigInt tr = 0;
    for (std::size_t i = 0; i < L.mat.size(); ++i) tr += L.mat[i][i].a;
    return knormalize({RElem(tr), L.den});
}

KElem regular_trace_k(const AElement& w) {
    const RingPtr& A = w.ring;
    KMat L = left_mul_matrix(w);
    KElem tr = kfrom_int(0);
    for (int g = 0; g < A->n(); ++g) tr = kadd(tr, L[g][g]);
    return tr;
}

std::vector<RElem> primes_of_invariants_dividing(const RingPtr& A, const RElem& disc) {
    std::vector<RElem> out;
    if (A->invariants_are_integers()) {
        for (const auto& [p, e] : factor_integer(disc.a)) out.push_back(RElem(p));
        return out;
    }
    const RingSpec& R = A->ring;
    for (const auto& [p, e] : factor_integer(rnorm_abs(R, disc)))
        for (const auto& f : factor_rational_prime(R, p))
            if (divides(R, f.prime, disc)) out.push_back(f.prime);
    return out;
}

// maximal two-sided ideals of `order` above the central prime pi
std::vector<FullLattice> maximal_two_sided_above(const FullLattice& order, const RElem& pi) {
    FpAlgebra alg = fp_algebra(order, pi);
    std::vector<FullLattice> out;
    for (const FpBasis& sub : fp_maximal_two_sided(alg)) {
        std::vector<AElement> gens = lattice_zelements(alg.q.sub);
        for (const FpVec& v : sub) gens.push_back(alg.q.lift(v));
        out.push_back(lattice_from_generators(order.ring, gens));
    }
    std::sort(out.begin(), out.end(),
              [](const FullLattice& a, const FullLattice& b) { return lat_cmp(a, b) < 0; });
    return out;
}

}  // namespace

RElem discriminant(const FullLattice& order) {
    const RingPtr& A = order.ring;
    const RingSpec& R = A->ring;
    if (A->invariants_are_integers()) {
        std::vector<AElement> basis = lattice_zelements(order);
        const std::size_t m = basis.size();
        KMat gram(m, KRow(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                gram[i][j] = regular_trace_q(elem_mul(basis[i], basis[j]));
                gram[j][i] = gram[i][j];
            }
        KElem det = kmat_det(kZ, gram);
        if (!kis_integral(det)) throw std::logic_error("discriminant: non-integral determinant");
        return canonical_associate(kZ, det.num);
    }
    std::vector<AElement> basis = lattice_relements(order);
    const std::size_t m = basis.size();
    KMat gram(m, KRow(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            gram[i][j] = regular_trace_k(elem_mul(basis[i], basis[j]));
            gram[j][i] = gram[i][j];
        }
    KElem det = kmat_det(R, gram);
    if (!kis_integral(det)) throw std::logic_error("discriminant: non-integral determinant");
    return canonical_associate(R, det.num);
}

FullLattice radical_mod_prime(const FullLattice& order, const RElem& pi) {
    FpAlgebra alg = fp_algebra(order, pi);
    FpBasis rad = fp_radical(alg);
    std::vector<AElement> gens = lattice_zelements(alg.q.sub);
    for (const FpVec& v : rad) gens.push_back(alg.q.lift(v));
    FullLattice J = lattice_from_generators(order.ring, gens);
    if (!is_two_sided_ideal(order, J))
        throw std::logic_error("radical_mod_prime: lift is not a two-sided ideal");
    return J;
}

FullLattice radical_mod_p(const FullLattice& order, const BigInt& p) {
    return radical_mod_prime(order, RElem(p));
}

OrderHandle maximize(const FullLattice& order) {
    if (!is_order(order)) throw NotOrderError();
    FullLattice cur = order;
    for (;;) {
        bool changed = false;
        RElem disc = discriminant(cur);
        std::vector<RElem> primes = primes_of_invariants_dividing(cur.ring, disc);
        auto try_enlarge = [&](const FullLattice& ideal) {
            FullLattice ol = left_order(ideal);
            if (!lat_equal(ol, cur)) {
                cur = std::move(ol);
                return true;
            }
            FullLattice orr = right_order(ideal);
            if (!lat_equal(orr, cur)) {
                cur = std::move(orr);
                return true;
            }
            return false;
        };
        for (const RElem& pi : primes) {
            if (try_enlarge(radical_mod_prime(cur, pi))) {
                changed = true;
                break;
            }
            // radical step stalled at pi: try the maximal two-sided ideals
            for (const FullLattice& P : maximal_two_sided_above(cur, pi))
                if (try_enlarge(P)) {
                    changed = true;
                    break;
                }
            if (changed) break;
        }
        if (!changed) {
            OrderHandle h;
            h.lattice = cur;
            MaxCertificate cert;
            cert.disc = disc;
            cert.primes_checked = primes;
            h.certificate = std::move(cert);
            return h;
        }
    }
}

bool is_maximal(const FullLattice& order) {
    return lat_equal(maximize(order).lattice, order);
}

OrderHandle as_maximal_order(const FullLattice& order) {
    OrderHandle h = maximize(order);
    if (!lat_equal(h.lattice, order)) throw NotMaximalError();
    return h;
}

std::vector<PrimeIdeal> primes_above(const OrderHandle& order, const BigInt& p) {
    if (!order.certificate) throw NotMaximalError("primes_above: missing maximality certificate");
    if (!is_prime(p)) throw NotPrimeError("primes_above: " + p.str() + " is not prime");
    const FullLattice& lam = order.lattice;
    const RingPtr& A = lam.ring;
    std::vector<FullLattice> ideals;
    if (A->invariants_are_integers()) {
        ideals = maximal_two_sided_above(lam, RElem(p));
    } else {
        for (const auto& f : factor_rational_prime(A->ring, p))
            for (auto& P : maximal_two_sided_above(lam, f.prime)) ideals.push_back(std::move(P));
        std::sort(ideals.begin(), ideals.end(),
                  [](const FullLattice& a, const FullLattice& b) { return lat_cmp(a, b) < 0; });
    }
    std::vector<PrimeIdeal> out;
    for (auto& P : ideals) out.push_back(PrimeIdeal{std::move(P), p});
    // desk-scale simplicity check on each quotient
    for (const PrimeIdeal& P : out) {
        FpQuotient q = fp_quotient(lam, P.ideal, p);
        if (q.dim == 0) throw std::logic_error("primes_above: improper prime");
        BigInt card = pow_int(p, (unsigned)q.dim);
        if (card <= 65536) {
            FpAlgebra quot;
            quot.q = q;
            quot.mult.assign(q.dim, std::vector<FpVec>(q.dim));
            for (int i = 0; i < q.dim; ++i)
                for (int j = 0; j < q.dim; ++j)
                    quot.mult[i][j] = q.project(elem_mul(q.lift_basis(i), q.lift_basis(j)));
            quot.one = q.project(elem_one(A));
            auto all = fp_all_two_sided(quot, 70000);
            if (all.size() != 2)
                throw std::logic_error("primes_above: quotient is not simple");
        }
    }
    return out;
}

TwoSidedFactorization factor_two_sided(const OrderHandle& order, const FullLattice& M,
                                       std::optional<std::uint64_t> shuffle_seed) {
    if (!order.certificate) throw NotMaximalError("factor_two_sided: missing certificate");
    const FullLattice& lam = order.lattice;
    if (!lat_contains(lam, M) || !is_two_sided_ideal(lam, M))
        throw NotTwoSidedError("factor_two_sided: not an integral two-sided ideal");

    std::mt19937_64 rng(shuffle_seed.value_or(0));
    std::map<BigInt, std::vector<PrimeIdeal>> prime_cache;
    std::vector<FullLattice> applied;
    FullLattice cur = M;
    while (!lat_equal(cur, lam)) {
        BigInt idx = lat_index(lam, cur);
        std::vector<std::pair<BigInt, const PrimeIdeal*>> candidates;
        for (const auto& [p, e] : factor_integer(idx)) {
            auto it = prime_cache.find(p);
            if (it == prime_cache.end())
                it = prime_cache.emplace(p, primes_above(order, p)).first;
            for (const PrimeIdeal& P : it->second)
                if (lat_contains(P.ideal, cur)) candidates.emplace_back(p, &P);
        }
        if (candidates.empty())
            throw std::logic_error("factor_two_sided: no prime contains the ideal");
        std::size_t pick = 0;
        if (shuffle_seed) pick = (std::size_t)(rng() % candidates.size());
        const PrimeIdeal& P = *candidates[pick].second;
        applied.push_back(P.ideal);
        cur = lat_mul(cur, inverse_lattice(P.ideal));
    }

    TwoSidedFactorization out;
    std::vector<FullLattice> uniq;
    std::vector<unsigned> mult;
    for (const FullLattice& P : applied) {
        bool found = false;
        for (std::size_t i = 0; i < uniq.size(); ++i)
            if (lat_equal(uniq[i], P)) {
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
              [&](std::size_t a, std::size_t b) { return lat_cmp(uniq[a], uniq[b]) < 0; });
    FullLattice witness = lam;
    for (std::size_t i : idxs) {
        BigInt below = lat_index(lam, uniq[i]);
        BigInt p = factor_integer(below).front().first;
        out.factors.emplace_back(PrimeIdeal{uniq[i], p}, mult[i]);
        for (unsigned k = 0; k < mult[i]; ++k) witness = lat_mul(witness, uniq[i]);
    }
    out.witness = witness;
    if (!lat_equal(out.witness, M))
        throw std::logic_error("factor_two_sided: reassembled product differs from the input");
    return out;
}

LeftFactorization factor_left_ideal(const OrderHandle& order, const FullLattice& M) {
    if (!order.certificate) throw NotMaximalError("factor_left_ideal: missing certificate");
    const FullLattice& lam = order.lattice;
    if (!lat_contains(lam, M) || !lat_contains(M, lat_mul(lam, M)))
        throw NotLeftIdealError();

    LeftFactorization out;
    FullLattice cur = M, cur_order = lam;
    for (int guard = 0; !lat_equal(cur, cur_order); ++guard) {
        if (guard > 256) throw std::logic_error("factor_left_ideal: no convergence");
        BigInt idx = lat_index(cur_order, cur);
        BigInt p = factor_integer(idx).front().first;
        FullLattice W = lat_sum(cur, lat_scale(cur_order, kfrom_int(p)));
        FpModule V = fp_module(cur_order, cur_order, W, p);
        if (V.q.dim == 0) throw std::logic_error("factor_left_ideal: degenerate quotient");
        FpBasis sub = fp_maximal_submodule(V, 1u << 20);
        std::vector<AElement> gens = lattice_zelements(W);
        for (const FpVec& v : sub) gens.push_back(V.q.lift(v));
        FullLattice N = lattice_from_generators(lam.ring, gens);
        out.factors.push_back(N);
        FullLattice Ninv = inverse_lattice(N);
        cur = lat_mul(Ninv, cur);
        cur_order = right_order(N);
    }
    if (out.factors.empty()) {
        out.witness = lam;
        return out;
    }
    FullLattice witness = out.factors.front();
    for (std::size_t i = 1; i < out.factors.size(); ++i)
        witness = lat_mul(witness, out.factors[i]);
    out.witness = witness;
    if (!lat_equal(out.witness, M))
        throw std::logic_error("factor_left_ideal: reassembled product differs from the input");
    if (!proper_product_check(out.factors))
        throw std::logic_error("factor_left_ideal: product is not proper");
    return out;
}

bool proper_product_check(const std::vector<FullLattice>& chain) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!lat_equal(right_order(chain[i]), left_order(chain[i + 1]))) return false;
    return true;
}

FullLattice connect_orders(const OrderHandle& o1, const OrderHandle& o2) {
    if (!o1.certificate || !o2.certificate)
        throw NotMaximalError("connect_orders: both orders must carry certificates");
    FullLattice M = lat_mul(o1.lattice, o2.lattice);
    if (!lat_equal(left_order(M), o1.lattice) || !lat_equal(right_order(M), o2.lattice))
        throw std::logic_error("connect_orders: product has unexpected orders");
    return M;
}

FullLattice phi_map(const OrderHandle& o1, const OrderHandle& o2, const FullLattice& X) {
    if (!is_two_sided_ideal(o1.lattice, X))
        throw NotTwoSidedError("phi_map: ideal is not two-sided over the source order");
    FullLattice M = connect_orders(o1, o2);
    FullLattice out = lat_mul(lat_mul(inverse_lattice(M), X), M);
    if (!is_two_sided_ideal(o2.lattice, out))
        throw std::logic_error("phi_map: image is not two-sided over the target order");
    return out;
}

}  // namespace crystalline
