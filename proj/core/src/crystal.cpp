#include "crystalline/crystal.hpp"

#include <algorithm>

namespace crystalline {

GroupTable GroupTable::trivial() { return cyclic(1); }

GroupTable GroupTable::cyclic(int n) {
    GroupTable G;
    G.n = n;
    G.mul.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G.mul[i][j] = (i + j) % n;
    G.inv.resize(n);
    for (int i = 0; i < n; ++i) G.inv[i] = (n - i) % n;
    return G;
}

bool CrystalRing::has_conjugation() const {
    return std::any_of(action.begin(), action.end(),
                       [](const SigmaAction& s) { return s.conjugates; });
}

namespace {

ValidityReport fail(std::string identity, int g, int h, int t, std::string msg) {
    ValidityReport r;
    r.ok = false;
    r.identity = std::move(identity);
    r.g = g;
    r.h = h;
    r.t = t;
    r.message = std::move(msg);
    return r;
}

}  // namespace

ValidityReport validate_ring(const RingSpec& R, const GroupTable& G,
                             const std::vector<SigmaAction>& action, const RMat& alpha) {
    const int n = G.n;
    if (n < 1 || (int)G.mul.size() != n)
        return fail("group-table-shape", -1, -1, -1, "multiplication table has wrong shape");
    for (int g = 0; g < n; ++g) {
        if ((int)G.mul[g].size() != n)
            return fail("group-table-shape", g, -1, -1, "multiplication table has wrong shape");
        for (int h = 0; h < n; ++h)
            if (G.mul[g][h] < 0 || G.mul[g][h] >= n)
                return fail("group-table-shape", g, h, -1, "table entry out of range");
    }
    for (int g = 0; g < n; ++g)
        if (G.mul[0][g] != g || G.mul[g][0] != g)
            return fail("group-identity", g, -1, -1, "element 0 is not a two-sided identity");
    for (int g = 0; g < n; ++g) {
        bool found = false;
        for (int h = 0; h < n; ++h)
            if (G.mul[g][h] == 0 && G.mul[h][g] == 0) found = true;
        if (!found) return fail("group-inverse", g, -1, -1, "element has no inverse");
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int t = 0; t < n; ++t)
                if (G.mul[G.mul[g][h]][t] != G.mul[g][G.mul[h][t]])
                    return fail("group-associativity", g, h, t, "associativity fails");

    if ((int)action.size() != n)
        return fail("sigma-shape", -1, -1, -1, "one automorphism per group element required");
    if (action[0].conjugates)
        return fail("sigma-identity", 0, -1, -1, "sigma_e must be the identity");
    if (R.kind == RingKind::Integers)
        for (int g = 0; g < n; ++g)
            if (action[g].conjugates)
                return fail("sigma-valid", g, -1, -1, "Z has no nontrivial automorphism");

    if ((int)alpha.size() != n)
        return fail("alpha-shape", -1, -1, -1, "cocycle table has wrong shape");
    for (int g = 0; g < n; ++g)
        if ((int)alpha[g].size() != n)
            return fail("alpha-shape", g, -1, -1, "cocycle table has wrong shape");

    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (alpha[g][h].is_zero())
                return fail("alpha-nonzero", g, h, -1, "cocycle entries must be nonzero");
    const RElem one{1, 0};
    for (int g = 0; g < n; ++g) {
        if (!(alpha[g][0] == one))
            return fail("alpha(g,e)=1", g, -1, -1, "alpha(g,e) must be 1");
        if (!(alpha[0][g] == one))
            return fail("alpha(e,g)=1", g, -1, -1, "alpha(e,g) must be 1");
    }
    // eq1: alpha(g,h) alpha(gh,t) = sigma_g(alpha(h,t)) alpha(g,ht)
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int t = 0; t < n; ++t) {
                RElem lhs = rmul(R, alpha[g][h], alpha[G.mul[g][h]][t]);
                RElem rhs = rmul(R, action[g].apply(R, alpha[h][t]), alpha[g][G.mul[h][t]]);
                if (!(lhs == rhs)) return fail("eq1", g, h, t, "cocycle identity (1) fails");
            }
    // eq2 on the module generators {1, theta}:
    // sigma_g(sigma_h(r)) alpha(g,h) = alpha(g,h) sigma_{gh}(r)
    std::vector<RElem> gens{RElem(1)};
    if (R.kind == RingKind::Quadratic) gens.push_back(RElem(0, 1));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (const RElem& r : gens) {
                RElem lhs = rmul(R, action[g].apply(R, action[h].apply(R, r)), alpha[g][h]);
                RElem rhs = rmul(R, alpha[g][h], action[G.mul[g][h]].apply(R, r));
                if (!(lhs == rhs)) return fail("eq2", g, h, -1, "twist identity (2) fails");
            }
    // alpha(g, g^-1) = sigma_g(alpha(g^-1, g))
    for (int g = 0; g < n; ++g) {
        int gi = -1;
        for (int h = 0; h < n; ++h)
            if (G.mul[g][h] == 0) gi = h;
        if (!(alpha[g][gi] == action[g].apply(R, alpha[gi][g])))
            return fail("alpha(g,ginv)=sigma_g(alpha(ginv,g))", g, gi, -1,
                        "inverse-pair cocycle identity fails");
    }

    ValidityReport r;
    r.ok = true;
    bool conj = std::any_of(action.begin(), action.end(),
                            [](const SigmaAction& s) { return s.conjugates; });
    r.centrally_crystalline = true;
    if (conj) {
        for (int g = 0; g < n && r.centrally_crystalline; ++g)
            for (int h = 0; h < n; ++h)
                if (alpha[g][h].b != 0) {
                    r.centrally_crystalline = false;
                    break;
                }
    }
    return r;
}

RingPtr make_crystal_ring(const RingSpec& R, const GroupTable& G,
                          const std::vector<SigmaAction>& action, const RMat& alpha) {
    ValidityReport rep = validate_ring(R, G, action, alpha);
    if (!rep.ok) throw ValidationError(rep.identity, rep.g, rep.h, rep.t, rep.message);
    auto ring = std::make_shared<CrystalRing>();
    ring->ring = R;
    ring->group = G;
    ring->group.inv.resize(G.n);
    for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h)
            if (G.mul[g][h] == 0) ring->group.inv[g] = h;
    ring->action = action;
    ring->alpha = alpha;
    ring->centrally_crystalline = rep.centrally_crystalline;
    return ring;
}

bool AElement::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const KElem& c) { return c.is_zero(); });
}

namespace {

void check_same_ring(const AElement& x, const AElement& y) {
    if (x.ring.get() != y.ring.get()) throw RingMismatchError();
}

}  // namespace

AElement elem_zero(const RingPtr& A) { return {A, KRow(A->n(), kfrom_int(0))}; }

AElement elem_one(const RingPtr& A) { return elem_u(A, 0); }

AElement elem_u(const RingPtr& A, int g) {
    AElement x = elem_zero(A);
    x.coeffs[g] = kfrom_int(1);
    return x;
}

AElement elem_from_coeffs(const RingPtr& A, KRow coeffs) {
    if ((int)coeffs.size() != A->n()) throw std::logic_error("elem_from_coeffs: wrong length");
    for (auto& c : coeffs) c = knormalize(c);
    return {A, std::move(coeffs)};
}

AElement elem_add(const AElement& x, const AElement& y) {
    check_same_ring(x, y);
    AElement z = x;
    for (int g = 0; g < x.ring->n(); ++g) z.coeffs[g] = kadd(z.coeffs[g], y.coeffs[g]);
    return z;
}

AElement elem_sub(const AElement& x, const AElement& y) { return elem_add(x, elem_neg(y)); }

AElement elem_neg(const AElement& x) {
    AElement z = x;
    for (auto& c : z.coeffs) c = kneg(c);
    return z;
}

AElement elem_scale(const KElem& k, const AElement& x) {
    AElement z = x;
    for (auto& c : z.coeffs) c = kmul(x.ring->ring, k, c);
    return z;
}

AElement elem_mul(const AElement& x, const AElement& y) {
    check_same_ring(x, y);
    const CrystalRing& A = *x.ring;
    const RingSpec& R = A.ring;
    AElement z = elem_zero(x.ring);
    for (int g = 0; g < A.n(); ++g) {
        if (x.coeffs[g].is_zero()) continue;
        for (int h = 0; h < A.n(); ++h) {
            if (y.coeffs[h].is_zero()) continue;
            int k = A.group.op(g, h);
            KElem term = kmul(R, x.coeffs[g], A.sigma(g).apply(R, y.coeffs[h]));
            term = kmul(R, term, kfrom(A.alpha_at(g, h)));
            z.coeffs[k] = kadd(z.coeffs[k], term);
        }
    }
    return z;
}

bool elem_eq(const AElement& x, const AElement& y) {
    check_same_ring(x, y);
    return x.coeffs == y.coeffs;
}

std::vector<std::pair<int, AElement>> grade_decompose(const AElement& x) {
    std::vector<std::pair<int, AElement>> out;
    for (int g = 0; g < x.ring->n(); ++g) {
        if (x.coeffs[g].is_zero()) continue;
        AElement comp = elem_zero(x.ring);
        comp.coeffs[g] = x.coeffs[g];
        out.emplace_back(g, std::move(comp));
    }
    return out;
}

KMat right_mul_matrix(const AElement& x) {
    const CrystalRing& A = *x.ring;
    const RingSpec& R = A.ring;
    KMat Rx(A.n(), KRow(A.n(), kfrom_int(0)));
    for (int g = 0; g < A.n(); ++g)
        for (int k = 0; k < A.n(); ++k) {
            int h = A.group.op(A.group.inverse(g), k);  // g * h = k
            Rx[g][k] = kmul(R, A.sigma(g).apply(R, x.coeffs[h]), kfrom(A.alpha_at(g, h)));
        }
    return Rx;
}

KMat left_mul_matrix(const AElement& x) {
    const CrystalRing& A = *x.ring;
    const RingSpec& R = A.ring;
    KMat Lx(A.n(), KRow(A.n(), kfrom_int(0)));
    for (int h = 0; h < A.n(); ++h)
        for (int k = 0; k < A.n(); ++k) {
            int g = A.group.op(k, A.group.inverse(h));  // g * h = k
            Lx[h][k] = kmul(R, x.coeffs[g], kfrom(A.alpha_at(g, h)));
        }
    return Lx;
}

KRow apply_left(const RingPtr& A, const KMat& Lx, const KRow& y) {
    const RingSpec& R = A->ring;
    KRow z(A->n(), kfrom_int(0));
    for (int k = 0; k < A->n(); ++k)
        for (int h = 0; h < A->n(); ++h) {
            if (Lx[h][k].is_zero() || y[h].is_zero()) continue;
            int tw = A->group.op(k, A->group.inverse(h));
            z[k] = kadd(z[k], kmul(R, Lx[h][k], A->sigma(tw).apply(R, y[h])));
        }
    return z;
}

KRow apply_right(const RingPtr& A, const KMat& Rx, const KRow& y) {
    return krow_mul_mat(A->ring, y, Rx);
}

FlatVec flat_of_elem(const AElement& x) {
    const int deg = x.ring->ring.degree();
    BigInt den = 1;
    for (const KElem& c : x.coeffs) den = lcm_int(den, c.den);
    FlatVec f;
    f.den = den;
    f.v.assign(x.ring->flat_dim(), RElem(0));
    for (int g = 0; g < x.ring->n(); ++g) {
        BigInt scale = den / x.coeffs[g].den;
        f.v[g * deg] = RElem(x.coeffs[g].num.a * scale);
        if (deg == 2) f.v[g * deg + 1] = RElem(x.coeffs[g].num.b * scale);
    }
    return f;
}

AElement elem_of_flat(const RingPtr& A, const RRow& v, const BigInt& den) {
    const int deg = A->ring.degree();
    KRow coeffs(A->n());
    for (int g = 0; g < A->n(); ++g) {
        RElem num{v[g * deg].a, deg == 2 ? v[g * deg + 1].a : BigInt(0)};
        coeffs[g] = knormalize({num, den});
    }
    return {A, std::move(coeffs)};
}

namespace {

AElement flat_basis_elem(const RingPtr& A, int idx) {
    const int deg = A->ring.degree();
    int g = idx / deg, j = idx % deg;
    AElement x = elem_zero(A);
    x.coeffs[g] = j == 0 ? kfrom_int(1) : kfrom(RElem(0, 1));
    return x;
}

FlatMap rows_to_flat_map(const std::vector<FlatVec>& rows) {
    BigInt den = 1;
    for (const auto& r : rows) den = lcm_int(den, r.den);
    FlatMap m;
    m.den = den;
    m.mat.reserve(rows.size());
    for (const auto& r : rows) {
        RRow row = r.v;
        BigInt scale = den / r.den;
        for (auto& x : row) x.a *= scale;
        m.mat.push_back(std::move(row));
    }
    return m;
}

}  // namespace

FlatMap flat_left_mul(const AElement& x) {
    std::vector<FlatVec> rows;
    for (int i = 0; i < x.ring->flat_dim(); ++i)
        rows.push_back(flat_of_elem(elem_mul(x, flat_basis_elem(x.ring, i))));
    return rows_to_flat_map(rows);
}

FlatMap flat_right_mul(const AElement& x) {
    std::vector<FlatVec> rows;
    for (int i = 0; i < x.ring->flat_dim(); ++i)
        rows.push_back(flat_of_elem(elem_mul(flat_basis_elem(x.ring, i), x)));
    return rows_to_flat_map(rows);
}

FlatMap flat_of_kmat(const RingPtr& A, const KMat& T) {
    const RingSpec& R = A->ring;
    std::vector<FlatVec> rows;
    for (int i = 0; i < A->flat_dim(); ++i) {
        AElement src = flat_basis_elem(A, i);
        AElement img = elem_zero(A);
        for (int col = 0; col < A->n(); ++col) {
            KElem acc = kfrom_int(0);
            for (int rsrc = 0; rsrc < A->n(); ++rsrc)
                acc = kadd(acc, kmul(R, src.coeffs[rsrc], T[rsrc][col]));
            img.coeffs[col] = acc;
        }
        rows.push_back(flat_of_elem(img));
    }
    return rows_to_flat_map(rows);
}

FlatMap flat_compose(const FlatMap& f, const FlatMap& g) {
    RingSpec Z = RingSpec::integers();
    FlatMap out;
    out.mat = rmat_mul(Z, f.mat, g.mat);
    out.den = f.den * g.den;
    return out;
}

}  // namespace crystalline
