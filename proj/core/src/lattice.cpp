#include "crystalline/lattice.hpp"

#include <algorithm>

namespace crystalline {

namespace {

const RingSpec kZ = RingSpec::integers();

void check_same_ring(const FullLattice& M, const FullLattice& N) {
    if (M.ring.get() != N.ring.get()) throw RingMismatchError();
}

BigInt content_of_rows(const RMat& rows) {
    BigInt g = 0;
    for (const auto& row : rows)
        for (const auto& x : row) g = gcd_int(g, content(x));
    return g;
}

RMat flat_rows_of_rmat(const RingPtr& A, const RMat& rmat) {
    const RingSpec& R = A->ring;
    const int deg = R.degree();
    RMat out;
    for (const auto& row : rmat) {
        RRow flat(A->flat_dim());
        RRow flat_th(A->flat_dim());
        for (int g = 0; g < A->n(); ++g) {
            flat[g * deg] = RElem(row[g].a);
            if (deg == 2) {
                flat[g * deg + 1] = RElem(row[g].b);
                RElem th = rmul(R, RElem(0, 1), row[g]);
                flat_th[g * deg] = RElem(th.a);
                flat_th[g * deg + 1] = RElem(th.b);
            }
        }
        out.push_back(std::move(flat));
        if (deg == 2) out.push_back(std::move(flat_th));
    }
    return out;
}

BigInt hnf_det_z(const RMat& zhnf) {
    BigInt d = 1;
    for (std::size_t i = 0; i < zhnf.size(); ++i) d *= zhnf[i][i].a;
    return d;
}

// right multiplication by theta in flat coordinates
FlatMap theta_right_map(const RingPtr& A) {
    AElement th = elem_zero(A);
    th.coeffs[0] = kfrom(RElem(0, 1));
    return flat_right_mul(th);
}

bool flat_row_in(const FullLattice& M, const RRow& row, const BigInt& den);

FullLattice assemble(const RingPtr& A, RMat rhnf, BigInt den) {
    const int n = A->n();
    if ((int)rhnf.size() < n) throw NotFullError();
    BigInt g = gcd_int(den, content_of_rows(rhnf));
    if (g > 1) {
        den /= g;
        for (auto& row : rhnf)
            for (auto& x : row) {
                x.a /= g;
                x.b /= g;
            }
    }
    FullLattice M;
    M.ring = A;
    M.den = den;
    M.rbasis = std::move(rhnf);
    M.zbasis = rmat_hnf(kZ, flat_rows_of_rmat(A, M.rbasis));
    if ((int)M.zbasis.size() != A->flat_dim()) throw NotFullError();
    if (A->ring.kind == RingKind::Quadratic) {
        FlatMap th = theta_right_map(A);
        for (const auto& row : M.zbasis) {
            RRow img = rrow_mul_mat(kZ, row, th.mat);
            if (!flat_row_in(M, img, M.den * th.den))
                throw std::logic_error("lattice invariant: not closed under the right R-action");
        }
    }
    return M;
}

bool flat_row_in(const FullLattice& M, const RRow& row, const BigInt& den) {
    // is row/den an element of M?  den*M has flat basis zbasis, so we need
    // (M.den/den)*row to be an integer row in the span of zbasis.
    KRow v(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        v[j] = knormalize({RElem(row[j].a * M.den), den});
    auto c = solve_in_echelon(kZ, M.zbasis, v);
    if (!c) return false;
    for (const KElem& x : *c)
        if (!kis_integral(x)) return false;
    return true;
}

}  // namespace

FullLattice lattice_from_generators(const RingPtr& A, const std::vector<AElement>& gens) {
    if (gens.empty()) throw NotFullError("no generators");
    std::vector<AElement> all = gens;
    if (A->ring.kind == RingKind::Quadratic) {
        AElement th = elem_zero(A);
        th.coeffs[0] = kfrom(RElem(0, 1));
        for (const auto& x : gens) {
            if (x.ring.get() != A.get()) throw RingMismatchError();
            all.push_back(elem_mul(x, th));
        }
    }
    BigInt den = 1;
    for (const auto& x : all)
        for (const auto& c : x.coeffs) den = lcm_int(den, c.den);
    RMat rows;
    for (const auto& x : all) {
        RRow row(A->n());
        for (int g = 0; g < A->n(); ++g) row[g] = rmul_int(x.coeffs[g].num, den / x.coeffs[g].den);
        rows.push_back(std::move(row));
    }
    return assemble(A, rmat_hnf(A->ring, std::move(rows)), den);
}

FullLattice lattice_from_flat_rows(const RingPtr& A, RMat rows, const BigInt& den) {
    RMat zhnf = rmat_hnf(kZ, std::move(rows));
    if ((int)zhnf.size() != A->flat_dim()) throw NotFullError();
    BigInt zdet = hnf_det_z(zhnf);
    RMat rrows;
    const int deg = A->ring.degree();
    for (const auto& row : zhnf) {
        RRow rrow(A->n());
        for (int g = 0; g < A->n(); ++g)
            rrow[g] = RElem(row[g * deg].a, deg == 2 ? row[g * deg + 1].a : BigInt(0));
        rrows.push_back(std::move(rrow));
    }
    FullLattice M = assemble(A, rmat_hnf(A->ring, std::move(rrows)), den);
    // the R-span must not exceed the Z-span, otherwise the input set was not
    // actually R-closed
    BigInt zdet2 = hnf_det_z(M.zbasis);
    BigInt lhs = zdet2 * pow_int(den, (unsigned)A->flat_dim());
    BigInt rhs = zdet * pow_int(M.den, (unsigned)A->flat_dim());
    if (lhs != rhs) throw std::logic_error("lattice invariant: solution set is not R-closed");
    return M;
}

FullLattice lattice_standard(const RingPtr& A) {
    std::vector<AElement> gens;
    for (int g = 0; g < A->n(); ++g) gens.push_back(elem_u(A, g));
    return lattice_from_generators(A, gens);
}

std::vector<AElement> lattice_relements(const FullLattice& M) {
    std::vector<AElement> out;
    for (const auto& row : M.rbasis) {
        KRow coeffs(M.n());
        for (int g = 0; g < M.n(); ++g) coeffs[g] = knormalize({row[g], M.den});
        out.push_back(elem_from_coeffs(M.ring, coeffs));
    }
    return out;
}

std::vector<AElement> lattice_zelements(const FullLattice& M) {
    std::vector<AElement> out;
    for (const auto& row : M.zbasis) out.push_back(elem_of_flat(M.ring, row, M.den));
    return out;
}

bool lat_equal(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    return M.den == N.den && M.rbasis == N.rbasis;
}

int lat_cmp(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    if (M.den != N.den) return M.den < N.den ? -1 : 1;
    for (std::size_t i = 0; i < M.rbasis.size(); ++i)
        for (std::size_t j = 0; j < M.rbasis[i].size(); ++j) {
            int c = relem_cmp(M.rbasis[i][j], N.rbasis[i][j]);
            if (c != 0) return c;
        }
    return 0;
}

bool member(const FullLattice& M, const AElement& x) {
    if (x.ring.get() != M.ring.get()) throw RingMismatchError();
    KRow v(M.n());
    for (int g = 0; g < M.n(); ++g) v[g] = kmul(M.ring->ring, kfrom_int(M.den), x.coeffs[g]);
    auto c = solve_in_echelon(M.ring->ring, M.rbasis, v);
    if (!c) return false;
    for (const KElem& e : *c)
        if (!kis_integral(e)) return false;
    return true;
}

bool lat_contains(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    for (const auto& row : N.zbasis)
        if (!flat_row_in(M, row, N.den)) return false;
    return true;
}

FullLattice lat_sum(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    BigInt den = lcm_int(M.den, N.den);
    RMat rows;
    for (const auto& row : M.rbasis) {
        RRow r = row;
        for (auto& x : r) x = rmul_int(x, den / M.den);
        rows.push_back(std::move(r));
    }
    for (const auto& row : N.rbasis) {
        RRow r = row;
        for (auto& x : r) x = rmul_int(x, den / N.den);
        rows.push_back(std::move(r));
    }
    return assemble(M.ring, rmat_hnf(M.ring->ring, std::move(rows)), den);
}

FullLattice lat_scale(const FullLattice& M, const KElem& k) {
    if (k.is_zero()) throw ZeroIdealError("scaling a lattice by zero");
    std::vector<AElement> gens;
    for (const auto& x : lattice_relements(M)) gens.push_back(elem_scale(k, x));
    return lattice_from_generators(M.ring, gens);
}

FullLattice lat_intersect(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    BigInt den = lcm_int(M.den, N.den);
    const std::size_t d = M.zbasis.size();
    RMat stacked;
    for (const auto& row : M.zbasis) {
        RRow r = row;
        for (auto& x : r) x.a *= den / M.den;
        stacked.push_back(std::move(r));
    }
    for (const auto& row : N.zbasis) {
        RRow r = row;
        for (auto& x : r) x.a *= den / N.den;
        stacked.push_back(std::move(r));
    }
    RMat ker = rmat_left_kernel(kZ, stacked);
    RMat rows;
    for (const auto& kv : ker) {
        RRow prod(M.dim(), RElem(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (kv[i].is_zero()) continue;
            for (int j = 0; j < M.dim(); ++j)
                prod[j].a += kv[i].a * stacked[i][j].a;
        }
        rows.push_back(std::move(prod));
    }
    return lattice_from_flat_rows(M.ring, std::move(rows), den);
}

FullLattice lat_mul(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    std::vector<AElement> xs = lattice_zelements(M), ys = lattice_zelements(N);
    std::vector<AElement> prods;
    prods.reserve(xs.size() * ys.size());
    for (const auto& x : xs)
        for (const auto& y : ys) prods.push_back(elem_mul(x, y));
    return lattice_from_generators(M.ring, prods);
}

BigInt lat_index(const FullLattice& N, const FullLattice& M) {
    check_same_ring(M, N);
    const unsigned d = (unsigned)M.dim();
    BigInt num = hnf_det_z(M.zbasis) * pow_int(N.den, d);
    BigInt den = hnf_det_z(N.zbasis) * pow_int(M.den, d);
    BigInt idx = exact_div(num, den);
    if (idx <= 0) throw std::logic_error("lat_index: nonpositive index");
    return idx;
}

FullLattice solve_preimage(const RingPtr& A, const std::vector<FlatMap>& maps,
                           const std::vector<const FullLattice*>& targets) {
    if (maps.empty() || maps.size() != targets.size())
        throw std::logic_error("solve_preimage: bad arguments");
    const int d = A->flat_dim();

    // columns of H = [F_j * W_j^{-1}]_j over Q, W_j the target basis matrix
    KMat H(d, KRow(0));
    for (std::size_t j = 0; j < maps.size(); ++j) {
        const FullLattice& L = *targets[j];
        KMat W(L.zbasis.size(), KRow(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) W[r][c] = knormalize({L.zbasis[r][c], L.den});
        auto Winv = kmat_inverse(kZ, W);
        if (!Winv) throw std::logic_error("solve_preimage: singular target basis");
        KMat F(d, KRow(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) F[r][c] = knormalize({maps[j].mat[r][c], maps[j].den});
        KMat Hj = kmat_mul(kZ, F, *Winv);
        for (int r = 0; r < d; ++r)
            H[r].insert(H[r].end(), Hj[r].begin(), Hj[r].end());
    }
    const std::size_t w = H[0].size();
    BigInt c = 1;
    for (const auto& row : H)
        for (const auto& x : row) c = lcm_int(c, x.den);
    RMat H0(d, RRow(w));
    for (int r = 0; r < d; ++r)
        for (std::size_t cc = 0; cc < w; ++cc) H0[r][cc] = RElem(H[r][cc].num.a * (c / H[r][cc].den));

    if (rmat_hnf(kZ, H0).size() != (std::size_t)d) throw RankDeficientError();

    // denominator bound: determinant of the column lattice of H0
    RMat cols(w, RRow(d));
    for (int r = 0; r < d; ++r)
        for (std::size_t cc = 0; cc < w; ++cc) cols[cc][r] = H0[r][cc];
    BigInt e = hnf_det_z(rmat_hnf(kZ, std::move(cols)));

    // solutions: x = y/e with y*H0 = 0 mod c*e
    BigInt ce = c * e;
    RMat stacked = H0;
    for (std::size_t i = 0; i < w; ++i) {
        RRow row(w, RElem(0));
        row[i] = RElem(ce);
        stacked.push_back(std::move(row));
    }
    RMat ker = rmat_left_kernel(kZ, stacked);
    RMat rows;
    for (const auto& kv : ker) {
        RRow y(kv.begin(), kv.begin() + d);
        rows.push_back(std::move(y));
    }
    return lattice_from_flat_rows(A, std::move(rows), e);
}

FullLattice integral_solution(const KMat& T, const FullLattice& L) {
    return solve_preimage(L.ring, {flat_of_kmat(L.ring, T)}, {&L});
}

FullLattice left_order(const FullLattice& M) {
    std::vector<FlatMap> maps;
    std::vector<const FullLattice*> targets;
    for (const auto& m : lattice_zelements(M)) {
        maps.push_back(flat_right_mul(m));
        targets.push_back(&M);
    }
    return solve_preimage(M.ring, maps, targets);
}

FullLattice right_order(const FullLattice& M) {
    std::vector<FlatMap> maps;
    std::vector<const FullLattice*> targets;
    for (const auto& m : lattice_zelements(M)) {
        maps.push_back(flat_left_mul(m));
        targets.push_back(&M);
    }
    return solve_preimage(M.ring, maps, targets);
}

FullLattice inverse_lattice(const FullLattice& M) {
    FullLattice ol = left_order(M);
    std::vector<FlatMap> maps;
    std::vector<const FullLattice*> targets;
    for (const auto& m : lattice_zelements(M)) {
        maps.push_back(flat_left_mul(m));
        targets.push_back(&ol);
    }
    return solve_preimage(M.ring, maps, targets);
}

FullLattice inverse_via_right(const FullLattice& M) {
    FullLattice orr = right_order(M);
    std::vector<FlatMap> maps;
    std::vector<const FullLattice*> targets;
    for (const auto& m : lattice_zelements(M)) {
        maps.push_back(flat_right_mul(m));
        targets.push_back(&orr);
    }
    return solve_preimage(M.ring, maps, targets);
}

FullLattice inverse_via_definition(const FullLattice& M) {
    std::vector<FlatMap> maps;
    std::vector<const FullLattice*> targets;
    std::vector<AElement> ms = lattice_zelements(M);
    for (const auto& mi : ms)
        for (const auto& mj : ms) {
            maps.push_back(flat_compose(flat_left_mul(mi), flat_right_mul(mj)));
            targets.push_back(&M);
        }
    return solve_preimage(M.ring, maps, targets);
}

bool is_order(const FullLattice& M) {
    if (!member(M, elem_one(M.ring))) return false;
    return lat_contains(M, lat_mul(M, M));
}

bool is_two_sided_ideal(const FullLattice& order, const FullLattice& M) {
    check_same_ring(order, M);
    return lat_contains(M, lat_mul(order, M)) && lat_contains(M, lat_mul(M, order));
}

std::pair<BigInt, BigInt> scaling_witness(const FullLattice& M, const FullLattice& N) {
    check_same_ring(M, N);
    const RingSpec& R = M.ring->ring;
    BigInt r = 1;
    for (const auto& row : M.rbasis) {
        KRow v(M.n());
        for (int g = 0; g < M.n(); ++g)
            v[g] = knormalize({rmul_int(row[g], N.den), M.den});
        auto c = solve_in_echelon(R, N.rbasis, v);
        if (!c) throw std::logic_error("scaling_witness: bases do not span the same space");
        for (const KElem& e : *c) r = lcm_int(r, e.den);
    }
    // invariant scalars are central, so the right witness equals the left one
    return {r, r};
}

}  // namespace crystalline
