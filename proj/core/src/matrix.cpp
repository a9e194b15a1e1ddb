#include "crystalline/matrix.hpp"

#include <algorithm>

namespace crystalline {

RMat rmat_identity(std::size_t n) {
    RMat I(n, RRow(n));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = RElem(1);
    return I;
}

RMat rmat_mul(const RingSpec& R, const RMat& A, const RMat& B) {
    if (A.empty()) return {};
    std::size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    RMat C(m, RRow(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (A[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                C[i][j] = radd(C[i][j], rmul(R, A[i][l], B[l][j]));
        }
    return C;
}

RRow rrow_mul_mat(const RingSpec& R, const RRow& v, const RMat& B) {
    RMat C = rmat_mul(R, RMat{v}, B);
    return C.empty() ? RRow{} : C[0];
}

bool rmat_is_zero_row(const RRow& v) {
    return std::all_of(v.begin(), v.end(), [](const RElem& x) { return x.is_zero(); });
}

namespace {

void row_sub_mul(const RingSpec& R, RRow& dst, const RElem& q, const RRow& src) {
    for (std::size_t j = 0; j < dst.size(); ++j)
        dst[j] = rsub(dst[j], rmul(R, q, src[j]));
}

void row_scale(const RingSpec& R, RRow& row, const RElem& u) {
    for (auto& x : row) x = rmul(R, u, x);
}

// shared HNF worker; transform tracking is optional
std::size_t hnf_inplace(const RingSpec& R, RMat& rows, RMat* U) {
    const std::size_t m = rows.size();
    const std::size_t k = m == 0 ? 0 : rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < m; ++col) {
        // clear the column below row r with euclidean steps
        for (;;) {
            std::size_t best = m;
            BigInt best_norm;
            for (std::size_t i = r; i < m; ++i) {
                if (rows[i][col].is_zero()) continue;
                BigInt nn = rnorm_abs(R, rows[i][col]);
                if (best == m || nn < best_norm) {
                    best = i;
                    best_norm = nn;
                }
            }
            if (best == m) break;  // column already clear
            if (best != r) {
                std::swap(rows[best], rows[r]);
                if (U) std::swap((*U)[best], (*U)[r]);
            }
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (rows[i][col].is_zero()) continue;
                DivResult d = euclid_divmod(R, rows[i][col], rows[r][col]);
                row_sub_mul(R, rows[i], d.q, rows[r]);
                if (U) row_sub_mul(R, (*U)[i], d.q, (*U)[r]);
                if (!d.r.is_zero()) clean = false;
            }
            if (clean) {
                // pivot survives this column; normalize and reduce upward
                RElem piv = rows[r][col];
                RElem u = exact_div(R, canonical_associate(R, piv), piv);
                if (!(u == RElem(1))) {
                    row_scale(R, rows[r], u);
                    if (U) row_scale(R, (*U)[r], u);
                }
                piv = rows[r][col];
                for (std::size_t i = 0; i < r; ++i) {
                    if (rows[i][col].is_zero()) continue;
                    DivResult d = euclid_divmod(R, rows[i][col], piv);
                    row_sub_mul(R, rows[i], d.q, rows[r]);
                    if (U) row_sub_mul(R, (*U)[i], d.q, (*U)[r]);
                }
                ++r;
                break;
            }
        }
    }
    return r;
}

}  // namespace

RMat rmat_hnf(const RingSpec& R, RMat rows) {
    std::size_t r = hnf_inplace(R, rows, nullptr);
    rows.resize(r);
    return rows;
}

HnfTransform rmat_hnf_transform(const RingSpec& R, RMat rows) {
    RMat U = rmat_identity(rows.size());
    std::size_t r = hnf_inplace(R, rows, &U);
    HnfTransform out;
    out.rank = r;
    rows.resize(r);
    out.hnf = std::move(rows);
    out.transform = std::move(U);
    return out;
}

RMat rmat_left_kernel(const RingSpec& R, const RMat& rows) {
    HnfTransform t = rmat_hnf_transform(R, rows);
    RMat ker(t.transform.begin() + t.rank, t.transform.end());
    return rmat_hnf(R, std::move(ker));
}

RElem rmat_det_hnf(const RingSpec& R, const RMat& hnf) {
    RElem det{1, 0};
    for (std::size_t i = 0; i < hnf.size(); ++i) det = rmul(R, det, hnf[i][i]);
    return det;
}

RRow rmat_reduce_row(const RingSpec& R, const RMat& hnf, RRow row) {
    for (const RRow& h : hnf) {
        std::size_t pc = 0;
        while (pc < h.size() && h[pc].is_zero()) ++pc;
        if (pc == h.size() || row[pc].is_zero()) continue;
        DivResult d = euclid_divmod(R, row[pc], h[pc]);
        row_sub_mul(R, row, d.q, h);
    }
    return row;
}

std::optional<KRow> solve_in_echelon(const RingSpec& R, const RMat& hnf, const KRow& v) {
    KRow rem = v;
    KRow coeffs(hnf.size(), kfrom_int(0));
    for (std::size_t i = 0; i < hnf.size(); ++i) {
        std::size_t pc = 0;
        while (pc < hnf[i].size() && hnf[i][pc].is_zero()) ++pc;
        if (pc == hnf[i].size()) continue;
        KElem c = kdiv(R, rem[pc], kfrom(hnf[i][pc]));
        coeffs[i] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = pc; j < rem.size(); ++j)
            rem[j] = ksub(rem[j], kmul(R, c, kfrom(hnf[i][j])));
    }
    for (const KElem& x : rem)
        if (!x.is_zero()) return std::nullopt;
    return coeffs;
}

KMat kmat_identity(std::size_t n) {
    KMat I(n, KRow(n, kfrom_int(0)));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = kfrom_int(1);
    return I;
}

KMat kmat_mul(const RingSpec& R, const KMat& A, const KMat& B) {
    if (A.empty()) return {};
    std::size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    KMat C(m, KRow(n, kfrom_int(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (A[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                C[i][j] = kadd(C[i][j], kmul(R, A[i][l], B[l][j]));
        }
    return C;
}

KRow krow_mul_mat(const RingSpec& R, const KRow& v, const KMat& B) {
    KMat C = kmat_mul(R, KMat{v}, B);
    return C.empty() ? KRow{} : C[0];
}

std::optional<KMat> kmat_inverse(const RingSpec& R, KMat A) {
    const std::size_t n = A.size();
    KMat I = kmat_identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(I[piv], I[col]);
        KElem inv = kinv(R, A[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            A[col][j] = kmul(R, inv, A[col][j]);
            I[col][j] = kmul(R, inv, I[col][j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || A[i][col].is_zero()) continue;
            KElem f = A[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                A[i][j] = ksub(A[i][j], kmul(R, f, A[col][j]));
                I[i][j] = ksub(I[i][j], kmul(R, f, I[col][j]));
            }
        }
    }
    return I;
}

}  // namespace crystalline
