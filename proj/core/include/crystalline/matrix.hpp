#pragma once

#include <optional>
#include <vector>

#include "crystalline/ring.hpp"

namespace crystalline {

using RRow = std::vector<RElem>;
using RMat = std::vector<RRow>;
using KRow = std::vector<KElem>;
using KMat = std::vector<KRow>;

RMat rmat_identity(std::size_t n);
RMat rmat_mul(const RingSpec& R, const RMat& A, const RMat& B);
RRow rrow_mul_mat(const RingSpec& R, const RRow& v, const RMat& B);
bool rmat_is_zero_row(const RRow& v);

// Canonical row Hermite normal form: echelon shape, pivots canonical
// associates, entries above a pivot reduced by euclidean division.  Zero rows
// are dropped; two generating sets with the same row span produce the same
// output.
RMat rmat_hnf(const RingSpec& R, RMat rows);

struct HnfTransform {
    RMat hnf;        // r nonzero rows
    RMat transform;  // m x m unimodular U with U * input = [hnf; 0]
    std::size_t rank = 0;
};
HnfTransform rmat_hnf_transform(const RingSpec& R, RMat rows);

// basis of { v : v * rows = 0 }, HNF-canonical
RMat rmat_left_kernel(const RingSpec& R, const RMat& rows);

// product of the pivots of a square full-rank HNF matrix
RElem rmat_det_hnf(const RingSpec& R, const RMat& hnf);

// fully reduce a row against an echelon matrix; the remainder is the
// canonical coset representative
RRow rmat_reduce_row(const RingSpec& R, const RMat& hnf, RRow row);

// solve v = sum c_i * hnf_i over K; nullopt when v is outside the row span
std::optional<KRow> solve_in_echelon(const RingSpec& R, const RMat& hnf, const KRow& v);

KMat kmat_identity(std::size_t n);
KMat kmat_mul(const RingSpec& R, const KMat& A, const KMat& B);
KRow krow_mul_mat(const RingSpec& R, const KRow& v, const KMat& B);
std::optional<KMat> kmat_inverse(const RingSpec& R, KMat A);

}  // namespace crystalline
