#pragma once

#include <string>
#include <vector>

#include "mok/space.hpp"

namespace mok {

/// A nonzero linear operator on T (x) T^dual, stored as an n^2 x n^2 matrix
/// acting on row-major flattened EndTensors.
struct CurvatureTypeTensor {
    MatrixXcd op;     // n^2 x n^2
    BlockSpace space; // block structure of T

    CurvatureTypeTensor(MatrixXcd o, BlockSpace s);

    int n() const { return space.total_dim(); }

    /// Apply to an EndTensor.
    MatrixXcd apply(const MatrixXcd& a) const;
};

/// Block-diagonal unitary sample of the holonomy group H = H_1 x ... x H_k,
/// expressed as its action matrix on the coordinates of T.
struct GroupElementSample {
    MatrixXcd matrix; // n x n, block-diagonal
    BlockSpace space;

    /// || g* g - I ||_F
    double unitarity_defect() const;
};

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular values are < tol * (largest singular value).
std::vector<EndTensor> kernel_basis(const CurvatureTypeTensor& sigma, double tol);

/// Four-index block sigma_{(i,j),(h,k)} : T_i (x) T_j^dual -> T_h (x) T_k^dual
/// as the (n_h n_k) x (n_i n_j) sub-array under the fixed flattening.
/// Indices are 0-based.
MatrixXcd block_component(const CurvatureTypeTensor& sigma, int i, int j, int h, int k);

/// Kronecker product consistent with the row-major flattening:
/// flatten(A X B) = kron(A, B^T) flatten(X).
MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

/// Adjoint action Ad_g on flattened EndTensors: flatten(g A g*) = ad_matrix(g) flatten(A).
MatrixXcd ad_matrix(const MatrixXcd& g);

/// || sigma o Ad_g - Ad_g o sigma ||_F / || sigma ||_F
double invariance_residual(const CurvatureTypeTensor& sigma, const GroupElementSample& g);

/// Average of Ad_g^{-1} o A o Ad_g over the samples.
MatrixXcd group_average(const MatrixXcd& op, const std::vector<GroupElementSample>& samples);

/// Relative-threshold numerical rank (singular values >= rtol * largest).
int numerical_rank(const MatrixXcd& m, double rtol);

/// JSON wire format {"n":..,"blocks":[..],"re":[[..]],"im":[[..]]},
/// row-major n^2 x n^2 arrays.
std::string serialize_operator(const CurvatureTypeTensor& sigma);
CurvatureTypeTensor deserialize_operator(const std::string& json_text);

} // namespace mok
