#pragma once

#include <Eigen/Dense>

#include "mok/octonion.hpp"

namespace mok {

/// Complexified exceptional Jordan algebra: 3x3 octonion-Hermitian matrices
/// with complex coefficients. An element is stored as 27 complex coordinates
///
///   (d0, d1, d2, x0..x7, y0..y7, z0..z7)
///
/// for the matrix with diagonal (d0, d1, d2) and off-diagonal entries
/// x/sqrt(2) at (0,1), y/sqrt(2) at (0,2), z/sqrt(2) at (1,2) (octonion
/// conjugates below the diagonal). The sqrt(2) makes the coordinate basis
/// orthonormal for the trace form tr(X o Y), so the standard Hermitian inner
/// product on coordinates is the invariant one.
struct AlbertElement {
    std::array<std::complex<double>, 3> diag;
    Bioct x, y, z;
};

AlbertElement albert_from_coords(const Eigen::VectorXcd& c);
Eigen::VectorXcd albert_to_coords(const AlbertElement& a);

/// Jordan product X o Y = (XY + YX)/2 with octonion matrix multiplication.
AlbertElement albert_jordan(const AlbertElement& a, const AlbertElement& b);

/// Complex conjugation with respect to the real form H3(O).
AlbertElement albert_cconj(const AlbertElement& a);

/// Hermitian Jordan triple product
/// {x,y,z} = (x o conj(y)) o z + (z o conj(y)) o x - (x o z) o conj(y).
Eigen::VectorXcd albert_triple(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                               const Eigen::VectorXcd& z);

} // namespace mok
