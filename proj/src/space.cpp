#include "mok/space.hpp"

#include <cmath>

namespace mok {

VectorXcd dual_coords(const VectorXcd& t) { return t.conjugate(); }

Covector dual(const TangentVector& t) { return Covector{t.coords.conjugate()}; }

MatrixXcd rank1_matrix(const VectorXcd& t, const VectorXcd& f) {
    if (t.norm() == 0.0) throw ZeroInputError("rank1: tangent vector is zero");
    if (f.norm() == 0.0) throw ZeroInputError("rank1: covector is zero");
    if (t.size() != f.size()) throw DimensionMismatchError("rank1: dimension mismatch");
    return t * f.transpose();
}

EndTensor rank1(const TangentVector& t, const Covector& f) {
    return EndTensor{rank1_matrix(t.coords, f.coords)};
}

VectorXcd flatten(const MatrixXcd& a) {
    const auto n = a.rows();
    if (a.cols() != n) throw DimensionMismatchError("flatten: matrix must be square");
    VectorXcd v(n * n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) v(r * n + c) = a(r, c);
    return v;
}

MatrixXcd unflatten(const VectorXcd& v) {
    const auto n2 = v.size();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n2))));
    if (n * n != n2) throw DimensionMismatchError("unflatten: length is not a square");
    MatrixXcd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) a(r, c) = v(r * n + c);
    return a;
}

} // namespace mok
