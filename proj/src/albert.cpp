#include "mok/albert.hpp"

#include <cmath>

#include "mok/errors.hpp"

namespace mok {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

using Mat3 = std::array<std::array<Bioct, 3>, 3>;

Mat3 to_mat3(const AlbertElement& a) {
    Mat3 m;
    for (auto& row : m)
        for (auto& e : row) e = bio_zero();
    m[0][0][0] = a.diag[0];
    m[1][1][0] = a.diag[1];
    m[2][2][0] = a.diag[2];
    Bioct xs = bio_scale(kInvSqrt2, a.x);
    Bioct ys = bio_scale(kInvSqrt2, a.y);
    Bioct zs = bio_scale(kInvSqrt2, a.z);
    m[0][1] = xs;
    m[1][0] = bio_conj(xs);
    m[0][2] = ys;
    m[2][0] = bio_conj(ys);
    m[1][2] = zs;
    m[2][1] = bio_conj(zs);
    return m;
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Bioct s = bio_zero();
            for (int k = 0; k < 3; ++k) s = bio_add(s, bio_mul(a[i][k], b[k][j]));
            out[i][j] = s;
        }
    return out;
}

AlbertElement from_hermitian_mat3(const Mat3& m) {
    // Diagonal entries of a Hermitian product are scalar octonions up to
    // rounding; keep only the scalar part.
    AlbertElement a;
    a.diag = {m[0][0][0], m[1][1][0], m[2][2][0]};
    a.x = bio_scale(std::sqrt(2.0), m[0][1]);
    a.y = bio_scale(std::sqrt(2.0), m[0][2]);
    a.z = bio_scale(std::sqrt(2.0), m[1][2]);
    return a;
}

} // namespace

AlbertElement albert_from_coords(const Eigen::VectorXcd& c) {
    if (c.size() != 27) throw DimensionMismatchError("albert element needs 27 coordinates");
    AlbertElement a;
    a.diag = {c(0), c(1), c(2)};
    for (int k = 0; k < 8; ++k) {
        a.x[k] = c(3 + k);
        a.y[k] = c(11 + k);
        a.z[k] = c(19 + k);
    }
    return a;
}

Eigen::VectorXcd albert_to_coords(const AlbertElement& a) {
    Eigen::VectorXcd c(27);
    c(0) = a.diag[0];
    c(1) = a.diag[1];
    c(2) = a.diag[2];
    for (int k = 0; k < 8; ++k) {
        c(3 + k) = a.x[k];
        c(11 + k) = a.y[k];
        c(19 + k) = a.z[k];
    }
    return c;
}

AlbertElement albert_jordan(const AlbertElement& a, const AlbertElement& b) {
    Mat3 ma = to_mat3(a);
    Mat3 mb = to_mat3(b);
    Mat3 ab = mat3_mul(ma, mb);
    Mat3 ba = mat3_mul(mb, ma);
    Mat3 sym;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sym[i][j] = bio_scale(0.5, bio_add(ab[i][j], ba[i][j]));
    return from_hermitian_mat3(sym);
}

AlbertElement albert_cconj(const AlbertElement& a) {
    AlbertElement out;
    for (int i = 0; i < 3; ++i) out.diag[i] = std::conj(a.diag[i]);
    out.x = bio_cconj(a.x);
    out.y = bio_cconj(a.y);
    out.z = bio_cconj(a.z);
    return out;
}

Eigen::VectorXcd albert_triple(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                               const Eigen::VectorXcd& z) {
    AlbertElement ax = albert_from_coords(x);
    AlbertElement ay = albert_cconj(albert_from_coords(y));
    AlbertElement az = albert_from_coords(z);
    AlbertElement t1 = albert_jordan(albert_jordan(ax, ay), az);
    AlbertElement t2 = albert_jordan(albert_jordan(az, ay), ax);
    AlbertElement t3 = albert_jordan(albert_jordan(ax, az), ay);
    Eigen::VectorXcd out = albert_to_coords(t1) + albert_to_coords(t2) - albert_to_coords(t3);
    return out;
}

} // namespace mok
