#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "mok/errors.hpp"

namespace mok {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

enum class Family { I, II, III, IV, V, VI, Disc };

/// A tripotent witness: {e,e,e} = c*e with the normalization-dependent c.
struct Tripotent {
    VectorXcd coords;
    double c;
};

/// One of the irreducible Hermitian Jordan triple systems, plus the unit
/// disc. Elements are given by coordinates in a basis that is orthonormal
/// for the trace form, so the standard Hermitian inner product on
/// coordinates is the invariant one and D(u,v)^* = D(v,u) holds exactly.
///
/// Models and triple products:
///   I(p,q)  p x q complex matrices,       {x,y,z} = x y* z + z y* x
///   II(n)   skew-symmetric n x n,          same formula (closes exactly)
///   III(n)  symmetric n x n,               same formula (closes exactly)
///   IV(n)   C^n with x.y = sum x_i y_i,   {x,y,z} = (x.cy)z + (z.cy)x - (x.z)cy
///   V       Peirce 1/2 sub-triple of VI supported on the two off-diagonal
///           octonion slots of a rank-one idempotent (16-dimensional)
///   VI      complexified 3x3 octonion-Hermitian matrices with
///           {x,y,z} = (x o cy) o z + (z o cy) o x - (x o z) o cy
///   D       dim 1, {x,y,z} = 2 x cy z
/// where cy denotes complex conjugation in the second slot.
class Jts {
public:
    Family family() const { return family_; }
    int dim() const { return dim_; }
    int p() const { return p_; }
    int q() const { return q_; }
    int n() const { return n_; }
    const std::string& name() const { return name_; }

    VectorXcd triple(const VectorXcd& x, const VectorXcd& y, const VectorXcd& z) const;

    /// D(x,y): z -> {x,y,z} as a dim x dim matrix.
    MatrixXcd d_op(const VectorXcd& x, const VectorXcd& y) const;

    /// Quadratic operator Q_x as a linear map on conjugated coordinates:
    /// Q_x(y) = {x,y,x} = q_op(x) * conj(y).
    MatrixXcd q_op(const VectorXcd& x) const;

    /// True iff x != 0 and Q_x(T) is contained in C*x up to the relative
    /// tolerance; these are exactly the directions on the minimal orbit cone.
    bool rank1_test(const VectorXcd& x, double tol = 1e-8) const;

    Tripotent minimal_tripotent() const;

    /// Matrix model of a coordinate vector (families I, II, III only).
    MatrixXcd model_matrix(const VectorXcd& coords) const;

    /// Coordinates of a model matrix; throws ModelViolationError if the
    /// matrix is not in the family subspace within 1e-10 (relative).
    VectorXcd coords_of_model(const MatrixXcd& m) const;

    friend Jts make_jts(const std::string& spec);

private:
    Jts() = default;
    void check_dim(const VectorXcd& v) const;

    Family family_ = Family::Disc;
    int p_ = 0, q_ = 0, n_ = 0;
    int dim_ = 1;
    std::string name_ = "D";
};

/// Parse a family spec string: "I(p,q)", "II(n)", "III(n)", "IV(n)", "V",
/// "VI", "D". Throws ParseError on malformed input or parameters outside the
/// model's range (I: p,q >= 1; II: n >= 2; III: n >= 1; IV: n >= 3).
Jts make_jts(const std::string& spec);

} // namespace mok
