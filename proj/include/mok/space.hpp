#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mok/errors.hpp"

namespace mok {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

/// Block-decomposed complex inner-product space T = T_1 + ... + T_k with the
/// standard Hermitian inner product in the fixed coordinate basis.
class BlockSpace {
public:
    explicit BlockSpace(std::vector<int> dims) : dims_(std::move(dims)) {
        total_ = 0;
        offsets_.reserve(dims_.size());
        for (int d : dims_) {
            if (d < 1) throw DimensionMismatchError("block dimensions must be >= 1");
            offsets_.push_back(total_);
            total_ += d;
        }
        if (dims_.empty()) throw DimensionMismatchError("block space needs at least one block");
    }

    int blocks() const { return static_cast<int>(dims_.size()); }
    int dim(int i) const { return dims_.at(i); }
    int offset(int i) const { return offsets_.at(i); }
    int total_dim() const { return total_; }
    const std::vector<int>& dims() const { return dims_; }

    /// Slice out the i-th block of a full coordinate vector.
    VectorXcd block_of(const VectorXcd& v, int i) const {
        if (v.size() != total_) throw DimensionMismatchError("vector does not live in this space");
        return v.segment(offset(i), dim(i));
    }

    /// Embed a factor vector at block i, zero elsewhere.
    VectorXcd embed(const VectorXcd& vi, int i) const {
        if (vi.size() != dim(i)) throw DimensionMismatchError("factor vector has wrong dimension");
        VectorXcd v = VectorXcd::Zero(total_);
        v.segment(offset(i), dim(i)) = vi;
        return v;
    }

    bool operator==(const BlockSpace& o) const { return dims_ == o.dims_; }

private:
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int total_ = 0;
};

struct TangentVector {
    VectorXcd coords;
    BlockSpace space;
};

/// Coordinates of a covector in the dual basis. The metric dual of a tangent
/// vector carries the conjugated coordinates.
struct Covector {
    VectorXcd coords;
};

/// An element of T (x) T^dual, stored as the n x n matrix acting on T.
struct EndTensor {
    MatrixXcd mat;
};

/// Metric dual at the base point: coordinates are complex conjugated.
Covector dual(const TangentVector& t);
VectorXcd dual_coords(const VectorXcd& t);

/// Rank-1 tensor t (x) f with entries A[a][b] = t[a] * f[b].
EndTensor rank1(const TangentVector& t, const Covector& f);
MatrixXcd rank1_matrix(const VectorXcd& t, const VectorXcd& f);

/// Fixed row-major flattening: index of (a,b) is a*n + b, 0-based.
VectorXcd flatten(const MatrixXcd& a);
MatrixXcd unflatten(const VectorXcd& v);

} // namespace mok
