#pragma once

#include <string>
#include <vector>

#include "mok/jts.hpp"
#include "mok/operators.hpp"
#include "mok/rng.hpp"

namespace mok {

enum class SigmaConvention { DType, FormType, Projector };

enum class OffDiagMode { Zero, Identity };

/// A product of irreducible factors with prescribed off-diagonal scalars
/// s_ij (i != j); the diagonal of `offdiag` is unused. Every 1-dimensional
/// disc factor carries the identity on its T_i (x) T_i^dual.
struct ProductSpec {
    std::vector<Jts> factors;
    MatrixXcd offdiag;

    BlockSpace space() const;
    int blocks() const { return static_cast<int>(factors.size()); }
    std::string name() const;
};

/// Parse "I(2,3)xIV(5)xD" (whitespace ignored) with uniform off-diagonal.
ProductSpec parse_product(const std::string& text, OffDiagMode mode);
ProductSpec parse_product(const std::string& text, const MatrixXcd& offdiag);

/// Curvature-type tensor of a single irreducible factor.
///   DType:    sigma(x (x) cy) = D(x,y), extended linearly
///   FormType: the other equivariant contraction of the same curvature form
///             R(x,y,z,w) = <{x,y,z}, w>: (sigma A)_{cd} = sum_{ab} A_{ab}
///             <{e_a, e_c, e_d}, e_b>
/// The disc returns the 1x1 identity under either convention. The projector
/// convention needs an explicit kernel subspace; see sigma_projector.
CurvatureTypeTensor sigma_from_jts(const Jts& j, SigmaConvention conv = SigmaConvention::DType);

/// Orthogonal projector onto the complement of span(kernel): sigma = I - P_K.
CurvatureTypeTensor sigma_projector(const BlockSpace& space, const std::vector<MatrixXcd>& kernel);

/// Product tensor: sigma_{(i,i),(i,i)} = sigma_from_jts(factor i),
/// sigma_{(i,j),(i,j)} = s_ij * Id for i != j, all cross blocks zero.
CurvatureTypeTensor assemble_product(const ProductSpec& spec,
                                     SigmaConvention conv = SigmaConvention::DType);

/// Holonomy action of one factor on its coordinates, Haar-ish sampled:
///   I(p,q): x -> U x V*          II/III(n): x -> U x U^T
///   IV(n):  x -> e^{i t} O x     V/VI: exp of a random triple derivation
///   D:      x -> e^{i t} x
/// Every sample is unitary and preserves the triple product exactly (up to
/// rounding for the exponentials).
MatrixXcd holonomy_action(const Jts& j, Rng& rng);

GroupElementSample holonomy_sample(const ProductSpec& spec, Rng& rng);
GroupElementSample holonomy_sample(const ProductSpec& spec, std::uint64_t seed);

enum class BlockClass { CrossZero, ScalarId, General };

struct BlockReport {
    int i, j, h, k;
    BlockClass cls;
    cd scalar;     // the c of SCALAR_ID blocks
    double defect; // distance from the classified shape
};

struct StructureReport {
    std::vector<BlockReport> blocks;
    bool lemma_ok; // GENERAL appears only at (i,i)->(i,i)
    MatrixXcd offdiag_scalars; // s_ij read back from the (i,j),(i,j) blocks

    const BlockReport& at(int i, int j, int h, int k) const;
};

/// Classify every four-index block as CROSS_ZERO (norm <= tol), SCALAR_ID
/// (square block with ||B - c Id|| <= tol), or GENERAL. Frobenius norms,
/// absolute tolerance.
StructureReport schur_structure(const CurvatureTypeTensor& sigma, double tol);

} // namespace mok
