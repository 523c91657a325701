#pragma once

#include <functional>
#include <vector>

#include "mok/curvature.hpp"

namespace mok {

enum class BlockFlag { Full, Zero, Cone };

/// One irreducible component CS(j) of the first characteristic cone of a
/// product tensor: per-factor flags, sampled witness points, and the affine
/// dimension Sum_FULL n_i + dim(cone factor). The cone factor dimension is
/// that of the rank-1 (first Mok) cone of the factor.
struct CharacteristicCone {
    std::vector<BlockFlag> flags;
    std::vector<VectorXcd> witnesses;
    int affine_dim = 0;
    int component_index = 0;
};

/// x is in the first characteristic cone iff the map t-dual -> sigma(x (x) t-dual)
/// has a relative singular-value drop below tol: some nonzero covector pairs
/// with x into ker(sigma). Scale-invariant in x. Throws ZeroInputError on x = 0.
bool first_cone_contains(const CurvatureTypeTensor& sigma, const VectorXcd& x, double tol = 1e-8);

struct ConeDimDetail {
    int affine_dim;
    int span_dim;      // orbit-tangent span at the minimal tripotent
    int jacobian_rank; // rank of the 2x2-minor equations' Jacobian there
};

/// Affine dimension of the Jordan rank-1 cone, measured two independent ways
/// at the minimal tripotent e: the span of {e} u {D(b_a, b_b) e} and
/// dim - rank of the Jacobian of the 2x2 minors of [Q_x(y) | x]. The two
/// must agree; disagreement throws. Projective dimension is affine - 1.
int cone_dimension_rank1(const Jts& j, double tol_jac = 1e-6);
ConeDimDetail cone_dimension_rank1_detail(const Jts& j, double tol_jac = 1e-6);

struct DecomposeOptions {
    double structure_tol = 1e-10;
    double tol_rank = 1e-8;
    double tol_jac = 1e-6;
    int witnesses = 5;
};

/// Split the first cone of a product tensor into its per-factor components
/// using the verified block structure: flag FULL at i iff s_ij = 0, ZERO at
/// i iff s_ij != 0, CONE at j itself (ZERO when sigma_j is invertible).
/// Witnesses are built on each component and validated with
/// first_cone_contains. Throws StructureError if the operator does not have
/// exact product block structure.
std::vector<CharacteristicCone> decompose_components(const CurvatureTypeTensor& sigma,
                                                     const ProductSpec& spec, Rng& rng,
                                                     const DecomposeOptions& opt = {});

/// Necessary and sufficient irredundancy condition: every component's cone
/// factor satisfies CS_j != T_j.
bool irredundancy_check(const std::vector<CharacteristicCone>& components, const BlockSpace& space);

/// The maximal subspace V with V + CS(j) inside CS(j): the span of the FULL
/// blocks, verified empirically through the membership oracle. Returns a
/// basis of coordinate vectors. Throws InconclusiveSampleError when the
/// verification fails or cannot refute an outside direction.
std::vector<VectorXcd> max_translation_subspace(const CharacteristicCone& component,
                                                const BlockSpace& space,
                                                const std::function<bool(const VectorXcd&)>& member,
                                                Rng& rng, int inside_samples = 100,
                                                int outside_directions = 20);

struct JoinProbeReport {
    int m;                  // dimension of the adjoined linear space W
    int n;                  // dim of the factor
    int cone_affine_dim;
    int rank_at_linear_part; // Jacobian rank at (0, w); -1 when m = 0
    int rank_at_witness;     // Jacobian rank at (e, 0)
    bool singular_at_linear_part;
    bool smooth_at_witness;
    int equation_degree;     // the minor equations are cubic
};

/// Probe the join of the rank-1 cone with an m-dimensional linear space: the
/// Jacobian of the defining equations drops rank at points of P(W), and is
/// full (= codimension) at the smooth witness.
JoinProbeReport join_singularity_probe(const Jts& j, int m, Rng& rng, double tol_jac = 1e-6);

/// One-sided numerical membership in the h-th characteristic variety:
/// alternating projections between ker(sigma) and the operators of rank <= h
/// whose column space retains x. True certifies membership (a kernel element
/// of rank <= h with x in its image was found and re-verified); false only
/// means the budget was exhausted. Deterministic: restart points are derived
/// from a hash of the inputs, and membership at h implies membership at h+1
/// by construction.
bool level_h_member(const CurvatureTypeTensor& sigma, const VectorXcd& x, int h, int budget,
                    double tol = 1e-8);

/// The nested membership oracles S^1 c S^2 c ... with a precomputed kernel.
class Filtration {
public:
    Filtration(const CurvatureTypeTensor& sigma, double tol_rank = 1e-8);

    bool member(const VectorXcd& x, int h, int budget, double tol = 1e-8) const;
    int kernel_dim() const { return static_cast<int>(kernel_.cols()); }
    const MatrixXcd& kernel_matrix() const { return kernel_; }

private:
    int n_;
    MatrixXcd kernel_; // n^2 x kdim, orthonormal columns
};

struct KernelDesignReport {
    int kernel_dim;
    int positives;          // rank-1 cone samples
    int positives_in_cone;  // of those, in the first cone of the designed sigma
    int negatives;
    int negatives_in_cone;
    bool matches_rank1_cone;
};

/// Build the projector-convention sigma with the given kernel and compare
/// its first cone against the Jordan rank-1 cone on sampled points.
KernelDesignReport kernel_design_experiment(const Jts& j, const std::vector<MatrixXcd>& kernel,
                                            int samples, Rng& rng, double tol_rank = 1e-8);

} // namespace mok
