#include "mok/charvar.hpp"

#include <cmath>
#include <cstring>

#include <Eigen/SVD>

namespace mok {

namespace {

int rank_of(const MatrixXcd& m, double rtol) { return numerical_rank(m, rtol); }

// Jacobian of the 2x2-minor equations f_{b,ij}(v) = Q_v(y_b)_i v_j - Q_v(y_b)_j v_i
// at the point v, with `extra` trailing zero columns for join coordinates.
MatrixXcd minor_jacobian(const Jts& j, const VectorXcd& v, int extra) {
    const int d = j.dim();
    const int pairs = d * (d - 1) / 2;
    MatrixXcd jac = MatrixXcd::Zero(static_cast<Eigen::Index>(d) * pairs, d + extra);
    VectorXcd eb = VectorXcd::Zero(d);
    Eigen::Index row = 0;
    for (int b = 0; b < d; ++b) {
        eb(b) = 1.0;
        MatrixXcd mb = 2.0 * j.d_op(v, eb);
        VectorXcd qb = j.triple(v, eb, v);
        eb(b) = 0.0;
        for (int i = 0; i < d; ++i)
            for (int k = i + 1; k < d; ++k) {
                Eigen::RowVectorXcd r = v(k) * mb.row(i) - v(i) * mb.row(k);
                r(k) += qb(i);
                r(i) -= qb(k);
                jac.block(row, 0, 1, d) = r;
                ++row;
            }
    }
    return jac;
}

} // namespace

bool first_cone_contains(const CurvatureTypeTensor& sigma, const VectorXcd& x, double tol) {
    const int n = sigma.n();
    if (x.size() != n) throw DimensionMismatchError("first_cone_contains: wrong dimension");
    const double nx = x.norm();
    if (nx == 0.0) throw ZeroInputError("first_cone_contains: x = 0");
    VectorXcd xh = x / nx;
    MatrixXcd lx(n * n, n);
    VectorXcd eb = VectorXcd::Zero(n);
    for (int b = 0; b < n; ++b) {
        eb(b) = 1.0;
        lx.col(b) = sigma.op * flatten(xh * eb.transpose());
        eb(b) = 0.0;
    }
    Eigen::JacobiSVD<MatrixXcd> svd(lx);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 1e-14 * sigma.op.norm()) return true; // sigma kills x (x) everything
    return sv(sv.size() - 1) <= tol * sv(0);
}

ConeDimDetail cone_dimension_rank1_detail(const Jts& j, double tol_jac) {
    const int d = j.dim();
    Tripotent e = j.minimal_tripotent();
    if (!j.rank1_test(e.coords)) throw WitnessNotRankOneError(j.name() + ": tripotent fails rank-1 test");

    // Orbit-tangent span at e.
    MatrixXcd span(d, 1 + d * d);
    span.col(0) = e.coords;
    VectorXcd ea = VectorXcd::Zero(d), eb = VectorXcd::Zero(d);
    int col = 1;
    for (int a = 0; a < d; ++a) {
        ea(a) = 1.0;
        for (int b = 0; b < d; ++b) {
            eb(b) = 1.0;
            span.col(col++) = j.triple(ea, eb, e.coords);
            eb(b) = 0.0;
        }
        ea(a) = 0.0;
    }
    const int span_dim = rank_of(span, tol_jac);

    const int jac_rank = rank_of(minor_jacobian(j, e.coords, 0), tol_jac);
    const int jac_dim = d - jac_rank;
    if (span_dim != jac_dim)
        throw Error(j.name() + ": cone dimension methods disagree (span " + std::to_string(span_dim) +
                    ", jacobian " + std::to_string(jac_dim) + ")");
    return ConeDimDetail{span_dim, span_dim, jac_rank};
}

int cone_dimension_rank1(const Jts& j, double tol_jac) {
    return cone_dimension_rank1_detail(j, tol_jac).affine_dim;
}

std::vector<CharacteristicCone> decompose_components(const CurvatureTypeTensor& sigma,
                                                     const ProductSpec& spec, Rng& rng,
                                                     const DecomposeOptions& opt) {
    const BlockSpace space = spec.space();
    if (!(space == sigma.space)) throw DimensionMismatchError("decompose: spec does not match operator");
    const int k = space.blocks();

    StructureReport rep = schur_structure(sigma, opt.structure_tol);
    for (const auto& b : rep.blocks) {
        const bool diagonal_position = (b.h == b.i && b.k == b.j);
        if (!diagonal_position && b.cls != BlockClass::CrossZero)
            throw StructureError("cross block (" + std::to_string(b.i) + "," + std::to_string(b.j) +
                                 ")->(" + std::to_string(b.h) + "," + std::to_string(b.k) +
                                 ") is not zero");
        if (diagonal_position && b.i != b.j && b.cls == BlockClass::General)
            throw StructureError("off-diagonal block is not a multiple of the identity");
    }

    std::vector<CharacteristicCone> comps;
    for (int jfac = 0; jfac < k; ++jfac) {
        CharacteristicCone c;
        c.component_index = jfac;
        c.flags.assign(k, BlockFlag::Full);
        for (int i = 0; i < k; ++i) {
            if (i == jfac) continue;
            c.flags[i] = std::abs(rep.offdiag_scalars(i, jfac)) <= opt.structure_tol ? BlockFlag::Full
                                                                                     : BlockFlag::Zero;
        }
        // The factor's own flag: CONE unless sigma_j is invertible.
        MatrixXcd diag = block_component(sigma, jfac, jfac, jfac, jfac);
        const bool invertible =
            rank_of(diag, opt.tol_rank) == static_cast<int>(diag.rows()) && diag.norm() > 0.0;
        c.flags[jfac] = invertible ? BlockFlag::Zero : BlockFlag::Cone;

        int dim = 0;
        for (int i = 0; i < k; ++i)
            if (i != jfac && c.flags[i] == BlockFlag::Full) dim += space.dim(i);
        if (c.flags[jfac] == BlockFlag::Cone) dim += cone_dimension_rank1(spec.factors[jfac], opt.tol_jac);
        c.affine_dim = dim;

        Tripotent trip = spec.factors[jfac].minimal_tripotent();
        for (int w = 0; w < opt.witnesses; ++w) {
            VectorXcd x = VectorXcd::Zero(space.total_dim());
            if (c.flags[jfac] == BlockFlag::Cone) {
                MatrixXcd g = holonomy_action(spec.factors[jfac], rng);
                cd lambda = (0.25 + rng.uniform()) * std::exp(cd(0.0, rng.uniform(0.0, 2.0 * M_PI)));
                x += space.embed(lambda * (g * trip.coords), jfac);
            }
            for (int i = 0; i < k; ++i)
                if (i != jfac && c.flags[i] == BlockFlag::Full)
                    x += space.embed(rng.cgaussian_vector(space.dim(i)), i);
            if (x.norm() == 0.0) continue; // degenerate component {0}
            if (!first_cone_contains(sigma, x, opt.tol_rank))
                throw StructureError("decompose: witness failed first-cone membership");
            c.witnesses.push_back(std::move(x));
        }
        comps.push_back(std::move(c));
    }
    return comps;
}

bool irredundancy_check(const std::vector<CharacteristicCone>& components, const BlockSpace& space) {
    for (const auto& c : components) {
        const int j = c.component_index;
        if (c.flags[j] == BlockFlag::Full) return false; // CS_j = T_j
        int full_dim = 0;
        for (int i = 0; i < space.blocks(); ++i)
            if (i != j && c.flags[i] == BlockFlag::Full) full_dim += space.dim(i);
        const int cone_dim = c.affine_dim - full_dim;
        if (cone_dim >= space.dim(j)) return false;
    }
    return true;
}

std::vector<VectorXcd> max_translation_subspace(const CharacteristicCone& component,
                                                const BlockSpace& space,
                                                const std::function<bool(const VectorXcd&)>& member,
                                                Rng& rng, int inside_samples, int outside_directions) {
    const int k = space.blocks();
    std::vector<int> inside, outside;
    for (int i = 0; i < k; ++i)
        (component.flags[i] == BlockFlag::Full ? inside : outside).push_back(i);

    std::vector<VectorXcd> basis;
    for (int i : inside)
        for (int a = 0; a < space.dim(i); ++a) {
            VectorXcd v = VectorXcd::Zero(space.total_dim());
            v(space.offset(i) + a) = 1.0;
            basis.push_back(std::move(v));
        }

    auto random_in = [&](const std::vector<int>& blocks) {
        VectorXcd v = VectorXcd::Zero(space.total_dim());
        for (int i : blocks) v += space.embed(rng.cgaussian_vector(space.dim(i)), i);
        return v;
    };

    if (component.witnesses.empty()) {
        if (basis.empty()) return basis; // the cone is {0}; only the zero translation
        throw InconclusiveSampleError("translation subspace: no witnesses to verify against");
    }

    if (!inside.empty()) {
        for (int t = 0; t < inside_samples; ++t) {
            const auto& w = component.witnesses[t % component.witnesses.size()];
            cd lambda = (0.25 + rng.uniform()) * std::exp(cd(0.0, rng.uniform(0.0, 2.0 * M_PI)));
            VectorXcd x = lambda * w + random_in(inside);
            if (!member(x))
                throw InconclusiveSampleError("translation subspace: candidate translate left the cone");
        }
    }
    for (int t = 0; t < outside_directions && !outside.empty(); ++t) {
        VectorXcd dir = random_in(outside);
        bool refuted = false;
        for (int trial = 0; trial < 3 && !refuted; ++trial) {
            const auto& w = component.witnesses[(t + trial) % component.witnesses.size()];
            cd tau = (0.5 + rng.uniform()) * std::exp(cd(0.0, rng.uniform(0.0, 2.0 * M_PI)));
            if (!member(w + tau * dir)) refuted = true;
        }
        if (!refuted)
            throw InconclusiveSampleError("translation subspace: outside direction was never refuted");
    }
    return basis;
}

JoinProbeReport join_singularity_probe(const Jts& j, int m, Rng& rng, double tol_jac) {
    if (m < 0) throw SpecError("join probe: m must be >= 0");
    const int d = j.dim();
    JoinProbeReport rep{};
    rep.m = m;
    rep.n = d;
    rep.cone_affine_dim = cone_dimension_rank1(j, tol_jac);
    rep.equation_degree = 3;

    Tripotent e = j.minimal_tripotent();
    rep.rank_at_witness = rank_of(minor_jacobian(j, e.coords, m), tol_jac);
    rep.smooth_at_witness = rep.rank_at_witness == d - rep.cone_affine_dim;

    if (m >= 1) {
        // Any point (0, w): the equations only involve the cone coordinates,
        // and their gradients are quadratic, so they vanish at v = 0.
        (void)rng.cgaussian_vector(m); // w itself does not enter the Jacobian
        rep.rank_at_linear_part = rank_of(minor_jacobian(j, VectorXcd::Zero(d), m), tol_jac);
        rep.singular_at_linear_part = rep.rank_at_linear_part < rep.rank_at_witness;
    } else {
        rep.rank_at_linear_part = -1;
        rep.singular_at_linear_part = false;
    }
    return rep;
}

namespace {

MatrixXcd kernel_matrix_of(const CurvatureTypeTensor& sigma, double tol_rank) {
    auto basis = kernel_basis(sigma, tol_rank);
    const int n = sigma.n();
    MatrixXcd kmat(n * n, static_cast<Eigen::Index>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i) kmat.col(static_cast<Eigen::Index>(i)) = flatten(basis[i].mat);
    return kmat;
}

std::uint64_t point_tag(const VectorXcd& x) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a over the coordinate bytes
    auto mix = [&h](double v) {
        unsigned char b[sizeof v];
        std::memcpy(b, &v, sizeof v);
        for (unsigned char c : b) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        mix(x(i).real());
        mix(x(i).imag());
    }
    return h;
}

bool level_h_search(const MatrixXcd& kernel, int n, const VectorXcd& x, int h, int budget,
                    double tol) {
    const auto kdim = kernel.cols();
    if (kdim == 0) return false;
    const double nx = x.norm();
    if (nx == 0.0) throw ZeroInputError("level_h_member: x = 0");
    VectorXcd xh = x / nx;

    auto proj_kernel = [&](const MatrixXcd& a) -> MatrixXcd {
        return unflatten(kernel * (kernel.adjoint() * flatten(a)));
    };
    auto proj_rank = [&](const MatrixXcd& a, int hp) -> MatrixXcd {
        Eigen::RowVectorXcd w = xh.adjoint() * a;
        MatrixXcd rest = a - xh * w;
        if (w.norm() <= 1e-12 * std::max(1.0, a.norm())) {
            Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeThinV);
            w = 1e-6 * std::max(1.0, a.norm()) * svd.matrixV().col(0).adjoint();
        }
        MatrixXcd trunc = MatrixXcd::Zero(n, n);
        if (hp > 1) {
            Eigen::JacobiSVD<MatrixXcd> svd(rest, Eigen::ComputeThinU | Eigen::ComputeThinV);
            for (int i = 0; i < hp - 1 && i < svd.singularValues().size(); ++i)
                trunc += svd.singularValues()(i) * svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
        }
        return xh * w + trunc;
    };
    auto certify = [&](const MatrixXcd& a, int hp) -> bool {
        if (a.norm() <= 1e-12) return false;
        Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        if (hp < n && sv(hp) > tol * sv(0)) return false;
        int r = 0;
        while (r < sv.size() && sv(r) >= tol * sv(0)) ++r;
        MatrixXcd u = svd.matrixU().leftCols(r);
        if ((xh - u * (u.adjoint() * xh)).norm() > 1e-6) return false;
        return true;
    };

    constexpr int kRestarts = 3;
    const std::uint64_t tag = point_tag(xh);
    for (int hp = 1; hp <= std::min(h, n); ++hp) {
        for (int restart = 0; restart < kRestarts; ++restart) {
            Rng rng(tag ^ (0x9e3779b97f4a7c15ULL * (64 * hp + restart + 1)));
            MatrixXcd a = unflatten(kernel * rng.cgaussian_vector(static_cast<int>(kdim)));
            a += xh * rng.cgaussian_vector(n).adjoint();
            a = proj_kernel(a);
            for (int it = 0; it < budget; ++it) {
                MatrixXcd b = proj_rank(a, hp);
                MatrixXcd a2 = proj_kernel(b);
                const double gap = (b - a2).norm() / std::max(b.norm(), 1e-300);
                a = std::move(a2);
                if (gap <= tol) break;
            }
            if (certify(a, hp)) return true;
        }
    }
    return false;
}

} // namespace

bool level_h_member(const CurvatureTypeTensor& sigma, const VectorXcd& x, int h, int budget,
                    double tol) {
    if (h < 1) throw SpecError("level_h_member: h must be >= 1");
    MatrixXcd kernel = kernel_matrix_of(sigma, tol);
    return level_h_search(kernel, sigma.n(), x, h, budget, tol);
}

Filtration::Filtration(const CurvatureTypeTensor& sigma, double tol_rank)
    : n_(sigma.n()), kernel_(kernel_matrix_of(sigma, tol_rank)) {}

bool Filtration::member(const VectorXcd& x, int h, int budget, double tol) const {
    if (h < 1) throw SpecError("Filtration: h must be >= 1");
    return level_h_search(kernel_, n_, x, h, budget, tol);
}

KernelDesignReport kernel_design_experiment(const Jts& j, const std::vector<MatrixXcd>& kernel,
                                            int samples, Rng& rng, double tol_rank) {
    const int d = j.dim();
    BlockSpace space({d});
    CurvatureTypeTensor sigma = sigma_projector(space, kernel); // throws if kernel is everything
    KernelDesignReport rep{};
    rep.kernel_dim = d * d - numerical_rank(sigma.op, 1e-12);

    Tripotent e = j.minimal_tripotent();
    for (int t = 0; t < samples; ++t) {
        MatrixXcd g = holonomy_action(j, rng);
        cd lambda = (0.25 + rng.uniform()) * std::exp(cd(0.0, rng.uniform(0.0, 2.0 * M_PI)));
        VectorXcd pos = lambda * (g * e.coords);
        ++rep.positives;
        if (first_cone_contains(sigma, pos, tol_rank)) ++rep.positives_in_cone;

        VectorXcd neg = rng.cgaussian_vector(d);
        int guard = 0;
        while (j.rank1_test(neg) && guard++ < 32) neg = rng.cgaussian_vector(d);
        ++rep.negatives;
        if (first_cone_contains(sigma, neg, tol_rank)) ++rep.negatives_in_cone;
    }
    rep.matches_rank1_cone =
        rep.positives_in_cone == rep.positives && rep.negatives_in_cone == 0;
    return rep;
}

} // namespace mok
