#include "mok/curvature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mok {

BlockSpace ProductSpec::space() const {
    std::vector<int> dims;
    dims.reserve(factors.size());
    for (const auto& f : factors) dims.push_back(f.dim());
    return BlockSpace(dims);
}

std::string ProductSpec::name() const {
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += factors[i].name();
    }
    return out;
}

ProductSpec parse_product(const std::string& text, OffDiagMode mode) {
    std::vector<Jts> factors;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t sep = text.find('x', pos);
        std::string tok = text.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
        factors.push_back(make_jts(tok));
        if (sep == std::string::npos) break;
        pos = sep + 1;
    }
    const int k = static_cast<int>(factors.size());
    MatrixXcd s = mode == OffDiagMode::Zero ? MatrixXcd::Zero(k, k) : MatrixXcd::Ones(k, k);
    ProductSpec spec{std::move(factors), std::move(s)};
    return spec;
}

ProductSpec parse_product(const std::string& text, const MatrixXcd& offdiag) {
    ProductSpec spec = parse_product(text, OffDiagMode::Zero);
    const int k = spec.blocks();
    if (offdiag.rows() != k || offdiag.cols() != k)
        throw SpecError("off-diagonal matrix must be k x k for k factors");
    spec.offdiag = offdiag;
    return spec;
}

CurvatureTypeTensor sigma_from_jts(const Jts& j, SigmaConvention conv) {
    const int d = j.dim();
    BlockSpace space({d});
    if (j.family() == Family::Disc) {
        return CurvatureTypeTensor(MatrixXcd::Identity(1, 1), space);
    }
    MatrixXcd op(d * d, d * d);
    VectorXcd ea = VectorXcd::Zero(d), eb = VectorXcd::Zero(d);
    switch (conv) {
        case SigmaConvention::DType:
            for (int a = 0; a < d; ++a) {
                ea(a) = 1.0;
                for (int b = 0; b < d; ++b) {
                    eb(b) = 1.0;
                    op.col(a * d + b) = flatten(j.d_op(ea, eb));
                    eb(b) = 0.0;
                }
                ea(a) = 0.0;
            }
            break;
        case SigmaConvention::FormType:
            // (sigma A)_{cd} = sum_{ab} A_{ab} <{e_a, e_c, e_d}, e_b>; pairing
            // the covector leg of A against the triple is the slot assignment
            // that makes the contraction equivariant (the output of the naive
            // (sigma A)_{cd} = sum R_{abcd} A_{ab} transforms contravariantly)
            for (int a = 0; a < d; ++a) {
                ea(a) = 1.0;
                for (int c = 0; c < d; ++c) {
                    eb(c) = 1.0;
                    VectorXcd ed = VectorXcd::Zero(d);
                    for (int e = 0; e < d; ++e) {
                        ed(e) = 1.0;
                        VectorXcd t = j.triple(ea, eb, ed);
                        for (int b = 0; b < d; ++b) op(c * d + e, a * d + b) = t(b);
                        ed(e) = 0.0;
                    }
                    eb(c) = 0.0;
                }
                ea(a) = 0.0;
            }
            break;
        case SigmaConvention::Projector:
            throw UnsupportedConventionError(
                "projector convention needs an explicit kernel subspace; use sigma_projector");
    }
    return CurvatureTypeTensor(std::move(op), space);
}

CurvatureTypeTensor sigma_projector(const BlockSpace& space, const std::vector<MatrixXcd>& kernel) {
    const int n = space.total_dim();
    MatrixXcd id = MatrixXcd::Identity(n * n, n * n);
    if (kernel.empty()) return CurvatureTypeTensor(id, space);
    MatrixXcd cols(n * n, static_cast<Eigen::Index>(kernel.size()));
    for (size_t c = 0; c < kernel.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = flatten(kernel[c]);
    Eigen::BDCSVD<MatrixXcd> svd(cols, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    MatrixXcd p = MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (smax > 0.0 && sv(i) >= 1e-12 * smax) {
            p += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
        }
    // the constructor rejects sigma = 0 (kernel = everything)
    return CurvatureTypeTensor(id - p, space);
}

CurvatureTypeTensor assemble_product(const ProductSpec& spec, SigmaConvention conv) {
    const int k = spec.blocks();
    if (k < 1) throw SpecError("product needs at least one factor");
    if (spec.offdiag.rows() != k || spec.offdiag.cols() != k)
        throw SpecError("off-diagonal matrix must be k x k");
    BlockSpace space = spec.space();
    const int n = space.total_dim();
    MatrixXcd op = MatrixXcd::Zero(n * n, n * n);

    for (int i = 0; i < k; ++i) {
        CurvatureTypeTensor si = sigma_from_jts(spec.factors[i], conv);
        const int d = space.dim(i), off = space.offset(i);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c)
                    for (int e = 0; e < d; ++e)
                        op((off + a) * n + (off + b), (off + c) * n + (off + e)) =
                            si.op(a * d + b, c * d + e);
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const cd s = spec.offdiag(i, j);
            if (s == cd(0.0, 0.0)) continue;
            for (int a = 0; a < space.dim(i); ++a)
                for (int b = 0; b < space.dim(j); ++b) {
                    const int idx = (space.offset(i) + a) * n + (space.offset(j) + b);
                    op(idx, idx) = s;
                }
        }
    return CurvatureTypeTensor(std::move(op), space);
}

namespace {

MatrixXcd conjugation_action(const Jts& j, const MatrixXcd& u) {
    // coordinate matrix of x -> U model(x) U^T
    const int d = j.dim();
    MatrixXcd g(d, d);
    VectorXcd e = VectorXcd::Zero(d);
    for (int m = 0; m < d; ++m) {
        e(m) = 1.0;
        g.col(m) = j.coords_of_model(u * j.model_matrix(e) * u.transpose());
        e(m) = 0.0;
    }
    return g;
}

MatrixXcd derivation_exponential(const Jts& j, Rng& rng) {
    const int d = j.dim();
    MatrixXcd gen = MatrixXcd::Zero(d, d);
    for (int t = 0; t < 2; ++t) {
        VectorXcd u = rng.unit_vector(d);
        VectorXcd v = rng.unit_vector(d);
        const double a = 0.7 * rng.gaussian();
        gen += a * (j.d_op(u, v) - j.d_op(v, u));
    }
    VectorXcd w = rng.unit_vector(d);
    gen += cd(0.0, 0.7 * rng.gaussian()) * j.d_op(w, w);
    gen = 0.5 * (gen - gen.adjoint()).eval(); // exact anti-Hermitian
    // exp(gen) through the Hermitian eigendecomposition of i*gen
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(cd(0.0, 1.0) * gen);
    VectorXcd phases(d);
    for (int i = 0; i < d; ++i) phases(i) = std::exp(cd(0.0, -es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

MatrixXcd holonomy_action(const Jts& j, Rng& rng) {
    switch (j.family()) {
        case Family::I: {
            MatrixXcd u = rng.haar_unitary(j.p());
            MatrixXcd v = rng.haar_unitary(j.q());
            return kron(u, v.conjugate());
        }
        case Family::II:
        case Family::III:
            return conjugation_action(j, rng.haar_unitary(j.n()));
        case Family::IV: {
            const double theta = rng.uniform(0.0, 2.0 * M_PI);
            return std::exp(cd(0.0, theta)) * rng.haar_so(j.n()).cast<cd>();
        }
        case Family::V:
        case Family::VI:
            return derivation_exponential(j, rng);
        case Family::Disc: {
            MatrixXcd g(1, 1);
            g(0, 0) = std::exp(cd(0.0, rng.uniform(0.0, 2.0 * M_PI)));
            return g;
        }
    }
    throw UnsupportedConventionError("unreachable");
}

GroupElementSample holonomy_sample(const ProductSpec& spec, Rng& rng) {
    BlockSpace space = spec.space();
    MatrixXcd g = MatrixXcd::Zero(space.total_dim(), space.total_dim());
    for (int i = 0; i < spec.blocks(); ++i) {
        g.block(space.offset(i), space.offset(i), space.dim(i), space.dim(i)) =
            holonomy_action(spec.factors[i], rng);
    }
    return GroupElementSample{std::move(g), std::move(space)};
}

GroupElementSample holonomy_sample(const ProductSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    return holonomy_sample(spec, rng);
}

const BlockReport& StructureReport::at(int i, int j, int h, int k) const {
    for (const auto& b : blocks)
        if (b.i == i && b.j == j && b.h == h && b.k == k) return b;
    throw IndexOutOfRangeError("no such block in report");
}

StructureReport schur_structure(const CurvatureTypeTensor& sigma, double tol) {
    const auto& sp = sigma.space;
    const int k = sp.blocks();
    StructureReport rep;
    rep.lemma_ok = true;
    rep.offdiag_scalars = MatrixXcd::Zero(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int h = 0; h < k; ++h)
                for (int l = 0; l < k; ++l) {
                    MatrixXcd b = block_component(sigma, i, j, h, l);
                    BlockReport r{i, j, h, l, BlockClass::General, cd(0, 0), 0.0};
                    const double nb = b.norm();
                    if (nb <= tol) {
                        r.cls = BlockClass::CrossZero;
                        r.defect = nb;
                    } else if (b.rows() == b.cols()) {
                        const cd c = b.trace() / static_cast<double>(b.rows());
                        const double dev = (b - c * MatrixXcd::Identity(b.rows(), b.cols())).norm();
                        if (dev <= tol) {
                            r.cls = BlockClass::ScalarId;
                            r.scalar = c;
                            r.defect = dev;
                        } else {
                            r.defect = dev;
                        }
                    } else {
                        r.defect = nb;
                    }
                    if (r.cls == BlockClass::General && !(i == j && h == i && l == j)) rep.lemma_ok = false;
                    if (i != j && h == i && l == j && r.cls != BlockClass::General)
                        rep.offdiag_scalars(i, j) = r.cls == BlockClass::ScalarId ? r.scalar : cd(0, 0);
                    rep.blocks.push_back(std::move(r));
                }
    return rep;
}

} // namespace mok
