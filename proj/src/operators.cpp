#include "mok/operators.hpp"

#include <Eigen/SVD>

#include <json.hpp>

namespace mok {

CurvatureTypeTensor::CurvatureTypeTensor(MatrixXcd o, BlockSpace s)
    : op(std::move(o)), space(std::move(s)) {
    const int n = space.total_dim();
    if (op.rows() != n * n || op.cols() != n * n)
        throw DimensionMismatchError("curvature tensor must be n^2 x n^2");
    if (op.norm() == 0.0) throw SpecError("curvature-type tensor must be nonzero");
}

MatrixXcd CurvatureTypeTensor::apply(const MatrixXcd& a) const {
    return unflatten(op * flatten(a));
}

double GroupElementSample::unitarity_defect() const {
    const auto n = matrix.rows();
    return (matrix.adjoint() * matrix - MatrixXcd::Identity(n, n)).norm();
}

int numerical_rank(const MatrixXcd& m, double rtol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) >= rtol * sv(0)) ++r;
    return r;
}

std::vector<EndTensor> kernel_basis(const CurvatureTypeTensor& sigma, double tol) {
    if (tol <= 0.0) throw SpecError("kernel_basis: tol must be positive");
    const auto n2 = sigma.op.rows();
    Eigen::BDCSVD<MatrixXcd> svd(sigma.op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<EndTensor> basis;
    for (Eigen::Index i = 0; i < n2; ++i) {
        const double s = i < sv.size() ? sv(i) : 0.0;
        if (s < tol * smax) basis.push_back(EndTensor{unflatten(svd.matrixV().col(i))});
    }
    return basis;
}

MatrixXcd block_component(const CurvatureTypeTensor& sigma, int i, int j, int h, int k) {
    const auto& sp = sigma.space;
    const int nb = sp.blocks();
    if (i < 0 || j < 0 || h < 0 || k < 0 || i >= nb || j >= nb || h >= nb || k >= nb)
        throw IndexOutOfRangeError("block_component: factor index out of range");
    const int n = sp.total_dim();
    MatrixXcd b(sp.dim(h) * sp.dim(k), sp.dim(i) * sp.dim(j));
    for (int a = 0; a < sp.dim(h); ++a)
        for (int c = 0; c < sp.dim(k); ++c) {
            const int row = (sp.offset(h) + a) * n + (sp.offset(k) + c);
            for (int u = 0; u < sp.dim(i); ++u)
                for (int v = 0; v < sp.dim(j); ++v) {
                    const int col = (sp.offset(i) + u) * n + (sp.offset(j) + v);
                    b(a * sp.dim(k) + c, u * sp.dim(j) + v) = sigma.op(row, col);
                }
        }
    return b;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatrixXcd ad_matrix(const MatrixXcd& g) {
    // flatten(g A g*) = (g kron conj(g)) flatten(A) under row-major flattening
    return kron(g, g.conjugate());
}

double invariance_residual(const CurvatureTypeTensor& sigma, const GroupElementSample& g) {
    if (!(g.space == sigma.space)) throw DimensionMismatchError("invariance_residual: space mismatch");
    MatrixXcd ad = ad_matrix(g.matrix);
    return (sigma.op * ad - ad * sigma.op).norm() / sigma.op.norm();
}

MatrixXcd group_average(const MatrixXcd& op, const std::vector<GroupElementSample>& samples) {
    if (samples.empty()) throw SpecError("group_average: need at least one sample");
    MatrixXcd acc = MatrixXcd::Zero(op.rows(), op.cols());
    for (const auto& g : samples) {
        MatrixXcd ad = ad_matrix(g.matrix);
        acc += ad.adjoint() * op * ad;
    }
    return acc / static_cast<double>(samples.size());
}

std::string serialize_operator(const CurvatureTypeTensor& sigma) {
    nlohmann::ordered_json j;
    j["n"] = sigma.n();
    j["blocks"] = sigma.space.dims();
    const auto n2 = sigma.op.rows();
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < n2; ++r) {
        nlohmann::ordered_json rr = nlohmann::ordered_json::array();
        nlohmann::ordered_json ri = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < n2; ++c) {
            rr.push_back(sigma.op(r, c).real());
            ri.push_back(sigma.op(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j.dump();
}

CurvatureTypeTensor deserialize_operator(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("operator JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("blocks") || !j.contains("re") || !j.contains("im"))
        throw ParseError("operator JSON: missing field");
    const int n = j["n"].get<int>();
    BlockSpace space(j["blocks"].get<std::vector<int>>());
    if (space.total_dim() != n) throw ParseError("operator JSON: blocks do not sum to n");
    MatrixXcd op(n * n, n * n);
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (static_cast<int>(re.size()) != n * n || static_cast<int>(im.size()) != n * n)
        throw ParseError("operator JSON: wrong array shape");
    for (int r = 0; r < n * n; ++r)
        for (int c = 0; c < n * n; ++c)
            op(r, c) = cd(re[r][c].get<double>(), im[r][c].get<double>());
    return CurvatureTypeTensor(std::move(op), std::move(space));
}

} // namespace mok
