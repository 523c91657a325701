#include "mok/jts.hpp"

#include <cmath>
#include <cctype>

#include <Eigen/SVD>

#include "mok/albert.hpp"

namespace mok {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Index of the pair (i,j), i<j, in lexicographic enumeration.
int pair_index(int i, int j, int n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

// Index of the pair (i,j), i<=j, in lexicographic enumeration.
int sym_index(int i, int j, int n) { return i * n - i * (i - 1) / 2 + (j - i); }

VectorXcd v_embed(const VectorXcd& v16) {
    VectorXcd c = VectorXcd::Zero(27);
    c.segment(3, 16) = v16;
    return c;
}

} // namespace

void Jts::check_dim(const VectorXcd& v) const {
    if (v.size() != dim_) throw DimensionMismatchError(name_ + ": expected dimension " + std::to_string(dim_));
}

MatrixXcd Jts::model_matrix(const VectorXcd& coords) const {
    check_dim(coords);
    switch (family_) {
        case Family::I: {
            MatrixXcd m(p_, q_);
            for (int a = 0; a < p_; ++a)
                for (int b = 0; b < q_; ++b) m(a, b) = coords(a * q_ + b);
            return m;
        }
        case Family::II: {
            MatrixXcd m = MatrixXcd::Zero(n_, n_);
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) {
                    cd c = coords(pair_index(i, j, n_)) / kSqrt2;
                    m(i, j) = c;
                    m(j, i) = -c;
                }
            return m;
        }
        case Family::III: {
            MatrixXcd m = MatrixXcd::Zero(n_, n_);
            for (int i = 0; i < n_; ++i)
                for (int j = i; j < n_; ++j) {
                    cd c = coords(sym_index(i, j, n_));
                    if (i == j) {
                        m(i, i) = c;
                    } else {
                        m(i, j) = c / kSqrt2;
                        m(j, i) = c / kSqrt2;
                    }
                }
            return m;
        }
        default:
            throw UnsupportedConventionError(name_ + ": no matrix model");
    }
}

VectorXcd Jts::coords_of_model(const MatrixXcd& m) const {
    const double scale = std::max(1.0, m.norm());
    switch (family_) {
        case Family::I: {
            if (m.rows() != p_ || m.cols() != q_)
                throw DimensionMismatchError(name_ + ": model must be " + std::to_string(p_) + "x" + std::to_string(q_));
            VectorXcd c(dim_);
            for (int a = 0; a < p_; ++a)
                for (int b = 0; b < q_; ++b) c(a * q_ + b) = m(a, b);
            return c;
        }
        case Family::II: {
            if (m.rows() != n_ || m.cols() != n_)
                throw DimensionMismatchError(name_ + ": model must be square of size " + std::to_string(n_));
            if ((m + m.transpose()).norm() > 1e-10 * scale)
                throw ModelViolationError(name_ + ": matrix is not skew-symmetric");
            VectorXcd c(dim_);
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) c(pair_index(i, j, n_)) = kSqrt2 * m(i, j);
            return c;
        }
        case Family::III: {
            if (m.rows() != n_ || m.cols() != n_)
                throw DimensionMismatchError(name_ + ": model must be square of size " + std::to_string(n_));
            if ((m - m.transpose()).norm() > 1e-10 * scale)
                throw ModelViolationError(name_ + ": matrix is not symmetric");
            VectorXcd c(dim_);
            for (int i = 0; i < n_; ++i)
                for (int j = i; j < n_; ++j)
                    c(sym_index(i, j, n_)) = (i == j) ? m(i, i) : kSqrt2 * m(i, j);
            return c;
        }
        default:
            throw UnsupportedConventionError(name_ + ": no matrix model");
    }
}

VectorXcd Jts::triple(const VectorXcd& x, const VectorXcd& y, const VectorXcd& z) const {
    check_dim(x);
    check_dim(y);
    check_dim(z);
    switch (family_) {
        case Family::I:
        case Family::II:
        case Family::III: {
            MatrixXcd mx = model_matrix(x);
            MatrixXcd my = model_matrix(y);
            MatrixXcd mz = model_matrix(z);
            MatrixXcd ys = my.adjoint();
            MatrixXcd t = mx * ys * mz + mz * ys * mx;
            // the formula preserves the skew/symmetric subspaces exactly,
            // so no validation pass is needed here
            switch (family_) {
                case Family::I: {
                    VectorXcd c(dim_);
                    for (int a = 0; a < p_; ++a)
                        for (int b = 0; b < q_; ++b) c(a * q_ + b) = t(a, b);
                    return c;
                }
                case Family::II: {
                    VectorXcd c(dim_);
                    for (int i = 0; i < n_; ++i)
                        for (int j = i + 1; j < n_; ++j) c(pair_index(i, j, n_)) = kSqrt2 * t(i, j);
                    return c;
                }
                default: {
                    VectorXcd c(dim_);
                    for (int i = 0; i < n_; ++i)
                        for (int j = i; j < n_; ++j)
                            c(sym_index(i, j, n_)) = (i == j) ? t(i, i) : kSqrt2 * t(i, j);
                    return c;
                }
            }
        }
        case Family::IV: {
            VectorXcd yc = y.conjugate();
            cd xy = x.transpose() * yc;
            cd zy = z.transpose() * yc;
            cd xz = x.transpose() * z;
            return xy * z + zy * x - xz * yc;
        }
        case Family::V: {
            VectorXcd t = albert_triple(v_embed(x), v_embed(y), v_embed(z));
            return t.segment(3, 16);
        }
        case Family::VI:
            return albert_triple(x, y, z);
        case Family::Disc: {
            VectorXcd out(1);
            out(0) = 2.0 * x(0) * std::conj(y(0)) * z(0);
            return out;
        }
    }
    throw UnsupportedConventionError("unreachable");
}

MatrixXcd Jts::d_op(const VectorXcd& x, const VectorXcd& y) const {
    MatrixXcd d(dim_, dim_);
    VectorXcd e = VectorXcd::Zero(dim_);
    for (int k = 0; k < dim_; ++k) {
        e(k) = 1.0;
        d.col(k) = triple(x, y, e);
        e(k) = 0.0;
    }
    return d;
}

MatrixXcd Jts::q_op(const VectorXcd& x) const {
    MatrixXcd qm(dim_, dim_);
    VectorXcd e = VectorXcd::Zero(dim_);
    for (int k = 0; k < dim_; ++k) {
        e(k) = 1.0;
        qm.col(k) = triple(x, e, x);
        e(k) = 0.0;
    }
    return qm;
}

bool Jts::rank1_test(const VectorXcd& x, double tol) const {
    check_dim(x);
    const double nx = x.norm();
    if (nx == 0.0) return false;
    VectorXcd xh = x / nx;
    MatrixXcd qm = q_op(xh);
    Eigen::JacobiSVD<MatrixXcd> full(qm);
    const double qmax = full.singularValues()(0);
    if (qmax == 0.0) return true;
    MatrixXcd off = qm - xh * (xh.adjoint() * qm);
    Eigen::JacobiSVD<MatrixXcd> rest(off);
    return rest.singularValues()(0) <= tol * qmax;
}

Tripotent Jts::minimal_tripotent() const {
    VectorXcd e = VectorXcd::Zero(dim_);
    switch (family_) {
        case Family::I:
        case Family::III:
            e(0) = 1.0; // E_11
            return {e, 2.0};
        case Family::II:
            e(0) = kSqrt2; // E_12 - E_21
            return {e, 2.0};
        case Family::IV:
            e(0) = 1.0 / kSqrt2;
            e(1) = cd(0.0, 1.0 / kSqrt2); // on the null cone
            return {e, 2.0};
        case Family::V:
            // isotropic octonion in the first off-diagonal slot; octonion
            // units themselves split as a difference of two idempotents and
            // have rank 2
            e(0) = 1.0 / kSqrt2;
            e(1) = cd(0.0, 1.0 / kSqrt2);
            return {e, 1.0};
        case Family::VI:
            e(0) = 1.0; // diag(1,0,0)
            return {e, 1.0};
        case Family::Disc:
            e(0) = 1.0;
            return {e, 2.0};
    }
    throw UnsupportedConventionError("unreachable");
}

Jts make_jts(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

    auto args = [&s](size_t tag_len) {
        if (s.size() <= tag_len || s[tag_len] != '(' || s.back() != ')')
            throw ParseError("malformed family spec: " + s);
        std::string inner = s.substr(tag_len + 1, s.size() - tag_len - 2);
        std::vector<int> out;
        size_t pos = 0;
        while (pos <= inner.size()) {
            size_t comma = inner.find(',', pos);
            std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("malformed family parameter in: " + s);
            out.push_back(std::stoi(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    };

    Jts j;
    if (s == "D") {
        j.family_ = Family::Disc;
        j.dim_ = 1;
        j.name_ = "D";
        return j;
    }
    if (s == "V") {
        j.family_ = Family::V;
        j.dim_ = 16;
        j.name_ = "V";
        return j;
    }
    if (s == "VI") {
        j.family_ = Family::VI;
        j.dim_ = 27;
        j.name_ = "VI";
        return j;
    }
    if (s.rfind("IV", 0) == 0) {
        auto a = args(2);
        if (a.size() != 1 || a[0] < 3) throw ParseError("IV(n) needs a single n >= 3: " + s);
        j.family_ = Family::IV;
        j.n_ = a[0];
        j.dim_ = a[0];
        j.name_ = "IV(" + std::to_string(a[0]) + ")";
        return j;
    }
    if (s.rfind("III", 0) == 0) {
        auto a = args(3);
        if (a.size() != 1 || a[0] < 1) throw ParseError("III(n) needs a single n >= 1: " + s);
        j.family_ = Family::III;
        j.n_ = a[0];
        j.dim_ = a[0] * (a[0] + 1) / 2;
        j.name_ = "III(" + std::to_string(a[0]) + ")";
        return j;
    }
    if (s.rfind("II", 0) == 0) {
        auto a = args(2);
        if (a.size() != 1 || a[0] < 2) throw ParseError("II(n) needs a single n >= 2: " + s);
        j.family_ = Family::II;
        j.n_ = a[0];
        j.dim_ = a[0] * (a[0] - 1) / 2;
        j.name_ = "II(" + std::to_string(a[0]) + ")";
        return j;
    }
    if (s.rfind("I", 0) == 0) {
        auto a = args(1);
        if (a.size() != 2 || a[0] < 1 || a[1] < 1) throw ParseError("I(p,q) needs two parameters >= 1: " + s);
        j.family_ = Family::I;
        j.p_ = a[0];
        j.q_ = a[1];
        j.dim_ = a[0] * a[1];
        j.name_ = "I(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + ")";
        return j;
    }
    throw ParseError("unknown family: " + s);
}

} // namespace mok
