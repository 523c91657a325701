#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace mok {

using cd = std::complex<double>;

/// Seeded random stream. All sampling in the library goes through this type,
/// so identical seeds give identical results on any platform (the gaussian
/// uses an explicit Box-Muller transform instead of std::normal_distribution).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform in [0,1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard real gaussian (Box-Muller).
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    cd cgaussian() { return cd(gaussian(), gaussian()) / std::sqrt(2.0); }

    Eigen::VectorXd gaussian_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = gaussian();
        return v;
    }

    Eigen::VectorXcd cgaussian_vector(int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = cgaussian();
        return v;
    }

    Eigen::MatrixXcd cgaussian_matrix(int rows, int cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) m(i, j) = cgaussian();
        return m;
    }

    Eigen::VectorXcd unit_vector(int n) {
        Eigen::VectorXcd v = cgaussian_vector(n);
        while (v.norm() < 1e-12) v = cgaussian_vector(n);
        return v / v.norm();
    }

    /// Haar-distributed unitary: QR of a complex Ginibre matrix with the
    /// phase correction that makes the distribution exactly invariant.
    Eigen::MatrixXcd haar_unitary(int n) {
        Eigen::MatrixXcd z = cgaussian_matrix(n, n);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
        Eigen::MatrixXcd q = qr.householderQ();
        Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < n; ++i) {
            cd d = r(i, i);
            double a = std::abs(d);
            q.col(i) *= (a > 0.0) ? d / a : cd(1.0, 0.0);
        }
        return q;
    }

    /// Haar-distributed special orthogonal matrix.
    Eigen::MatrixXd haar_so(int n) {
        Eigen::MatrixXd z(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) z(i, j) = gaussian();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
        Eigen::MatrixXd q = qr.householderQ();
        Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < n; ++i)
            if (r(i, i) < 0.0) q.col(i) = -q.col(i);
        if (q.determinant() < 0.0) q.col(n - 1) = -q.col(n - 1);
        return q;
    }

    /// Independent child stream; distinct tags give decorrelated streams.
    Rng fork(std::uint64_t tag) {
        std::uint64_t x = mix(gen_() ^ mix(tag));
        return Rng(x);
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
};

} // namespace mok
