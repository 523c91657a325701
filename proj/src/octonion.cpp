#include "mok/octonion.hpp"

#include <cmath>

namespace mok {

namespace {

constexpr std::array<std::array<int, 3>, 7> kLines{{
    {1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5},
}};

struct MulTable {
    int sign[8][8];
    int index[8][8];
};

MulTable build_table() {
    MulTable t{};
    for (int j = 0; j < 8; ++j) {
        t.sign[0][j] = 1;
        t.index[0][j] = j;
        t.sign[j][0] = 1;
        t.index[j][0] = j;
    }
    for (int i = 1; i < 8; ++i) {
        t.sign[i][i] = -1;
        t.index[i][i] = 0;
    }
    for (const auto& l : kLines) {
        const int a = l[0], b = l[1], c = l[2];
        auto set = [&t](int x, int y, int z) {
            t.sign[x][y] = 1;
            t.index[x][y] = z;
            t.sign[y][x] = -1;
            t.index[y][x] = z;
        };
        set(a, b, c);
        set(b, c, a);
        set(c, a, b);
    }
    return t;
}

const MulTable kTable = build_table();

} // namespace

std::pair<int, int> oct_basis_mul(int i, int j) {
    return {kTable.sign[i][j], kTable.index[i][j]};
}

Octonion oct_mul(const Octonion& a, const Octonion& b) {
    Octonion out{};
    for (int i = 0; i < 8; ++i) {
        if (a.c[i] == 0.0) continue;
        for (int j = 0; j < 8; ++j) {
            out.c[kTable.index[i][j]] += kTable.sign[i][j] * a.c[i] * b.c[j];
        }
    }
    return out;
}

Octonion oct_conj(const Octonion& a) {
    Octonion out = a;
    for (int i = 1; i < 8; ++i) out.c[i] = -out.c[i];
    return out;
}

Octonion oct_add(const Octonion& a, const Octonion& b) {
    Octonion out;
    for (int i = 0; i < 8; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
}

Octonion oct_scale(double s, const Octonion& a) {
    Octonion out;
    for (int i = 0; i < 8; ++i) out.c[i] = s * a.c[i];
    return out;
}

double oct_norm(const Octonion& a) {
    double s = 0.0;
    for (double x : a.c) s += x * x;
    return std::sqrt(s);
}

Bioct bio_mul(const Bioct& a, const Bioct& b) {
    Bioct out = bio_zero();
    for (int i = 0; i < 8; ++i) {
        if (a[i] == std::complex<double>(0.0, 0.0)) continue;
        for (int j = 0; j < 8; ++j) {
            out[kTable.index[i][j]] += static_cast<double>(kTable.sign[i][j]) * a[i] * b[j];
        }
    }
    return out;
}

Bioct bio_conj(const Bioct& a) {
    Bioct out = a;
    for (int i = 1; i < 8; ++i) out[i] = -out[i];
    return out;
}

Bioct bio_add(const Bioct& a, const Bioct& b) {
    Bioct out;
    for (int i = 0; i < 8; ++i) out[i] = a[i] + b[i];
    return out;
}

Bioct bio_sub(const Bioct& a, const Bioct& b) {
    Bioct out;
    for (int i = 0; i < 8; ++i) out[i] = a[i] - b[i];
    return out;
}

Bioct bio_scale(std::complex<double> s, const Bioct& a) {
    Bioct out;
    for (int i = 0; i < 8; ++i) out[i] = s * a[i];
    return out;
}

Bioct bio_cconj(const Bioct& a) {
    Bioct out;
    for (int i = 0; i < 8; ++i) out[i] = std::conj(a[i]);
    return out;
}

double bio_norm(const Bioct& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
}

Bioct bio_zero() { return Bioct{}; }

Bioct bio_unit(int k) {
    Bioct out{};
    out[k] = 1.0;
    return out;
}

} // namespace mok
