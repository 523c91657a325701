#pragma once

#include <array>
#include <complex>

namespace mok {

/// Real octonion over the basis (1, e1, ..., e7).
///
/// Multiplication is fixed by the seven oriented Fano-plane lines
///
///     (1,2,3) (1,4,5) (1,7,6) (2,4,6) (2,5,7) (3,4,7) (3,6,5)
///
/// read cyclically: for a line (a,b,c), ea*eb = ec, eb*ec = ea, ec*ea = eb,
/// products anticommute across a line, and ei*ei = -1. This is the table of
/// the Cayley-Dickson doubling of the quaternions with e4 as doubling unit:
/// 1=(1,0), e1=(i,0), e2=(j,0), e3=(k,0), e4=(0,1), e5=(0,i), e6=(0,j),
/// e7=(0,k). Any other orientation convention differs by a basis change.
struct Octonion {
    std::array<double, 8> c{};
};

/// Basis product: e_i * e_j = sign * e_k. Returns {sign, k}; indices 0..7
/// with index 0 the real unit.
std::pair<int, int> oct_basis_mul(int i, int j);

Octonion oct_mul(const Octonion& a, const Octonion& b);
Octonion oct_conj(const Octonion& a);
Octonion oct_add(const Octonion& a, const Octonion& b);
Octonion oct_scale(double s, const Octonion& a);
double oct_norm(const Octonion& a);

/// Complexified octonion (bioctonion): the same table extended bilinearly
/// over complex coefficients.
using Bioct = std::array<std::complex<double>, 8>;

Bioct bio_mul(const Bioct& a, const Bioct& b);
Bioct bio_conj(const Bioct& a); // octonion conjugation, complex-linear
Bioct bio_add(const Bioct& a, const Bioct& b);
Bioct bio_sub(const Bioct& a, const Bioct& b);
Bioct bio_scale(std::complex<double> s, const Bioct& a);
Bioct bio_cconj(const Bioct& a); // complex conjugation of coefficients
double bio_norm(const Bioct& a);
Bioct bio_zero();
Bioct bio_unit(int k); // e_k

} // namespace mok
