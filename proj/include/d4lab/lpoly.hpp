// Integer L-polynomials: zeta numerators of quadratic fields K and relative
// L-polynomials of quadratic extensions L/K, recovered through Newton's
// identities in exact big-integer arithmetic, with functional-equation and
// Riemann-hypothesis checks, inverse-zero angles, and central vanishing.
#pragma once

#include "d4lab/quadfield.hpp"

#include <gmpxx.h>

namespace d4lab {

enum class LKind { ZetaNumerator, Relative };

struct LPolynomial {
  long long q = 0;
  LKind kind = LKind::ZetaNumerator;
  int N = 0;                    // degree
  std::vector<mpz_class> b;     // coefficients b[0..N], b[0] = 1
  std::vector<long long> s;     // inverse-root power sums used by Newton, s[m-1]
  std::vector<double> angles;   // zero angles theta_j, sorted, in (-pi, pi]
};

// Build a degree-N L-polynomial from integer inverse-root power sums
// s_1..s_N. Throws on a non-integral Newton step, a functional-equation
// violation (b_{N-i} != q^{N/2-i} b_i) or a Riemann-hypothesis violation
// (inverse zeros off |u| = q^{-1/2} beyond 1e-6 relative).
LPolynomial lpoly_from_power_sums(long long q, int N, LKind kind,
                                  const std::vector<long long>& s);

// Zeta numerator P_K of K: N = 2g, power sums S_m = q^m + 1 - N_m(K) where
// N_m counts places of K by degree.
LPolynomial zeta_numerator(const QuadField& K);

// Number of places of K of degree exactly d (over F_q).
unsigned long long qplace_count(const QuadField& K, int d);

// e_m = sum over places of K with degK | m of degK * chi(P^{m/degK}) where
// chi of a power is chi^power at unramified places and 0 at ramified ones.
long long e_coefficient(const QuadField& K, const QuadElement& beta, int m);

// Relative L-polynomial of L = K(sqrt(beta)) over K: degree N = 2g_K - 2 +
// delta, inverse-root power sums -e_m. e_depth (>= N) controls how many e_m
// are computed and stored (for explicit-formula tests beyond degree N).
LPolynomial relative_lpoly(const QuadField& K, const QuadElement& beta, int e_depth = -1);

// Dual pipeline for the same object: point counting on the double cover L
// (places of L of degree m via chi_rel), Newton for the zeta numerator P_L,
// then exact polynomial division by P_K. Must coincide with relative_lpoly.
LPolynomial double_cover_relative_lpoly(const QuadField& K, const QuadElement& beta);

// Zero angles from the companion matrix of the polynomial, Newton-polished;
// stored sorted in (-pi, pi]. Called automatically by the constructors.
std::vector<double> zero_angles(const std::vector<mpz_class>& coeffs, long long q);

// Order of vanishing at the central point: largest t with (1 - q u^2)^t | P,
// computed by exact division.
int central_vanishing(const LPolynomial& P);

// c_m = sum_j e^{i m theta_j} (real); from stored angles, cross-checked
// against -q^{-m/2} s-data when available (tolerance 1e-8).
double c_coefficient(const LPolynomial& P, int m);

// Number of effective divisors of K of degree l via the class-number
// formula (coefficients of P_K); exact.
mpz_class divisor_count(const QuadField& K, int l);
// Brute-force oracle: multiset count over enumerated places of K.
mpz_class divisor_count_oracle(const QuadField& K, int l);

}  // namespace d4lab
