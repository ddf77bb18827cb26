// One-level density statistics: Fejér and Freeman-optimal test functions,
// the explicit-formula D statistic (coefficient side vs zero side), family
// averages against the symplectic prediction, and non-vanishing bounds.
#pragma once

#include "d4lab/d4family.hpp"

#include <map>

namespace d4lab {

enum class TFKind { Fejer, Freeman };

// Fejér test function with Fourier support [-sigma, sigma]:
// psi(y) = (sin(pi sigma y) / (pi sigma y))^2, psi_hat(u) = max(sigma-|u|,0)/sigma^2.
struct TestFunction {
  TFKind kind = TFKind::Fejer;
  double sigma = 1.0;  // support radius of psi_hat
  double psi(double x) const;
  double psi_hat(double u) const;
  // integral of psi_hat over [-1, 1]: 1 for sigma <= 1, (2 sigma - 1)/sigma^2 above
  double psi_hat_unit_integral() const;
};
TestFunction fejer(double sigma);

// Freeman's optimal kernel surrogate g_{sigma'} for support sigma = 2 sigma'
// in (1, 2]. Only g(0) and <1, g> = 2(g(0) - 1) are needed for bounds.
struct FreemanG {
  double sigma_p = 1.0;  // sigma' in [1/2, 1]
  double gamma = 0.0;
  double g0 = 0.0;
  double g(double x) const;  // three-branch piecewise form
  double inner_one() const { return 2.0 * (g0 - 1.0); }
};
FreemanG freeman_g(double sigma_p);

// Exact periodization of the Fejér kernel: sum over k in Z of
// psi(N (x + k)) as a finite cosine sum (Poisson closed form).
double fejer_periodized(double sigma, int N, double x);

// One-level density D(P; psi): coefficient side
//   psi_hat(0) + (2/N) sum_{1 <= m < sigma N} psi_hat(m/N) c_m
// with exact c_m from the stored power sums where available; the zero side
// (lattice sum over scaled zero angles) is computed independently from the
// root angles and both are asserted equal within 1e-8
// (ExplicitFormulaViolation otherwise). Returns the coefficient side.
double d_statistic(const LPolynomial& P, const TestFunction& psi);

struct FamilyAverage {
  std::size_t size = 0;
  double mean = 0.0;
  double prediction = 0.0;  // psi_hat(0) - (1/2) int_{-1}^{1} psi_hat
  double discrepancy = 0.0;
  bool support_ok = true;  // asymptotic support condition (recorded, not enforced)
};
FamilyAverage family_average(const std::vector<LPolynomial>& Ls, const TestFunction& psi,
                             double alpha = 0.0, double beta = 1.0);

// Proportion bound (1 / (2 psi(0))) (psi_hat(0) - (1/2) int psi_hat).
double nonvanish_bound(const TestFunction& psi);
// Closed-form bound as a function of the support sigma for the given kind.
double bound_for_sigma(TFKind kind, double sigma);
// int_0^1 bound(sigma(x)) dx with sigma(x) = max(2-3x, 2-3(1-x)), adaptive
// Simpson with panel splits at the kinks x = 1/3, 1/2, 2/3.
double integrated_bound(TFKind kind);

struct NonvanishResult {
  unsigned long long nonvanishing = 0;
  unsigned long long total = 0;
  double proportion = 0.0;                       // nonvanishing / total
  std::map<int, unsigned long long> histogram;   // central multiplicity -> count
};
NonvanishResult nonvanishing_proportion(const std::vector<LPolynomial>& Ls);

// Fixed-K experiment: quadratic extensions L of K with |Disc(L/K)| = q^{2r}.
struct QuadExperimentRow {
  int r = 0;
  std::size_t family_size = 0;
  double main_term = 0.0;
  double mean_D = 0.0;
  double prediction = 0.0;
  double discrepancy = 0.0;
  double nonvanishing = 0.0;
  double prop12_constant = 0.0;  // (19 - cot(1/4)) / 16
};
std::vector<QuadExperimentRow> quad_family_experiment(const QuadField& K, int r_min,
                                                      int r_max, const TestFunction& psi);

}  // namespace d4lab
