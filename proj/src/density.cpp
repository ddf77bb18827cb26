#include "d4lab/density.hpp"

#include <cmath>
#include <functional>

namespace d4lab {

namespace {
const double kPi = 3.14159265358979323846;

double sinc(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

// adaptive Simpson quadrature
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}
}  // namespace

double TestFunction::psi(double x) const {
  double s = sinc(kPi * sigma * x);
  return s * s;
}

double TestFunction::psi_hat(double u) const {
  return std::max(sigma - std::abs(u), 0.0) / (sigma * sigma);
}

double TestFunction::psi_hat_unit_integral() const {
  if (sigma <= 1.0) return 1.0;
  return (2.0 * sigma - 1.0) / (sigma * sigma);
}

TestFunction fejer(double sigma) {
  if (!(sigma > 0)) fail(Errc::InvalidInput, "fejer needs sigma > 0");
  return TestFunction{TFKind::Fejer, sigma};
}

double FreemanG::g(double x) const {
  double ax = std::abs(x);
  if (ax <= 1.0 - sigma_p) return std::cos((1.0 - sigma_p) / 2.0 + (kPi - 1.0) / 4.0) / gamma;
  if (ax <= sigma_p) return std::cos(ax / 2.0 + (kPi - 1.0) / 4.0) / gamma;
  return 0.0;
}

FreemanG freeman_g(double sigma_p) {
  if (!(sigma_p >= 0.5 && sigma_p <= 1.0))
    fail(Errc::InvalidInput, "freeman_g needs sigma' in [1/2, 1]");
  FreemanG r;
  r.sigma_p = sigma_p;
  r.gamma = sigma_p * std::cos((1.0 - sigma_p) / 2.0 + (kPi - 1.0) / 4.0) +
            2.0 * std::sqrt(2.0) * std::sin((1.0 - 2.0 * sigma_p) / 4.0);
  r.g0 = std::cos((1.0 - sigma_p) / 2.0 + (kPi - 1.0) / 4.0) / r.gamma;
  return r;
}

double fejer_periodized(double sigma, int N, double x) {
  // sum over k in Z of psi(N (x + k)) with psi the Fejer function: Poisson
  // gives the exact finite form (1/s)(1 + 2 sum_{1<=m<s} (1-m/s) cos(2 pi m x))
  // with s = sigma N.
  double s = sigma * N;
  double acc = 1.0;
  for (int m = 1; m < s; ++m) acc += 2.0 * (1.0 - m / s) * std::cos(2.0 * kPi * m * x);
  return acc / s;
}

double d_statistic(const LPolynomial& P, const TestFunction& psi) {
  if (P.N < 1) fail(Errc::InvalidInput, "d_statistic needs a nontrivial L-polynomial");
  int N = P.N;
  // coefficient side, exact c_m from power sums where stored
  double coefSide = psi.psi_hat(0.0);
  for (int m = 1; m < psi.sigma * N; ++m) {
    double cm;
    if (m <= int(P.s.size()))
      cm = double(P.s[m - 1]) / std::pow(double(P.q), m / 2.0);
    else
      cm = c_coefficient(P, m);
    coefSide += (2.0 / N) * psi.psi_hat(double(m) / N) * cm;
  }
  // zero side: exact lattice sum from the root angles
  double zeroSide = 0.0;
  for (double th : P.angles) zeroSide += fejer_periodized(psi.sigma, N, th / (2.0 * kPi));
  if (std::abs(zeroSide - coefSide) > 1e-8)
    fail(Errc::ExplicitFormulaViolation,
         "zero side and coefficient side of the explicit formula disagree");
  return coefSide;
}

FamilyAverage family_average(const std::vector<LPolynomial>& Ls, const TestFunction& psi,
                             double alpha, double beta) {
  if (Ls.empty()) fail(Errc::InvalidInput, "family_average needs a nonempty family");
  FamilyAverage r;
  r.size = Ls.size();
  double sum = 0.0;
  for (auto& P : Ls) sum += d_statistic(P, psi);
  r.mean = sum / double(Ls.size());
  r.prediction = psi.psi_hat(0.0) - 0.5 * psi.psi_hat_unit_integral();
  r.discrepancy = r.mean - r.prediction;
  r.support_ok = psi.sigma < 2.0 - 3.0 * std::min(1.0 - alpha, beta);
  return r;
}

double nonvanish_bound(const TestFunction& psi) {
  double p0 = psi.psi(0.0);
  if (!(p0 > 0)) fail(Errc::InvalidInput, "nonvanish_bound needs psi(0) > 0");
  return (psi.psi_hat(0.0) - 0.5 * psi.psi_hat_unit_integral()) / (2.0 * p0);
}

double bound_for_sigma(TFKind kind, double sigma) {
  if (!(sigma > 0 && sigma <= 2.0 + 1e-12))
    fail(Errc::InvalidInput, "bound_for_sigma needs sigma in (0, 2]");
  if (kind == TFKind::Freeman && sigma > 1.0)
    return 1.0 / (4.0 * (freeman_g(sigma / 2.0).g0 - 1.0));
  if (sigma >= 1.0) return 1.0 / (4.0 * sigma * sigma);
  return 1.0 / (2.0 * sigma) - 0.25;
}

double integrated_bound(TFKind kind) {
  auto f = [&](double x) {
    double sig = std::max(2.0 - 3.0 * x, 2.0 - 3.0 * (1.0 - x));
    return bound_for_sigma(kind, sig);
  };
  const double knots[] = {0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += integrate(f, knots[i], knots[i + 1], 1e-13);
  return total;
}

NonvanishResult nonvanishing_proportion(const std::vector<LPolynomial>& Ls) {
  if (Ls.empty()) fail(Errc::InvalidInput, "nonvanishing_proportion needs a nonempty family");
  NonvanishResult r;
  r.total = Ls.size();
  for (auto& P : Ls) {
    int t = central_vanishing(P);
    ++r.histogram[t];
    if (t == 0) ++r.nonvanishing;
  }
  r.proportion = double(r.nonvanishing) / double(r.total);
  return r;
}

std::vector<QuadExperimentRow> quad_family_experiment(const QuadField& K, int r_min,
                                                      int r_max, const TestFunction& psi) {
  if (r_min < 1 || r_max < r_min) fail(Errc::InvalidInput, "bad r range");
  std::vector<QuadExperimentRow> rows;
  for (int r = r_min; r <= r_max; ++r) {
    QuadExperimentRow row;
    row.r = r;
    row.main_term = count_quad_ext_over(K, r).main_term;
    auto classes = enumerate_rel_quad_classes(K, 2 * r);
    std::vector<LPolynomial> Ls;
    for (auto& b : classes) {
      int N = 2 * K.genus - 2 + 2 * r;
      int depth = std::max(N, int(std::ceil(psi.sigma * N)));
      Ls.push_back(relative_lpoly(K, b, depth));
    }
    row.family_size = Ls.size();
    std::vector<LPolynomial> nontrivial;
    for (auto& P : Ls)
      if (P.N >= 1) nontrivial.push_back(P);
    if (!nontrivial.empty()) {
      FamilyAverage fa = family_average(nontrivial, psi);
      row.mean_D = fa.mean;
      row.prediction = fa.prediction;
      row.discrepancy = fa.discrepancy;
    }
    if (!Ls.empty()) row.nonvanishing = nonvanishing_proportion(Ls).proportion;
    row.prop12_constant = (19.0 - 1.0 / std::tan(0.25)) / 16.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace d4lab
