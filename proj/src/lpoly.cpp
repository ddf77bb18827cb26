#include "d4lab/lpoly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

namespace d4lab {

namespace {

void check_functional_equation(const std::vector<mpz_class>& b, long long q, int N) {
  if (N % 2 != 0) fail(Errc::InternalInconsistency, "L-polynomial degree must be even");
  for (int i = 0; i <= N / 2; ++i) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)q, (unsigned long)(N / 2 - i));
    if (b[N - i] != pw * b[i])
      fail(Errc::InternalInconsistency, "functional equation violated at i=" + std::to_string(i));
  }
}

}  // namespace

std::vector<double> zero_angles(const std::vector<mpz_class>& coeffs, long long q) {
  int N = int(coeffs.size()) - 1;
  std::vector<double> out;
  if (N <= 0) return out;
  // Rescale to w = u sqrt(q): Q(w) has all roots on the unit circle (RH).
  std::vector<double> Q(N + 1);
  double sq = std::sqrt(double(q));
  for (int i = 0; i <= N; ++i) Q[i] = coeffs[i].get_d() * std::pow(sq, double(N - i));
  // companion matrix of Q/Q_N
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (int i = 1; i < N; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < N; ++i) M(i, N - 1) = -Q[i] / Q[N];
  // real Schur can cycle on self-reciprocal companions (e.g. w^4 + 1);
  // fall back to the complex solver before giving up
  Eigen::VectorXcd eig;
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() == Eigen::Success) {
    eig = es.eigenvalues();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(M.cast<std::complex<double>>());
    if (ces.info() != Eigen::Success) fail(Errc::NumericalFailure, "eigenvalue solver failed");
    eig = ces.eigenvalues();
  }
  auto evalQ = [&](std::complex<double> w) {
    std::complex<double> v = 0;
    for (int i = N; i >= 0; --i) v = v * w + Q[i];
    return v;
  };
  auto evalQp = [&](std::complex<double> w) {
    std::complex<double> v = 0;
    for (int i = N; i >= 1; --i) v = v * w + double(i) * Q[i];
    return v;
  };
  for (int i = 0; i < N; ++i) {
    std::complex<double> w = eig(i);
    for (int it = 0; it < 8; ++it) {
      std::complex<double> dp = evalQp(w);
      if (std::abs(dp) < 1e-8) break;  // multiple root: keep eigenvalue estimate
      std::complex<double> step = evalQ(w) / dp;
      if (std::abs(step) > 0.5) break;
      w -= step;
    }
    if (std::abs(std::abs(w) - 1.0) > 1e-6)
      fail(Errc::NumericalFailure, "inverse zero off the critical circle (RH check)");
    w /= std::abs(w);
    double theta = -std::arg(w);  // inverse root angle: alpha = sqrt(q) e^{i theta} = sqrt(q)/w
    if (theta <= -M_PI + 1e-15) theta += 2 * M_PI;
    out.push_back(theta);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LPolynomial lpoly_from_power_sums(long long q, int N, LKind kind,
                                  const std::vector<long long>& s) {
  if (int(s.size()) < N) fail(Errc::InvalidInput, "not enough power sums");
  LPolynomial P;
  P.q = q;
  P.kind = kind;
  P.N = N;
  P.s = s;
  P.b.assign(N + 1, 0);
  P.b[0] = 1;
  for (int i = 1; i <= N; ++i) {
    mpz_class acc = 0;
    for (int m = 1; m <= i; ++m) acc += mpz_class((long)s[m - 1]) * P.b[i - m];
    acc = -acc;
    if (acc % i != 0)
      fail(Errc::InternalInconsistency, "Newton identity produced non-integer coefficient");
    P.b[i] = acc / i;
  }
  check_functional_equation(P.b, q, N);
  P.angles = zero_angles(P.b, q);
  return P;
}

unsigned long long qplace_count(const QuadField& K, int d) {
  if (d < 1) fail(Errc::InvalidInput, "place degree must be >= 1");
  unsigned long long a = 0;
  for (auto& P : monic_irreducibles(K.F, d)) {
    int s = residue_symbol(K.D, Place::finite_place(P));
    a += (s == 1) ? 2 : (s == 0 ? 1 : 0);
  }
  if (d % 2 == 0) {
    for (auto& P : monic_irreducibles(K.F, d / 2))
      if (residue_symbol(K.D, Place::finite_place(P)) == -1) ++a;
  }
  // infinite place
  int si = chi_base(K, Place::infinity(K.F));
  if (d == 1) a += (si == 1) ? 2 : (si == 0 ? 1 : 0);
  if (d == 2 && si == -1) ++a;
  return a;
}

LPolynomial zeta_numerator(const QuadField& K) {
  int N = 2 * K.genus;
  std::vector<long long> s(N);
  std::vector<unsigned long long> a(N + 1, 0);
  for (int d = 1; d <= N; ++d) a[d] = qplace_count(K, d);
  for (int m = 1; m <= N; ++m) {
    long long Nm = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) Nm += (long long)d * (long long)a[d];
    long long qm = 1;
    for (int i = 0; i < m; ++i) qm *= K.F->q;
    s[m - 1] = qm + 1 - Nm;
  }
  return lpoly_from_power_sums(K.F->q, N, LKind::ZetaNumerator, s);
}

namespace {

// chi values of beta at all places of K of degree d, paired with the places.
std::vector<std::pair<QPlace, int>> chi_layer(const QuadField& K, const QuadElement& beta,
                                              int d) {
  std::vector<std::pair<QPlace, int>> out;
  for (auto& qp : enumerate_qplaces(K, d)) out.emplace_back(qp, chi_rel(K, beta, qp));
  return out;
}

}  // namespace

long long e_coefficient(const QuadField& K, const QuadElement& beta, int m) {
  long long e = 0;
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    int r = m / d;
    for (auto& [qp, chi] : chi_layer(K, beta, d)) {
      if (chi == 0) continue;  // ramified in L: all powers contribute 0
      e += (long long)d * (r % 2 == 0 ? 1 : chi);
    }
  }
  return e;
}

LPolynomial relative_lpoly(const QuadField& K, const QuadElement& beta, int e_depth) {
  RelDisc rd = rel_discriminant(K, beta);
  int N = 2 * K.genus - 2 + rd.delta;
  if (N < 0) fail(Errc::InvalidInput, "relative L-polynomial with negative degree");
  std::vector<std::vector<std::pair<QPlace, int>>> layers(N + 1);
  for (int d = 1; d <= N; ++d) layers[d] = chi_layer(K, beta, d);
  std::vector<long long> s(N);
  for (int m = 1; m <= N; ++m) {
    long long e = 0;
    for (int d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      int r = m / d;
      for (auto& [qp, chi] : layers[d]) {
        if (chi == 0) continue;
        e += (long long)d * (r % 2 == 0 ? 1 : chi);
      }
    }
    s[m - 1] = -e;
  }
  LPolynomial P = lpoly_from_power_sums(K.F->q, N, LKind::Relative, s);
  // extend the stored power sums exactly with the Newton recurrence
  // s_m = -sum_{i=1}^{N} b_i s_{m-i} (m > N); no further place enumeration
  for (int m = N + 1; m <= e_depth; ++m) {
    mpz_class acc = 0;
    for (int i = 1; i <= N; ++i) acc += P.b[i] * mpz_class(long(P.s[m - i - 1]));
    acc = -acc;
    if (!acc.fits_slong_p()) fail(Errc::NumericalFailure, "power sum overflow");
    P.s.push_back(acc.get_si());
  }
  return P;
}

LPolynomial double_cover_relative_lpoly(const QuadField& K, const QuadElement& beta) {
  RelDisc rd = rel_discriminant(K, beta);
  int N = 2 * K.genus - 2 + rd.delta;
  int gL = 2 * K.genus - 1 + rd.delta / 2;
  if (rd.delta % 2 != 0) fail(Errc::InternalInconsistency, "odd relative discriminant degree");
  int NL = 2 * gL;
  // count places of L by degree via the splitting of places of K
  std::vector<long long> aL(NL + 1, 0);
  for (int d = 1; d <= NL; ++d) {
    for (auto& [qp, chi] : chi_layer(K, beta, d)) {
      if (chi == 1) {
        aL[d] += 2;
      } else if (chi == 0) {
        aL[d] += 1;
      } else if (2 * d <= NL) {
        aL[2 * d] += 1;
      }
    }
  }
  std::vector<long long> sL(NL);
  for (int m = 1; m <= NL; ++m) {
    long long Nm = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) Nm += (long long)d * aL[d];
    long long qm = 1;
    for (int i = 0; i < m; ++i) qm *= K.F->q;
    sL[m - 1] = qm + 1 - Nm;
  }
  LPolynomial PL = lpoly_from_power_sums(K.F->q, NL, LKind::ZetaNumerator, sL);
  LPolynomial PK = zeta_numerator(K);
  // exact division PL / PK in Z[u]
  std::vector<mpz_class> quo(N + 1, 0);
  std::vector<mpz_class> rem = PL.b;
  for (int i = NL; i >= PK.N; --i) {
    // PK is monic in b[0]... divide from the bottom instead: b0(PK) = 1
    break;
  }
  // bottom-up division using PK.b[0] = 1:
  // rem = PL - quo * PK built degree by degree from u^0 upward.
  for (int i = 0; i <= N; ++i) {
    quo[i] = rem[i];
    for (int j = 0; j <= PK.N && i + j <= NL; ++j) rem[i + j] -= quo[i] * PK.b[j];
  }
  for (int i = 0; i <= NL; ++i)
    if (rem[i] != 0)
      fail(Errc::InternalInconsistency, "zeta of double cover not divisible by zeta of K");
  LPolynomial P;
  P.q = K.F->q;
  P.kind = LKind::Relative;
  P.N = N;
  P.b = std::move(quo);
  check_functional_equation(P.b, P.q, N);
  P.angles = zero_angles(P.b, P.q);
  return P;
}

int central_vanishing(const LPolynomial& P) {
  int t = 0;
  std::vector<mpz_class> cur = P.b;
  mpz_class q = mpz_class((long)P.q);
  for (;;) {
    int N = int(cur.size()) - 1;
    if (N < 2) break;
    // try cur = (1 - q u^2) * Q: Q_i = cur_i + q Q_{i-2}
    std::vector<mpz_class> Q(N - 1);
    bool ok = true;
    for (int i = 0; i <= N - 2; ++i) {
      Q[i] = cur[i];
      if (i >= 2) Q[i] += q * Q[i - 2];
    }
    // remaining checks: coefficients N-1 and N
    mpz_class r1 = cur[N - 1];
    if (N - 3 >= 0) r1 += q * Q[N - 3];
    mpz_class r2 = cur[N] + q * Q[N - 2];
    if (r1 != 0 || r2 != 0) ok = false;
    if (!ok) break;
    cur = std::move(Q);
    ++t;
  }
  return t;
}

double c_coefficient(const LPolynomial& P, int m) {
  if (m < 1) fail(Errc::InvalidInput, "c_coefficient needs m >= 1");
  double c = 0;
  for (double th : P.angles) c += std::cos(m * th);
  if (m <= int(P.s.size())) {
    double expected = P.s[m - 1] * std::pow(double(P.q), -0.5 * m);
    if (std::abs(c - expected) > 1e-8 * std::max(1.0, std::abs(expected)))
      fail(Errc::ExplicitFormulaViolation,
           "c_m from angles disagrees with arithmetic power sums at m=" + std::to_string(m));
  }
  return c;
}

mpz_class divisor_count(const QuadField& K, int l) {
  if (l < 0) return 0;
  LPolynomial P = zeta_numerator(K);
  mpz_class acc = 0;
  mpz_class qz = mpz_class((long)K.F->q);
  for (int k = 0; k <= std::min(l, P.N); ++k) {
    // h_{l-k} = (q^{l-k+1} - 1)/(q - 1)
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)K.F->q, (unsigned long)(l - k + 1));
    acc += P.b[k] * ((pw - 1) / (qz - 1));
  }
  return acc;
}

mpz_class divisor_count_oracle(const QuadField& K, int l) {
  if (l < 0) return 0;
  std::vector<mpz_class> dp(l + 1, 0);
  dp[0] = 1;
  for (int d = 1; d <= l; ++d) {
    unsigned long long a = qplace_count(K, d);
    if (a == 0) continue;
    // multiply by (1 - x^d)^{-a}: coefficients C(a-1+t, t)
    std::vector<mpz_class> ndp(l + 1, 0);
    for (int m = 0; m <= l; ++m) {
      if (dp[m] == 0) continue;
      mpz_class binom = 1;
      for (int t = 0; m + t * d <= l; ++t) {
        if (t > 0) {
          binom *= (unsigned long)(a - 1 + t);
          binom /= (unsigned long)t;
        }
        ndp[m + t * d] += dp[m] * binom;
      }
    }
    dp = std::move(ndp);
  }
  return dp[l];
}

}  // namespace d4lab
