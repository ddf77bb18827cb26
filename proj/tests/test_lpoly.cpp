#include "doctest.h"

#include "d4lab/lpoly.hpp"

#include <cmath>

using namespace d4lab;

TEST_CASE("zeta numerator: pinned genus-1 example") {
  const FieldCtx* F = FieldCtx::get(3);
  // K = k(sqrt(T^3 - T)): genus 1, supersingular, P(u) = 1 + 3u^2
  QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, "0,2,0,1"));
  CHECK(K.genus == 1);
  LPolynomial P = zeta_numerator(K);
  REQUIRE(P.N == 2);
  CHECK(P.b[0] == 1);
  CHECK(P.b[1] == 0);
  CHECK(P.b[2] == 3);
  REQUIRE(P.angles.size() == 2);
  CHECK(std::abs(std::abs(P.angles[0]) - M_PI / 2) < 1e-9);
  CHECK(std::abs(std::abs(P.angles[1]) - M_PI / 2) < 1e-9);
  // c_m = 2cos(m pi / 2)
  CHECK(c_coefficient(P, 1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(c_coefficient(P, 2) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(c_coefficient(P, 4) == doctest::Approx(2.0).epsilon(1e-9));
  // central value nonzero
  CHECK(central_vanishing(P) == 0);
}

TEST_CASE("zeta numerators: functional equation and RH across j <= 3") {
  const FieldCtx* F = FieldCtx::get(3);
  for (int j = 1; j <= 3; ++j) {
    int checked = 0;
    for (auto& K : enumerate_quadfields(F, j)) {
      LPolynomial P = zeta_numerator(K);
      CHECK(P.N == 2 * K.genus);
      // functional equation b_{N-i} = q^{N/2-i} b_i
      for (int i = 0; i <= P.N / 2; ++i) {
        mpz_class rhs = P.b[i];
        for (int t = 0; t < P.N / 2 - i; ++t) rhs *= 3;
        CHECK(P.b[P.N - i] == rhs);
      }
      for (double th : P.angles) CHECK(std::abs(th) <= M_PI + 1e-12);
      if (++checked >= 40) break;  // keep j = 3 affordable
    }
  }
}

TEST_CASE("qplace_count matches enumeration") {
  const FieldCtx* F = FieldCtx::get(3);
  for (auto Fs : {"1,0,1", "0,1", "0,2,0,1", "2,1,1,0,1"}) {
    QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, Fs));
    for (int d = 1; d <= 4; ++d)
      CHECK(qplace_count(K, d) == enumerate_qplaces(K, d).size());
  }
}

TEST_CASE("divisor counts against the direct oracle") {
  const FieldCtx* F = FieldCtx::get(3);
  for (auto Fs : {"1,0,1", "0,2,0,1"}) {
    QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, Fs));
    for (int l = 0; l <= 5; ++l)
      CHECK(divisor_count(K, l) == divisor_count_oracle(K, l));
  }
}

TEST_CASE("relative L-polynomial: pinned degree-0 pair") {
  const FieldCtx* F = FieldCtx::get(3);
  QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, "1,0,1"));
  // beta = T + sqrt(T^2+1): delta = 2, N = 2g - 2 + delta = 0
  QuadElement b = make_quad_element(poly_T(F), poly_const(F, 1), poly_const(F, 1));
  LPolynomial L = relative_lpoly(K, b);
  CHECK(L.N == 0);
  CHECK(L.b[0] == 1);
}

TEST_CASE("relative L-polynomial equals the double-cover quotient") {
  const FieldCtx* F = FieldCtx::get(3);
  // search small beta with various discriminant degrees over two K
  int tested = 0;
  for (auto Fs : {"1,0,1", "0,1"}) {
    QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, Fs));
    for (int code = 0; code < 3 * 3 * 3 * 3 * 2 && tested < 10; ++code) {
      int r = code;
      Poly A(F), B(F);
      A.c = {r % 3, (r / 3) % 3, (r / 9) % 3};
      A.trim();
      r /= 27;
      B.c = {r % 3, 1 + (r / 3) % 2};
      B.trim();
      if (A.is_zero() && B.is_zero()) continue;
      QuadElement b = make_quad_element(A, B, poly_const(F, 1));
      Poly num = b.A * b.A - b.B * b.B * K.D;
      if (num.is_zero() || squarefree_part_odd(num).is_one()) continue;
      RelDisc rd = rel_discriminant(K, b);
      if (rd.delta < 4 || rd.delta > 6) continue;
      LPolynomial L1 = relative_lpoly(K, b);
      LPolynomial L2 = double_cover_relative_lpoly(K, b);
      REQUIRE(L1.N == L2.N);
      for (int i = 0; i <= L1.N; ++i) CHECK(L1.b[i] == L2.b[i]);
      // functional equation of the relative L-polynomial
      for (int i = 0; i <= L1.N / 2; ++i) {
        mpz_class rhs = L1.b[i];
        for (int t = 0; t < L1.N / 2 - i; ++t) rhs *= 3;
        CHECK(L1.b[L1.N - i] == rhs);
      }
      ++tested;
    }
  }
  CHECK(tested >= 5);
}

TEST_CASE("explicit-formula coefficients agree with power sums") {
  const FieldCtx* F = FieldCtx::get(3);
  QuadField K = make_quadfield(F, false, poly_parse_coeffs(F, "0,1"));
  // find a pair with a degree-4 L-polynomial: c_coefficient cross-checks the
  // root angles against the exact power sums and throws on disagreement
  int found = 0;
  for (int code = 0; code < 81 * 6 && found < 3; ++code) {
    int r = code;
    Poly A(F), B(F);
    A.c = {r % 3, (r / 3) % 3, (r / 9) % 3, (r / 27) % 3};
    A.trim();
    r /= 81;
    B.c = {r % 3, 1 + r / 3};
    B.trim();
    QuadElement b = make_quad_element(A, B, poly_const(F, 1));
    Poly num = b.A * b.A - b.B * b.B * K.D;
    if (num.is_zero() || squarefree_part_odd(num).is_one()) continue;
    if (rel_discriminant(K, b).delta != 6) continue;
    LPolynomial L = relative_lpoly(K, b, 8);
    REQUIRE(L.N == 4);
    for (int m = 1; m <= int(L.s.size()); ++m) CHECK_NOTHROW(c_coefficient(L, m));
    ++found;
  }
  CHECK(found == 3);
}

TEST_CASE("central vanishing order") {
  LPolynomial P;
  P.q = 3;
  P.kind = LKind::Relative;
  // (1 - 3u^2)(1 + u + 3u^2) = 1 + u - 3u^3 - 9u^4
  P.N = 4;
  P.b = {1, 1, 0, -3, -9};
  CHECK(central_vanishing(P) == 1);
  LPolynomial Q;
  Q.q = 3;
  Q.N = 4;
  // (1 - 3u^2)^2 = 1 - 6u^2 + 9u^4
  Q.b = {1, 0, -6, 0, 9};
  CHECK(central_vanishing(Q) == 2);
  LPolynomial R;
  R.q = 3;
  R.N = 2;
  R.b = {1, 0, 3};
  CHECK(central_vanishing(R) == 0);
}
