#include "doctest.h"

#include "d4lab/places.hpp"

using namespace d4lab;

TEST_CASE("places enumeration and order") {
  const FieldCtx* F = FieldCtx::get(3);
  auto p1 = enumerate_places(F, 1);
  CHECK(p1.size() == 4);  // T, T+1, T+2 and infinity
  CHECK(p1.back().infinite);
  for (auto& P : p1) CHECK(place_norm(P) == 3);
  auto p2 = enumerate_places(F, 2);
  CHECK(p2.size() == 3);
  for (size_t i = 1; i < p2.size(); ++i) CHECK(place_cmp(p2[i - 1], p2[i]) < 0);
}

TEST_CASE("principal divisors have degree zero") {
  const FieldCtx* F = FieldCtx::get(3);
  Poly f = poly_parse_coeffs(F, "0,2,0,1");  // T^3 + 2T = T(T+1)(T+2)
  Poly g = poly_parse_coeffs(F, "1,0,1");
  Divisor d = principal_divisor(f, g);
  CHECK(d.degree() == 0);
  CHECK(v_infinity(f, g) == -1);
  CHECK(d.coef.at(Place::infinity(F)) == -1);
  CHECK(d.coef.at(Place::finite_place(poly_T(F))) == 1);
  CHECK(d.coef.at(Place::finite_place(g)) == -1);
  // divisor of a product is the sum
  Poly h = poly_parse_coeffs(F, "2,1,1");
  CHECK(principal_divisor(f * h, g) == principal_divisor(f, g) + principal_divisor(h, poly_const(F, 1)));
}

TEST_CASE("effective divisor counts") {
  const FieldCtx* F = FieldCtx::get(3);
  for (int l = 0; l <= 3; ++l) {
    auto divs = enumerate_effective_divisors(F, l);
    CHECK(divs.size() == count_effective_divisors(3, l));
    for (auto& d : divs) {
      CHECK(d.degree() == l);
      CHECK(d.is_effective());
    }
  }
  CHECK(count_effective_divisors(3, 2) == 13);  // 1 + q + q^2
}

TEST_CASE("residue and jacobi symbols, reciprocity") {
  const FieldCtx* F = FieldCtx::get(3);
  Poly P = poly_parse_coeffs(F, "1,0,1");
  // squares mod T^2+1 were verified in the gf tests; T = (T+2)^2 mod T^2+1
  CHECK(residue_symbol(poly_T(F), Place::finite_place(P)) == 1);
  CHECK(residue_symbol(poly_parse_coeffs(F, "1,1"), Place::finite_place(P)) == -1);
  CHECK(residue_symbol(P, Place::finite_place(P)) == 0);
  CHECK(residue_symbol(poly_const(F, 2), Place::finite_place(poly_T(F))) == -1);
  // jacobi multiplicativity and agreement with residue symbols
  Poly g = poly_parse_coeffs(F, "1,1") * poly_parse_coeffs(F, "2,1");
  Poly f = poly_parse_coeffs(F, "1,2,1,1");
  int j = jacobi_symbol(f, g);
  int r = residue_symbol(f, Place::finite_place(poly_parse_coeffs(F, "1,1"))) *
          residue_symbol(f, Place::finite_place(poly_parse_coeffs(F, "2,1")));
  CHECK(j == r);
  // reciprocity over many pairs of distinct irreducibles
  for (int d1 = 1; d1 <= 3; ++d1)
    for (int d2 = 1; d2 <= 3; ++d2)
      for (auto& A : monic_irreducibles(F, d1))
        for (auto& B : monic_irreducibles(F, d2)) {
          if (A == B) continue;
          CHECK(reciprocity_check(A, B));
        }
  const FieldCtx* F5 = FieldCtx::get(5);
  for (auto& A : monic_irreducibles(F5, 1))
    for (auto& B : monic_irreducibles(F5, 2)) CHECK(reciprocity_check(A, B));
}

TEST_CASE("mobius sums") {
  CHECK(mobius_sum(3, 0) == 1);
  CHECK(mobius_sum(3, 1) == -4);
  CHECK(mobius_sum(3, 2) == 3);
  CHECK(mobius_sum(3, 3) == 0);
  CHECK(mobius_sum(3, 5) == 0);
  CHECK(mobius_sum(5, 1) == -6);
  CHECK(mobius_sum(5, 2) == 5);
  // brute force against the divisor enumeration
  const FieldCtx* F = FieldCtx::get(3);
  for (int l = 0; l <= 4; ++l) {
    long long s = 0;
    for (auto& d : enumerate_effective_divisors(F, l)) s += mobius(d);
    CHECK(s == mobius_sum(3, l));
  }
}
