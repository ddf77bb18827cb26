// Places and divisors of the rational function field F_q(T): monic
// irreducibles plus the place at infinity, effective divisors, residue
// symbols and the degree-wise Moebius sums coming from 1/zeta.
#pragma once

#include "d4lab/gf.hpp"

#include <map>

namespace d4lab {

struct Place {
  const FieldCtx* F = nullptr;
  bool infinite = false;
  Poly prime;  // monic irreducible; empty for the infinite place
  int degree = 0;

  static Place finite_place(const Poly& P);
  static Place infinity(const FieldCtx* F);
};

bool operator==(const Place& a, const Place& b);
inline bool operator!=(const Place& a, const Place& b) { return !(a == b); }
// Canonical order: by degree, finite places (lex) before infinity.
int place_cmp(const Place& a, const Place& b);
struct PlaceLess {
  bool operator()(const Place& a, const Place& b) const { return place_cmp(a, b) < 0; }
};
std::string place_str(const Place& a);

// |P| = q^{deg P}
long long place_norm(const Place& a);

struct Divisor {
  std::map<Place, int, PlaceLess> coef;

  void add(const Place& p, int mult);
  int degree() const;
  bool is_effective() const;
  bool is_squarefree() const;  // effective with all multiplicities one
  bool empty() const { return coef.empty(); }
};

Divisor operator+(const Divisor& a, const Divisor& b);
bool operator==(const Divisor& a, const Divisor& b);
std::string divisor_str(const Divisor& d);

// Principal divisor of a nonzero rational function f/g (finite zeros/poles
// plus the infinite place with multiplicity v_inf = deg g - deg f).
Divisor principal_divisor(const Poly& f, const Poly& g);
// v_infinity(f/g) = deg g - deg f.
int v_infinity(const Poly& f, const Poly& g);

// All places of degree d in canonical order. Degree-1 output includes the
// infinite place (last) when include_infinite is set.
std::vector<Place> enumerate_places(const FieldCtx* F, int d, bool include_infinite = true);

// Effective divisors of degree l (optionally squarefree only), canonical
// order. Capped: throws CapExceeded when the count would be huge.
std::vector<Divisor> enumerate_effective_divisors(const FieldCtx* F, int l,
                                                  bool squarefree_only = false);
// Number of effective divisors of degree l: (q^{l+1}-1)/(q-1).
unsigned long long count_effective_divisors(long long q, int l);

// Quadratic residue symbol (f/P) for a finite place P: 0 if P | f, else the
// Euler symbol of f mod P in the residue field.
int residue_symbol(const Poly& f, const Place& P);
// Jacobi-style extension to a squarefree monic modulus g via factorization.
int jacobi_symbol(const Poly& f, const Poly& g);
// Quadratic reciprocity for monic coprime f, g over F_q (q odd):
//   (f/g) = (g/f) * (-1)^{ (q-1)/2 * deg f * deg g }.
bool reciprocity_check(const Poly& f, const Poly& g);

// Moebius function of an effective divisor: (-1)^{#places} if squarefree,
// else 0.
int mobius(const Divisor& d);
// Sum of mobius over all effective divisors of degree l; equals the degree-l
// coefficient of 1/zeta_k(u) = (1-u)(1-qu).
long long mobius_sum(long long q, int l);

}  // namespace d4lab
