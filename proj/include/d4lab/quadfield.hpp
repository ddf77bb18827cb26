// Quadratic extensions K = k(sqrt(D)) of k = F_q(T), D = u*F with u in
// {1, alpha0} and F monic squarefree. Places of K over places of k, local
// valuations and characters of elements beta = (A + B*sqrt(D))/c, relative
// discriminants, and counting experiments over the (u, F) parameter space.
#pragma once

#include "d4lab/places.hpp"

#include <functional>
#include <optional>

namespace d4lab {

struct QuadField {
  const FieldCtx* F = nullptr;
  bool twisted = false;  // u = alpha0 when set, else u = 1
  int u = 1;             // element index of the unit
  Poly Fpoly;            // monic squarefree, deg 2j (infinity unramified) or 2j-1
  Poly D;                // u * Fpoly
  int j = 0;             // |Disc K| = q^{2j}
  int genus = 0;         // j - 1
  bool inf_ramified = false;
  std::vector<Poly> Ffactors;  // monic irreducible factors of Fpoly, sorted

  // Discriminant as a divisor of k (factors of F, plus infinity if deg F odd).
  Divisor disc() const;
  std::string key() const;  // canonical string key "u:F-coeffs"
};

QuadField make_quadfield(const FieldCtx* F, bool twisted, const Poly& Fpoly);

// chi_K at a place of k: +1 split, -1 inert, 0 ramified.
int chi_base(const QuadField& K, const Place& P);

struct QuadFieldFilter {
  // Every place of this effective divisor must ramify in K.
  std::optional<Divisor> ramified_at;
  // No place of this effective divisor may ramify in K.
  std::optional<Divisor> unramified_at;
};

// All K with |Disc K| = q^{2j} passing the filter, canonical order
// (untwisted before twisted; F by canonical poly order, deg 2j before 2j-1
// is NOT used: order is (twisted, deg F, F)).
std::vector<QuadField> enumerate_quadfields(const FieldCtx* F, int j,
                                            const QuadFieldFilter& filter = {});
// Same count without materializing the fields.
unsigned long long count_quadfields(const FieldCtx* F, int j,
                                    const QuadFieldFilter& filter = {});

enum class QKind { Split, Inert, Ramified };

// A place of K. For computations the local data is stored in "local
// coordinates": for a finite base place these are the y = T coordinates; for
// the infinite base place everything is rewritten in S = 1/T so that the
// place becomes the finite place (S).
struct QPlace {
  Place base;
  QKind kind = QKind::Ramified;
  int index = 0;  // 0/1 distinguishing the two places over a split base place
  int degK = 0;   // degree over F_q: base.degree, doubled for inert

  Poly Ploc;   // local prime: base.prime, or S for infinite base
  Poly Dloc;   // the quadratic twist in local coordinates
  Poly root0;  // split only: canonical (smaller) root of x^2 = Dloc mod Ploc
};

bool operator==(const QPlace& a, const QPlace& b);
int qplace_cmp(const QPlace& a, const QPlace& b);
struct QPlaceLess {
  bool operator()(const QPlace& a, const QPlace& b) const { return qplace_cmp(a, b) < 0; }
};
std::string qplace_str(const QPlace& p);
QPlace conjugate(const QPlace& p);  // swaps the two places over a split base

// Places of K above a place of k (2 split / 1 inert / 1 ramified).
std::vector<QPlace> places_above(const QuadField& K, const Place& P);
// All places of K of degree m over F_q, canonical order.
std::vector<QPlace> enumerate_qplaces(const QuadField& K, int m);

// beta = (A + B*sqrt(D)) / c with A, B, c in F_q[T], c != 0. Stored reduced:
// gcd(A, B, c) = 1 and c monic.
struct QuadElement {
  Poly A, B, c;
};
QuadElement make_quad_element(const Poly& A, const Poly& B, const Poly& c);
std::string quad_element_str(const QuadElement& b);
QuadElement conj(const QuadElement& b);  // A - B sqrt(D)
// Norm to k as a reduced fraction (num, den) = ((A^2 - B^2 D), c^2) reduced.
std::pair<Poly, Poly> norm_to_base(const QuadField& K, const QuadElement& b);

// Valuation of beta at a place of K (beta != 0).
int valuation(const QuadField& K, const QuadElement& b, const QPlace& pl);
// chi of the class of beta at a place of K: 0 if the valuation is odd, else
// the residue symbol of the local unit part (+1 iff beta is a local square).
int chi_rel(const QuadField& K, const QuadElement& b, const QPlace& pl);

struct RelDisc {
  std::vector<QPlace> places;  // sorted, places where v(beta) is odd
  int delta = 0;               // sum of degK over those places
};
RelDisc rel_discriminant(const QuadField& K, const QuadElement& b);

// --- counting experiments over the base field -----------------------------

struct QuadCountRecord {
  unsigned long long count = 0;
  double main_term = 0.0;
};

// Quadratic extensions L/k with |Disc L| = q^{2r} whose discriminant is
// divisible by the effective squarefree divisor Bdiv. The main term is
// 2 (Y/|B|) prod_{P|B} (1+1/|P|)^{-1} (1 - q^{-2}) with Y = q^{2r}.
QuadCountRecord count_quad_ext_base(const FieldCtx* F, int r, const Divisor& Bdiv);

struct AvgChiRecord {
  long long sum = 0;           // sum over K of chi_K(C)
  unsigned long long fields = 0;
  double main_term = 0.0;      // averaged-character main term (square C), 0 for odd deg C
};

// Sum of chi_K(C) over K with |Disc K| = q^{2j} unramified at the places of
// fg. C and fg are effective divisors of k.
AvgChiRecord average_chi_over_K(const FieldCtx* F, int j, const Divisor& C, const Divisor& fg);

}  // namespace d4lab
