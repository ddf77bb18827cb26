// D4 quartic pairs (L, K): L = K(sqrt(beta)) with K = k(sqrt(D)) quadratic
// and Gal of the closure D4. Galois typing by the square class of the norm,
// conductor and flip (the dual pair (L', K')), splitting-type bookkeeping,
// and enumeration of the conductor-X family with its counting main terms.
#pragma once

#include "d4lab/lpoly.hpp"

#include <memory>

namespace d4lab {

enum class GaloisType { V4, C4, D4 };
std::string galois_type_str(GaloisType t);

// Square class of the norm N(beta) in k*: square -> V4, D*(square) -> C4,
// otherwise D4. Requires beta to generate a quartic over k (B != 0 and
// N(beta) not a square; else NotQuartic).
GaloisType galois_type(const QuadField& K, const QuadElement& beta);

// Independent oracle: reduce the quartic minimal polynomial of sqrt(beta)
// at base places P of degree <= max_deg (unramified, prime to the data) and
// read cycle types off distinct-degree factorization over the residue field.
GaloisType cycle_type_oracle(const QuadField& K, const QuadElement& beta, int max_deg = 6);

struct FlipResult {
  QuadField Kf;        // K' = k(sqrt(N(beta)))
  QuadElement betaf;   // generator of L' over K': trace(beta) + 2 sqrt(N)
  int jf = 0;          // |Disc K'| = q^{2 jf}
  int tJ = 0;          // J(L) = q^{2 tJ}
  bool primary = true; // primary candidate validated (conjugate fallback otherwise)
};

// J(L): product of |P|^2 over base places P split in K with both places
// above P in the relative discriminant.
int j_factor_exponent(const QuadField& K, const RelDisc& rd);

// The flipped pair. Validates the conductor identity
//   C(L) = |Disc K| |Disc K'| J(L)
// and throws FlipValidationFailure if no candidate satisfies it.
FlipResult flip(const QuadField& K, const QuadElement& beta, const RelDisc& rd);

// Splitting behaviour of an unramified base place P in (L, K):
// (f-pattern in L, f-pattern in K).
enum class SplitType { S1111_11, S211_11, S22_11, S22_2, S4_2, Ram };
std::string split_type_str(SplitType t);
SplitType splitting_type(const QuadField& K, const QuadElement& beta, const Place& P);

struct QuarticPair {
  std::shared_ptr<const QuadField> K;
  QuadElement beta;
  RelDisc relDisc;
  int n = 0;  // conductor C(L) = q^{2n}
  GaloisType type = GaloisType::D4;
  // flip data
  std::shared_ptr<const QuadField> Kf;
  QuadElement betaf;
  int jf = 0;
  int tJ = 0;
  bool flip_primary = true;
};

// Flip splitting correspondence at an unramified base place: the flipped
// pair shows the same splitting type except for the swap (22,2) <-> (211,11).
bool split_correspondence_check(const QuarticPair& pair, const Place& P);

struct FamilyOptions {
  double alpha = 0.0;   // X^alpha < |Disc K|
  double beta = 1.0;    // |Disc K| <= X^beta
  int box_slack = 0;    // extra degree on the initial (A, B) search box
  int max_saturation = 3;  // extra box growth rounds while new classes appear
  unsigned long long candidate_cap = 1ull << 33;
  bool build_flips = true;
};

// Enumerate the family F(X) with X = q^{2n}: one representative per
// isomorphism class of D4 pairs (L, K) with conductor exactly q^{2n} and
// X^alpha < |Disc K| <= X^beta. Deterministic order.
std::vector<QuarticPair> enumerate_family(const FieldCtx* F, int n,
                                          const FamilyOptions& opt = {});

// Counting main terms. euler_product multiplies over all places (including
// infinity, |oo| = q) of degree <= max_deg.
double euler_product(long long q, int max_deg, bool plus_form);
struct FamilyCount {
  unsigned long long enumerated = 0;
  double main_plus = 0.0;   // 2 X (n-1) (1-q^-2)^2 prod (1 + 1/(|P|+1)^2)
  double main_minus = 0.0;  // 2 X (n-1) (1-q^-1)^-2 prod (1 - |P|^-2 - 2|P|^-3 + 2|P|^-4)
};
FamilyCount count_family(const FieldCtx* F, int n, const FamilyOptions& opt = {},
                         int euler_max_deg = 40);
// (main_plus, main_minus) without running the enumeration.
std::pair<double, double> family_main_terms(long long q, int n, int max_deg = 40);

// Quadratic extensions of a fixed quadratic K with |Disc(L/K)| = q^{2r}
// (any Galois type, geometric), enumerated through the same beta machinery;
// the main term uses P_K(q^-1)/P_K(q^-2).
QuadCountRecord count_quad_ext_over(const QuadField& K, int r);
// The underlying class representatives (any Galois type, geometric) with
// relative discriminant degree exactly d = 2r. Deterministic order.
std::vector<QuadElement> enumerate_rel_quad_classes(const QuadField& K, int d,
                                                    const FamilyOptions& opt = {});

}  // namespace d4lab
