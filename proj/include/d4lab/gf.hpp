// Finite field contexts F_{p^e} (table based, small q) and dense univariate
// polynomial arithmetic over them, with deterministic factorization.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace d4lab {

enum class Errc {
  DivisionByZero,
  ContextMismatch,
  InvalidInput,
  CapExceeded,
  InternalInconsistency,
  NotQuartic,
  FlipValidationFailure,
  ExplicitFormulaViolation,
  NumericalFailure,
};

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Errc code;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

// Immutable finite field F_{p^e}. Elements are integer indices in [0, q);
// the index encodes the coefficient vector of the element over F_p in the
// basis 1, x, ..., x^{e-1}: index = c0 + c1*p + ... + c_{e-1} p^{e-1}.
// Element order is index order. Instances are interned; compare by pointer.
class FieldCtx {
 public:
  static const FieldCtx* get(int p, int e = 1);

  int p = 0;
  int e = 1;
  long long q = 0;
  std::vector<int> modulus;  // coeffs over F_p of the monic irreducible, size e+1 (e>1)
  int alpha0 = -1;           // smallest non-square (index order)

  inline int add(int a, int b) const { return addt_[a * q + b]; }
  inline int sub(int a, int b) const { return addt_[a * q + negt_[b]]; }
  inline int mul(int a, int b) const { return mult_[a * q + b]; }
  inline int neg(int a) const { return negt_[a]; }
  inline int inv(int a) const {
    if (a == 0) fail(Errc::DivisionByZero, "inverse of zero field element");
    return invt_[a];
  }
  inline int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, unsigned long long k) const;
  inline bool is_square(int a) const { return sqrtt_[a] >= 0; }
  inline std::optional<int> sqrt(int a) const {
    if (sqrtt_[a] < 0) return std::nullopt;
    return int(sqrtt_[a]);
  }
  // p-th root (Frobenius inverse), always exists.
  int pth_root(int a) const;

  int from_int(long long n) const;  // reduce an integer into the prime field
  std::vector<int> coeffs(int a) const;
  int from_coeffs(const std::vector<int>& c) const;
  std::string elem_str(int a) const;

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

 private:
  FieldCtx() = default;
  void build(int p, int e);
  std::vector<int16_t> addt_, mult_, negt_, invt_, sqrtt_;
};

// Checked element wrapper for the public API / tests. Hot paths use raw
// indices through FieldCtx directly.
struct FFElem {
  const FieldCtx* F = nullptr;
  int v = 0;
  FFElem() = default;
  FFElem(const FieldCtx* f, int val) : F(f), v(val) {}
};

inline void require_same_ctx(const FieldCtx* a, const FieldCtx* b) {
  if (a != b) fail(Errc::ContextMismatch, "mixed field contexts");
}

inline FFElem operator+(FFElem a, FFElem b) {
  require_same_ctx(a.F, b.F);
  return {a.F, a.F->add(a.v, b.v)};
}
inline FFElem operator-(FFElem a, FFElem b) {
  require_same_ctx(a.F, b.F);
  return {a.F, a.F->sub(a.v, b.v)};
}
inline FFElem operator*(FFElem a, FFElem b) {
  require_same_ctx(a.F, b.F);
  return {a.F, a.F->mul(a.v, b.v)};
}
inline FFElem operator/(FFElem a, FFElem b) {
  require_same_ctx(a.F, b.F);
  return {a.F, a.F->div(a.v, b.v)};
}
inline bool operator==(FFElem a, FFElem b) { return a.F == b.F && a.v == b.v; }

// Dense polynomial over a FieldCtx in one variable (written T).
// Invariant: c is empty (zero polynomial) or c.back() != 0.
struct Poly {
  const FieldCtx* F = nullptr;
  std::vector<int> c;

  Poly() = default;
  explicit Poly(const FieldCtx* f) : F(f) {}
  Poly(const FieldCtx* f, std::vector<int> coeffs) : F(f), c(std::move(coeffs)) { trim(); }

  int deg() const { return int(c.size()) - 1; }  // deg(0) == -1
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  int lc() const { return c.empty() ? 0 : c.back(); }
  int coeff(int i) const { return (i >= 0 && i < int(c.size())) ? c[i] : 0; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

Poly poly_zero(const FieldCtx* F);
Poly poly_const(const FieldCtx* F, int a);
Poly poly_T(const FieldCtx* F);
// Build from low-to-high coefficient list (entries are element indices).
Poly poly_from_coeffs(const FieldCtx* F, const std::vector<int>& c);

bool operator==(const Poly& a, const Poly& b);
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

// Canonical order: by degree, then by coefficient vector compared from the
// constant coefficient upward (c0 most significant), elements in index order.
int poly_cmp(const Poly& a, const Poly& b);
inline bool poly_less(const Poly& a, const Poly& b) { return poly_cmp(a, b) < 0; }

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, int scalar);       // scalar = element index
Poly shift(const Poly& a, int k);                // multiply by T^k
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);    // exact or euclidean quotient
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);          // monic gcd
// Extended gcd: g = u*a + v*b with g monic (or zero).
Poly ext_gcd(const Poly& a, const Poly& b, Poly& u, Poly& v);
Poly monic(const Poly& a);
Poly derivative(const Poly& a);
int eval(const Poly& a, int x);
Poly powmod(const Poly& base, unsigned long long k, const Poly& mod);
Poly pth_root_poly(const Poly& a);               // inverse of Frobenius on coefficients
Poly reverse(const Poly& a);                     // T^deg * a(1/T)
// Valuation of a at a monic irreducible P (a != 0).
int valuation_at(const Poly& a, const Poly& P, Poly* unit_out = nullptr);

std::string poly_str(const Poly& a, const std::string& var = "T");
// Parse a comma separated low-to-high coefficient list, e.g. "0,2,0,1".
Poly poly_parse_coeffs(const FieldCtx* F, const std::string& s);

bool is_squarefree(const Poly& a);
bool is_irreducible(const Poly& a);

struct PolyFactor {
  Poly p;    // monic irreducible
  int mult;  // multiplicity
};
// Full factorization of a nonzero polynomial; returns the leading unit and
// monic irreducible factors sorted by (degree, lex). Deterministic: the
// equal-degree splitter scans candidate polynomials in canonical order when
// the residue field is small and falls back to a seeded RNG otherwise.
std::vector<PolyFactor> factorize(const Poly& a, int* unit = nullptr, uint64_t seed = 1);
// Squarefree decomposition: list of (g_i, i) with f = lc * prod g_i^i.
std::vector<PolyFactor> squarefree_decomposition(const Poly& a);
// Product of the factors appearing to odd multiplicity (monic).
Poly squarefree_part_odd(const Poly& a);

// Smallest (canonical order) monic irreducible of degree d.
Poly find_irreducible(const FieldCtx* F, int d);
// Number of monic irreducibles of degree d over F_q (Gauss / Moebius).
unsigned long long count_irreducibles(long long q, int d);
// All monic irreducibles of degree d in canonical order (cached).
const std::vector<Poly>& monic_irreducibles(const FieldCtx* F, int d);

// --- quotient ring / residue field helpers -------------------------------
// Arithmetic in F_q[T]/(M). When M is irreducible this is the residue field.
Poly qmul(const Poly& a, const Poly& b, const Poly& M);
Poly qinv(const Poly& a, const Poly& M);  // requires gcd(a, M) = 1
// Euler criterion in the residue field F_q[T]/(P), a a nonzero residue:
// returns +1 / -1.
int euler_symbol(const Poly& a, const Poly& P);
// Deterministic Tonelli-Shanks square root in F_q[T]/(P); nullopt if a is a
// non-residue. Returns the smaller of the two roots in canonical order.
std::optional<Poly> quot_sqrt(const Poly& a, const Poly& P);

}  // namespace d4lab
