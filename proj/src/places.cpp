#include "d4lab/places.hpp"

#include <algorithm>
#include <sstream>

namespace d4lab {

Place Place::finite_place(const Poly& P) {
  if (P.deg() < 1 || !P.is_monic() || !is_irreducible(P))
    fail(Errc::InvalidInput, "finite place requires a monic irreducible");
  Place pl;
  pl.F = P.F;
  pl.infinite = false;
  pl.prime = P;
  pl.degree = P.deg();
  return pl;
}

Place Place::infinity(const FieldCtx* F) {
  Place pl;
  pl.F = F;
  pl.infinite = true;
  pl.degree = 1;
  return pl;
}

bool operator==(const Place& a, const Place& b) {
  return a.F == b.F && a.infinite == b.infinite && (a.infinite || a.prime == b.prime);
}

int place_cmp(const Place& a, const Place& b) {
  require_same_ctx(a.F, b.F);
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  if (a.infinite != b.infinite) return a.infinite ? 1 : -1;
  if (a.infinite) return 0;
  return poly_cmp(a.prime, b.prime);
}

std::string place_str(const Place& a) {
  return a.infinite ? "oo" : "(" + poly_str(a.prime) + ")";
}

long long place_norm(const Place& a) {
  long long n = 1;
  for (int i = 0; i < a.degree; ++i) n *= a.F->q;
  return n;
}

void Divisor::add(const Place& p, int mult) {
  if (mult == 0) return;
  auto it = coef.find(p);
  if (it == coef.end()) {
    coef.emplace(p, mult);
  } else {
    it->second += mult;
    if (it->second == 0) coef.erase(it);
  }
}

int Divisor::degree() const {
  int d = 0;
  for (auto& [p, m] : coef) d += p.degree * m;
  return d;
}

bool Divisor::is_effective() const {
  for (auto& [p, m] : coef)
    if (m < 0) return false;
  return true;
}

bool Divisor::is_squarefree() const {
  for (auto& [p, m] : coef)
    if (m != 1) return false;
  return true;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor r = a;
  for (auto& [p, m] : b.coef) r.add(p, m);
  return r;
}

bool operator==(const Divisor& a, const Divisor& b) {
  return std::equal(a.coef.begin(), a.coef.end(), b.coef.begin(), b.coef.end(),
                    [](const auto& x, const auto& y) {
                      return x.first == y.first && x.second == y.second;
                    });
}

std::string divisor_str(const Divisor& d) {
  if (d.coef.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, m] : d.coef) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << "*";
    os << place_str(p);
  }
  return os.str();
}

Divisor principal_divisor(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) fail(Errc::InvalidInput, "principal divisor of 0");
  Divisor d;
  for (auto& fac : factorize(f)) d.add(Place::finite_place(fac.p), fac.mult);
  for (auto& fac : factorize(g)) d.add(Place::finite_place(fac.p), -fac.mult);
  d.add(Place::infinity(f.F), g.deg() - f.deg());
  return d;
}

int v_infinity(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) fail(Errc::InvalidInput, "v_infinity of 0");
  return g.deg() - f.deg();
}

std::vector<Place> enumerate_places(const FieldCtx* F, int d, bool include_infinite) {
  std::vector<Place> out;
  for (auto& p : monic_irreducibles(F, d)) out.push_back(Place::finite_place(p));
  if (d == 1 && include_infinite) out.push_back(Place::infinity(F));
  return out;
}

unsigned long long count_effective_divisors(long long q, int l) {
  if (l < 0) return 0;
  unsigned long long pw = 1, acc = 0;
  for (int i = 0; i <= l; ++i) {
    acc += pw;
    if (i < l) {
      if (pw > (1ull << 62) / (unsigned long long)q)
        fail(Errc::CapExceeded, "count_effective_divisors overflow");
      pw *= (unsigned long long)q;
    }
  }
  return acc;  // 1 + q + ... + q^l
}

std::vector<Divisor> enumerate_effective_divisors(const FieldCtx* F, int l,
                                                  bool squarefree_only) {
  if (l < 0) fail(Errc::InvalidInput, "negative divisor degree");
  if (!squarefree_only && count_effective_divisors(F->q, l) > (1ull << 24))
    fail(Errc::CapExceeded, "too many effective divisors to enumerate");
  if (l > 24) fail(Errc::CapExceeded, "divisor degree cap exceeded");

  // Collect places of degree <= l in canonical order.
  std::vector<Place> places;
  for (int d = 1; d <= l; ++d)
    for (auto& p : enumerate_places(F, d)) places.push_back(p);

  std::vector<Divisor> out;
  Divisor cur;
  // Recursive choice of multiplicities in canonical place order.
  struct Rec {
    const std::vector<Place>* places;
    std::vector<Divisor>* out;
    bool sf;
    void run(size_t i, int rem, Divisor& acc) {
      if (rem == 0) {
        out->push_back(acc);
        return;
      }
      if (i >= places->size()) return;
      const Place& p = (*places)[i];
      int maxm = sf ? 1 : rem / p.degree;
      for (int m = 0; m <= maxm; ++m) {
        if (m * p.degree > rem) break;
        if (m) acc.add(p, m);
        run(i + 1, rem - m * p.degree, acc);
        if (m) acc.add(p, -m);
      }
    }
  };
  Rec rec{&places, &out, squarefree_only};
  rec.run(0, l, cur);
  return out;
}

int residue_symbol(const Poly& f, const Place& P) {
  if (P.infinite) fail(Errc::InvalidInput, "residue_symbol at the infinite place");
  require_same_ctx(f.F, P.F);
  if (f.is_zero()) return 0;
  Poly r = f % P.prime;
  if (r.is_zero()) return 0;
  return euler_symbol(r, P.prime);
}

int jacobi_symbol(const Poly& f, const Poly& g) {
  if (!g.is_monic() || g.deg() < 1 || !is_squarefree(g))
    fail(Errc::InvalidInput, "jacobi_symbol needs a squarefree monic modulus");
  int r = 1;
  for (auto& fac : factorize(g)) {
    int s = residue_symbol(f, Place::finite_place(fac.p));
    if (s == 0) return 0;
    r *= s;
  }
  return r;
}

bool reciprocity_check(const Poly& f, const Poly& g) {
  if (!f.is_monic() || !g.is_monic() || f.deg() < 1 || g.deg() < 1)
    fail(Errc::InvalidInput, "reciprocity_check needs monic nonconstant inputs");
  if (!gcd(f, g).is_one()) fail(Errc::InvalidInput, "reciprocity_check needs coprime inputs");
  if (!is_squarefree(f) || !is_squarefree(g)) fail(Errc::InvalidInput, "inputs must be squarefree");
  int lhs = jacobi_symbol(f, g);
  int rhs = jacobi_symbol(g, f);
  long long ex = ((f.F->q - 1) / 2) % 2;
  int sign = ((ex * f.deg() * g.deg()) % 2 == 0) ? 1 : -1;
  return lhs == rhs * sign;
}

int mobius(const Divisor& d) {
  if (!d.is_effective()) fail(Errc::InvalidInput, "mobius of non-effective divisor");
  if (!d.is_squarefree()) return 0;
  return d.coef.size() % 2 == 0 ? 1 : -1;
}

long long mobius_sum(long long q, int l) {
  // degree-l coefficient of (1-u)(1-qu)
  if (l == 0) return 1;
  if (l == 1) return -(q + 1);
  if (l == 2) return q;
  return 0;
}

}  // namespace d4lab
