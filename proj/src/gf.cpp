#include "d4lab/gf.hpp"

#include <algorithm>
#include <sstream>

namespace d4lab {

namespace {

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; (long long)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr long long kMaxTableQ = 2187;  // table contexts capped here

}  // namespace

// ---------------------------------------------------------------------------
// FieldCtx

const FieldCtx* FieldCtx::get(int p, int e) {
  // single-threaded by design: interning needs no lock (build() recurses
  // into get() for the prime subfield)
  static std::map<std::pair<int, int>, std::unique_ptr<FieldCtx>> registry;
  auto key = std::make_pair(p, e);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second.get();
  auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
  ctx->build(p, e);
  auto* raw = ctx.get();
  registry.emplace(key, std::move(ctx));
  return raw;
}

void FieldCtx::build(int p_, int e_) {
  if (!is_prime_int(p_)) fail(Errc::InvalidInput, "field characteristic must be prime");
  if (e_ < 1) fail(Errc::InvalidInput, "field extension degree must be >= 1");
  p = p_;
  e = e_;
  q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxTableQ) fail(Errc::CapExceeded, "field size exceeds table cap");
  }
  if (e > 1) {
    // Find the canonically smallest monic irreducible of degree e over F_p.
    const FieldCtx* Fp = FieldCtx::get(p, 1);
    Poly m = find_irreducible(Fp, e);
    modulus = m.c;
  }

  // index -> coefficient vector over F_p
  auto idx_coeffs = [&](int a) {
    std::vector<int> c(e);
    for (int i = 0; i < e; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  };
  auto coeffs_idx = [&](const std::vector<int>& c) {
    int a = 0;
    for (int i = e - 1; i >= 0; --i) a = a * p + (i < int(c.size()) ? c[i] : 0);
    return a;
  };

  addt_.assign(size_t(q) * q, 0);
  mult_.assign(size_t(q) * q, 0);
  negt_.assign(q, 0);
  invt_.assign(q, 0);
  sqrtt_.assign(q, -1);

  for (int a = 0; a < q; ++a) {
    auto ca = idx_coeffs(a);
    std::vector<int> cn(e);
    for (int i = 0; i < e; ++i) cn[i] = (p - ca[i]) % p;
    negt_[a] = int16_t(coeffs_idx(cn));
    for (int b = 0; b <= a; ++b) {
      auto cb = idx_coeffs(b);
      std::vector<int> cs(e);
      for (int i = 0; i < e; ++i) cs[i] = (ca[i] + cb[i]) % p;
      int s = coeffs_idx(cs);
      addt_[size_t(a) * q + b] = addt_[size_t(b) * q + a] = int16_t(s);
      // multiply then reduce by modulus
      std::vector<int> prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      if (e > 1) {
        for (int i = 2 * e - 2; i >= e; --i) {
          int t = prod[i];
          if (t == 0) continue;
          prod[i] = 0;
          // x^i = x^{i-e} * (x^e) and x^e = -(modulus minus leading term)
          for (int j = 0; j < e; ++j)
            prod[i - e + j] = ((prod[i - e + j] - t * modulus[j]) % p + p) % p;
        }
      }
      prod.resize(e);
      int m = coeffs_idx(prod);
      mult_[size_t(a) * q + b] = mult_[size_t(b) * q + a] = int16_t(m);
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b)
      if (mult_[size_t(a) * q + b] == 1) {
        invt_[a] = int16_t(b);
        break;
      }
  }
  sqrtt_[0] = 0;
  for (int a = 0; a < q; ++a) {
    int s = mult_[size_t(a) * q + a];
    if (sqrtt_[s] < 0 || a < sqrtt_[s]) sqrtt_[s] = int16_t(a);
  }
  for (int a = 1; a < q; ++a)
    if (sqrtt_[a] < 0) {
      alpha0 = a;
      break;
    }
  if (alpha0 < 0) fail(Errc::InternalInconsistency, "no quadratic non-residue found (even q?)");
}

int FieldCtx::pow(int a, unsigned long long k) const {
  int r = 1, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

int FieldCtx::pth_root(int a) const {
  // Frobenius x -> x^p has order e; inverse is x -> x^{p^{e-1}}.
  unsigned long long k = 1;
  for (int i = 0; i < e - 1; ++i) k *= (unsigned long long)p;
  return pow(a, k);
}

int FieldCtx::from_int(long long n) const {
  long long r = n % p;
  if (r < 0) r += p;
  return int(r);
}

std::vector<int> FieldCtx::coeffs(int a) const {
  std::vector<int> c(e);
  for (int i = 0; i < e; ++i) {
    c[i] = a % p;
    a /= p;
  }
  return c;
}

int FieldCtx::from_coeffs(const std::vector<int>& c) const {
  if (int(c.size()) > e) fail(Errc::InvalidInput, "coefficient vector too long");
  long long a = 0;
  for (int i = e - 1; i >= 0; --i) {
    int ci = i < int(c.size()) ? c[i] : 0;
    if (ci < 0 || ci >= p) fail(Errc::InvalidInput, "coefficient out of range");
    a = a * p + ci;
  }
  return int(a);
}

std::string FieldCtx::elem_str(int a) const {
  if (e == 1) return std::to_string(a);
  std::ostringstream os;
  os << "[";
  auto c = coeffs(a);
  for (int i = 0; i < e; ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Poly basics

Poly poly_zero(const FieldCtx* F) { return Poly(F); }

Poly poly_const(const FieldCtx* F, int a) {
  Poly r(F);
  if (a != 0) r.c = {a};
  return r;
}

Poly poly_T(const FieldCtx* F) {
  Poly r(F);
  r.c = {0, 1};
  return r;
}

Poly poly_from_coeffs(const FieldCtx* F, const std::vector<int>& c) {
  for (int x : c)
    if (x < 0 || x >= F->q) fail(Errc::InvalidInput, "coefficient index out of range");
  return Poly(F, c);
}

bool operator==(const Poly& a, const Poly& b) { return a.F == b.F && a.c == b.c; }

int poly_cmp(const Poly& a, const Poly& b) {
  require_same_ctx(a.F, b.F);
  if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
  return 0;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_ctx(a.F, b.F);
  const FieldCtx* F = a.F;
  Poly r(F);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F->add(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_ctx(a.F, b.F);
  const FieldCtx* F = a.F;
  Poly r(F);
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F->sub(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

Poly operator-(const Poly& a) {
  Poly r(a.F);
  r.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.F->neg(a.c[i]);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ctx(a.F, b.F);
  const FieldCtx* F = a.F;
  if (a.is_zero() || b.is_zero()) return Poly(F);
  Poly r(F);
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    int ai = a.c[i];
    if (!ai) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (!b.c[j]) continue;
      r.c[i + j] = F->add(r.c[i + j], F->mul(ai, b.c[j]));
    }
  }
  return r;
}

Poly operator*(const Poly& a, int scalar) {
  if (scalar == 0) return Poly(a.F);
  Poly r(a.F);
  r.c.resize(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.F->mul(a.c[i], scalar);
  return r;
}

Poly shift(const Poly& a, int k) {
  if (a.is_zero() || k == 0) return a;
  Poly r(a.F);
  r.c.assign(a.c.size() + k, 0);
  std::copy(a.c.begin(), a.c.end(), r.c.begin() + k);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same_ctx(a.F, b.F);
  const FieldCtx* F = a.F;
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  if (a.deg() < b.deg()) return {Poly(F), a};
  Poly rem = a;
  Poly quo(F);
  quo.c.assign(a.deg() - b.deg() + 1, 0);
  int invlc = F->inv(b.lc());
  for (int i = a.deg(); i >= b.deg(); --i) {
    int cf = rem.coeff(i);
    if (!cf) continue;
    int t = F->mul(cf, invlc);
    quo.c[i - b.deg()] = t;
    for (int j = 0; j <= b.deg(); ++j)
      rem.c[i - b.deg() + j] = F->sub(rem.c[i - b.deg() + j], F->mul(t, b.c[j]));
  }
  rem.trim();
  quo.trim();
  return {quo, rem};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return a * a.F->inv(a.lc());
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return monic(x);
}

Poly ext_gcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
  const FieldCtx* F = a.F;
  Poly r0 = a, r1 = b;
  Poly u0 = poly_const(F, 1), u1 = poly_zero(F);
  Poly v0 = poly_zero(F), v1 = poly_const(F, 1);
  while (!r1.is_zero()) {
    auto [qt, rm] = divmod(r0, r1);
    Poly u2 = u0 - qt * u1;
    Poly v2 = v0 - qt * v1;
    r0 = r1; r1 = rm;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  if (!r0.is_zero() && !r0.is_monic()) {
    int s = F->inv(r0.lc());
    r0 = r0 * s;
    u0 = u0 * s;
    v0 = v0 * s;
  }
  u = u0;
  v = v0;
  return r0;
}

Poly derivative(const Poly& a) {
  Poly r(a.F);
  if (a.deg() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) {
    int m = int(i % a.F->p);
    int s = 0;
    for (int t = 0; t < m; ++t) s = a.F->add(s, a.c[i]);
    r.c[i - 1] = s;
  }
  r.trim();
  return r;
}

int eval(const Poly& a, int x) {
  const FieldCtx* F = a.F;
  int r = 0;
  for (int i = a.deg(); i >= 0; --i) r = F->add(F->mul(r, x), a.c[i]);
  return r;
}

Poly powmod(const Poly& base, unsigned long long k, const Poly& mod) {
  Poly r = poly_const(base.F, 1) % mod;
  Poly b = base % mod;
  while (k) {
    if (k & 1) r = (r * b) % mod;
    b = (b * b) % mod;
    k >>= 1;
  }
  return r;
}

Poly pth_root_poly(const Poly& a) {
  const FieldCtx* F = a.F;
  int p = F->p;
  Poly r(F);
  if (a.is_zero()) return r;
  r.c.assign(a.deg() / p + 1, 0);
  for (int i = 0; i <= a.deg(); ++i) {
    if (a.coeff(i) == 0) continue;
    if (i % p != 0) fail(Errc::InternalInconsistency, "polynomial is not a p-th power");
    r.c[i / p] = F->pth_root(a.c[i]);
  }
  r.trim();
  return r;
}

Poly reverse(const Poly& a) {
  Poly r(a.F);
  r.c.assign(a.c.rbegin(), a.c.rend());
  r.trim();
  return r;
}

int valuation_at(const Poly& a, const Poly& P, Poly* unit_out) {
  if (a.is_zero()) fail(Errc::InvalidInput, "valuation of zero polynomial");
  Poly cur = a;
  int v = 0;
  for (;;) {
    auto [qt, rm] = divmod(cur, P);
    if (!rm.is_zero()) break;
    cur = qt;
    ++v;
  }
  if (unit_out) *unit_out = cur;
  return v;
}

std::string poly_str(const Poly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  const FieldCtx* F = a.F;
  std::ostringstream os;
  bool first = true;
  for (int i = a.deg(); i >= 0; --i) {
    int ci = a.coeff(i);
    if (!ci) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || ci != 1) os << F->elem_str(ci);
    if (i > 0) {
      if (ci != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly poly_parse_coeffs(const FieldCtx* F, const std::string& s) {
  std::vector<int> c;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    long long v = 0;
    try {
      v = std::stoll(tok);
    } catch (...) {
      fail(Errc::InvalidInput, "bad coefficient token: " + tok);
    }
    if (v < 0 || v >= F->q) fail(Errc::InvalidInput, "coefficient index out of range: " + tok);
    c.push_back(int(v));
  }
  return Poly(F, c);
}

// ---------------------------------------------------------------------------
// Irreducibility / factorization

bool is_squarefree(const Poly& a) {
  if (a.deg() <= 0) return !a.is_zero();
  return gcd(a, derivative(a)).is_one();
}

bool is_irreducible(const Poly& a) {
  int d = a.deg();
  if (d <= 0) return false;
  if (d == 1) return true;
  const FieldCtx* F = a.F;
  Poly f = monic(a);
  Poly x = poly_T(F) % f;
  // t = x^{q^m} mod f, computed by iterated Frobenius.
  Poly t = x;
  std::vector<Poly> frob(d + 1);  // frob[m] = x^{q^m} mod f for needed m
  for (int m = 1; m <= d; ++m) {
    t = powmod(t, (unsigned long long)F->q, f);
    frob[m] = t;
  }
  if (!(frob[d] == x)) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0 || !is_prime_int(l)) continue;
    Poly g = gcd(frob[d / l] - x, f);
    if (!g.is_one()) return false;
  }
  return true;
}

std::vector<PolyFactor> squarefree_decomposition(const Poly& a) {
  if (a.is_zero()) fail(Errc::InvalidInput, "squarefree decomposition of zero");
  std::vector<PolyFactor> out;
  // Recursive char-p squarefree decomposition.
  struct Rec {
    std::vector<PolyFactor>* out;
    void run(Poly f, int m) {
      if (f.deg() < 1) return;
      Poly fp = derivative(f);
      Poly c = fp.is_zero() ? f : gcd(f, fp);
      Poly w = fp.is_zero() ? poly_const(f.F, 1) : f / c;
      int i = 1;
      while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.deg() > 0) out->push_back({z, i * m});
        ++i;
        w = y;
        c = c / y;
      }
      if (c.deg() > 0) run(pth_root_poly(c), m * f.F->p);
    }
  };
  Rec rec{&out};
  rec.run(monic(a), 1);
  std::sort(out.begin(), out.end(),
            [](const PolyFactor& x, const PolyFactor& y) { return poly_less(x.p, y.p); });
  return out;
}

Poly squarefree_part_odd(const Poly& a) {
  Poly r = poly_const(a.F, 1);
  for (auto& f : squarefree_decomposition(a))
    if (f.mult % 2 == 1) r = r * f.p;
  return r;
}

namespace {

// Split a product of distinct monic irreducibles, all of degree d.
void equal_degree_split(const Poly& f, int d, std::vector<Poly>& out, uint64_t seed) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  const FieldCtx* F = f.F;
  // (q^d - 1) / 2
  unsigned long long qd = 1;
  for (int i = 0; i < d; ++i) {
    if (qd > (1ull << 62) / (unsigned long long)F->q)
      fail(Errc::CapExceeded, "equal-degree split: field too large");
    qd *= (unsigned long long)F->q;
  }
  unsigned long long ex = (qd - 1) / 2;

  auto try_split = [&](const Poly& h) -> bool {
    Poly g = gcd(h, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_split(g, d, out, seed);
      equal_degree_split(f / g, d, out, seed);
      return true;
    }
    Poly r = powmod(h, ex, f);
    Poly g2 = gcd(r - poly_const(F, 1), f);
    if (g2.deg() > 0 && g2.deg() < f.deg()) {
      equal_degree_split(g2, d, out, seed);
      equal_degree_split(f / g2, d, out, seed);
      return true;
    }
    return false;
  };

  const unsigned long long kDetCap = 1u << 20;
  if (qd < kDetCap) {
    // Deterministic scan over candidates in canonical order: monic
    // polynomials of degree 1, 2, ... with increasing coefficient vectors.
    for (int hd = 1; hd <= std::max(1, 2 * d); ++hd) {
      unsigned long long total = 1;
      for (int i = 0; i < hd; ++i) total *= (unsigned long long)F->q;
      for (unsigned long long n = 0; n < total; ++n) {
        Poly h(F);
        h.c.assign(hd + 1, 0);
        h.c[hd] = 1;
        unsigned long long m = n;
        // canonical order: c0 most significant
        for (int i = hd - 1; i >= 0; --i) {
          unsigned long long div = 1;
          for (int t = 0; t < i; ++t) div *= (unsigned long long)F->q;
          (void)div;
        }
        // decode digits with c0 slowest-moving
        unsigned long long rem = n;
        for (int i = 0; i < hd; ++i) {
          unsigned long long place = 1;
          for (int t = 0; t < hd - 1 - i; ++t) place *= (unsigned long long)F->q;
          h.c[i] = int(rem / place);
          rem %= place;
        }
        (void)m;
        if (try_split(h)) return;
      }
    }
    fail(Errc::InternalInconsistency, "deterministic equal-degree split exhausted candidates");
  } else {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (f.deg() + 1)));
    for (int iter = 0; iter < 4096; ++iter) {
      Poly h(F);
      h.c.resize(f.deg());
      for (auto& ci : h.c) ci = int(rng() % (unsigned long long)F->q);
      h.trim();
      if (h.deg() < 1) continue;
      if (try_split(h)) return;
    }
    fail(Errc::InternalInconsistency, "randomized equal-degree split failed");
  }
}

}  // namespace

std::vector<PolyFactor> factorize(const Poly& a, int* unit, uint64_t seed) {
  if (a.is_zero()) fail(Errc::InvalidInput, "factorize zero polynomial");
  if (unit) *unit = a.lc();
  std::vector<PolyFactor> out;
  if (a.deg() < 1) return out;
  const FieldCtx* F = a.F;
  for (auto& sf : squarefree_decomposition(a)) {
    // distinct-degree on the squarefree piece
    Poly g = sf.p;
    Poly x = poly_T(F);
    Poly h = x % g;
    int d = 0;
    while (g.deg() > 0) {
      ++d;
      if (2 * d > g.deg()) {
        out.push_back({g, sf.mult});
        break;
      }
      h = powmod(h, (unsigned long long)F->q, g);
      Poly gd = gcd(h - x, g);
      if (gd.deg() > 0) {
        std::vector<Poly> irr;
        equal_degree_split(gd, d, irr, seed);
        for (auto& pp : irr) out.push_back({pp, sf.mult});
        g = g / gd;
        h = h % g;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& x2, const PolyFactor& y2) {
    return poly_less(x2.p, y2.p);
  });
  return out;
}

Poly find_irreducible(const FieldCtx* F, int d) {
  if (d < 1) fail(Errc::InvalidInput, "find_irreducible: degree must be >= 1");
  unsigned long long total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > (1ull << 40)) fail(Errc::CapExceeded, "find_irreducible: search space too large");
    total *= (unsigned long long)F->q;
  }
  for (unsigned long long n = 0; n < total; ++n) {
    Poly h(F);
    h.c.assign(d + 1, 0);
    h.c[d] = 1;
    unsigned long long rem = n;
    for (int i = 0; i < d; ++i) {
      unsigned long long place = 1;
      for (int t = 0; t < d - 1 - i; ++t) place *= (unsigned long long)F->q;
      h.c[i] = int(rem / place);
      rem %= place;
    }
    if (is_irreducible(h)) return h;
  }
  fail(Errc::InternalInconsistency, "no irreducible polynomial found");
}

unsigned long long count_irreducibles(long long q, int d) {
  if (d < 1) fail(Errc::InvalidInput, "count_irreducibles: degree must be >= 1");
  auto mu = [](int n) {
    int r = 1;
    for (int p2 = 2; p2 * p2 <= n; ++p2) {
      if (n % p2 == 0) {
        n /= p2;
        if (n % p2 == 0) return 0;
        r = -r;
      }
    }
    if (n > 1) r = -r;
    return r;
  };
  long long acc = 0;
  for (int m = 1; m <= d; ++m) {
    if (d % m != 0) continue;
    int mu_m = mu(m);
    if (!mu_m) continue;
    unsigned long long pw = 1;
    for (int i = 0; i < d / m; ++i) {
      if (pw > (1ull << 62) / (unsigned long long)q)
        fail(Errc::CapExceeded, "count_irreducibles overflow");
      pw *= (unsigned long long)q;
    }
    acc += mu_m * (long long)pw;
  }
  return (unsigned long long)(acc / d);
}

const std::vector<Poly>& monic_irreducibles(const FieldCtx* F, int d) {
  static std::map<std::pair<const FieldCtx*, int>, std::vector<Poly>> cache;
  auto key = std::make_pair(F, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (d < 1 || d > 16) fail(Errc::CapExceeded, "monic_irreducibles: degree out of range");
  unsigned long long total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > (1ull << 26)) fail(Errc::CapExceeded, "monic_irreducibles: search space too large");
    total *= (unsigned long long)F->q;
  }
  std::vector<Poly> out;
  for (unsigned long long n = 0; n < total; ++n) {
    Poly h(F);
    h.c.assign(d + 1, 0);
    h.c[d] = 1;
    unsigned long long rem = n;
    for (int i = 0; i < d; ++i) {
      unsigned long long place = 1;
      for (int t = 0; t < d - 1 - i; ++t) place *= (unsigned long long)F->q;
      h.c[i] = int(rem / place);
      rem %= place;
    }
    if (is_irreducible(h)) out.push_back(h);
  }
  if (out.size() != count_irreducibles(F->q, d))
    fail(Errc::InternalInconsistency, "irreducible count mismatch");
  return cache.emplace(key, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Quotient ring helpers

Poly qmul(const Poly& a, const Poly& b, const Poly& M) { return (a * b) % M; }

Poly qinv(const Poly& a, const Poly& M) {
  Poly u(a.F), v(a.F);
  Poly g = ext_gcd(a % M, M, u, v);
  if (!g.is_one()) fail(Errc::DivisionByZero, "element not invertible in quotient ring");
  return u % M;
}

namespace {
unsigned long long residue_field_order(const Poly& P) {
  unsigned long long Q = 1;
  for (int i = 0; i < P.deg(); ++i) {
    if (Q > (1ull << 62) / (unsigned long long)P.F->q)
      fail(Errc::CapExceeded, "residue field too large");
    Q *= (unsigned long long)P.F->q;
  }
  return Q;
}
}  // namespace

int euler_symbol(const Poly& a, const Poly& P) {
  const FieldCtx* F = a.F;
  Poly r = a % P;
  if (r.is_zero()) fail(Errc::InvalidInput, "euler_symbol of zero residue");
  unsigned long long Q = residue_field_order(P);
  Poly s = powmod(r, (Q - 1) / 2, P);
  if (s.is_one()) return 1;
  if (s.deg() == 0 && s.c[0] == F->neg(1)) return -1;
  fail(Errc::InternalInconsistency, "euler_symbol: unexpected power value");
}

std::optional<Poly> quot_sqrt(const Poly& a, const Poly& P) {
  const FieldCtx* F = a.F;
  Poly r = a % P;
  if (r.is_zero()) return poly_zero(F);
  if (euler_symbol(r, P) != 1) return std::nullopt;
  unsigned long long Q = residue_field_order(P);
  // Tonelli-Shanks in F_Q. Write Q - 1 = 2^s * t with t odd.
  unsigned long long t = Q - 1;
  int s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Poly root(F);
  if (s == 1) {
    root = powmod(r, (Q + 1) / 4, P);
  } else {
    // deterministic non-residue search in canonical element order:
    // constants first (via alpha0), then low-degree polynomials.
    Poly z(F);
    bool found = false;
    for (int d = 0; d <= P.deg() && !found; ++d) {
      unsigned long long total = 1;
      for (int i = 0; i <= d; ++i) total *= (unsigned long long)F->q;
      for (unsigned long long n = (d == 0 ? 1 : total / F->q); n < total && !found; ++n) {
        Poly h(F);
        h.c.assign(d + 1, 0);
        unsigned long long rem = n;
        for (int i = d; i >= 0; --i) {
          unsigned long long place = 1;
          for (int tt = 0; tt < i; ++tt) place *= (unsigned long long)F->q;
          h.c[d - i] = int(rem / place);
          rem %= place;
        }
        h.trim();
        if (h.is_zero()) continue;
        if (euler_symbol(h, P) == -1) {
          z = h;
          found = true;
        }
      }
    }
    if (!found) fail(Errc::InternalInconsistency, "no quadratic non-residue in residue field");
    Poly c = powmod(z, t, P);
    Poly x = powmod(r, (t + 1) / 2, P);
    Poly b = powmod(r, t, P);
    int m = s;
    while (!b.is_one()) {
      Poly b2 = b;
      int i = 0;
      while (!b2.is_one()) {
        b2 = qmul(b2, b2, P);
        ++i;
        if (i >= m) fail(Errc::InternalInconsistency, "Tonelli-Shanks failure");
      }
      Poly g = c;
      for (int j = 0; j < m - i - 1; ++j) g = qmul(g, g, P);
      x = qmul(x, g, P);
      c = qmul(g, g, P);
      b = qmul(b, c, P);
      m = i;
    }
    root = x;
  }
  if (!(qmul(root, root, P) == r))
    fail(Errc::InternalInconsistency, "sqrt verification failed");
  Poly other = (P - root) % P;
  return poly_less(other, root) ? other : root;
}

}  // namespace d4lab
