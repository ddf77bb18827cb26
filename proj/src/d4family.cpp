#include "d4lab/d4family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace d4lab {

std::string galois_type_str(GaloisType t) {
  switch (t) {
    case GaloisType::V4: return "V4";
    case GaloisType::C4: return "C4";
    case GaloisType::D4: return "D4";
  }
  return "?";
}

std::string split_type_str(SplitType t) {
  switch (t) {
    case SplitType::S1111_11: return "(1111,11)";
    case SplitType::S211_11: return "(211,11)";
    case SplitType::S22_11: return "(22,11)";
    case SplitType::S22_2: return "(22,2)";
    case SplitType::S4_2: return "(4,2)";
    case SplitType::Ram: return "(ram)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Galois type by the square class of the norm

GaloisType galois_type(const QuadField& K, const QuadElement& beta) {
  Poly num = beta.A * beta.A - beta.B * beta.B * K.D;
  if (num.is_zero()) fail(Errc::NotQuartic, "norm of beta vanishes");
  const FieldCtx* F = K.F;
  Poly W = squarefree_part_odd(num);
  int lam = num.lc();
  if (W.is_one() && F->is_square(lam)) return GaloisType::V4;
  // N ~ D: odd part of num*D trivial and leading unit a square
  Poly WD = squarefree_part_odd(num * K.D);
  if (WD.is_one() && F->is_square(F->mul(lam, K.u))) return GaloisType::C4;
  return GaloisType::D4;
}

// ---------------------------------------------------------------------------
// cycle type oracle (distinct-degree factorization at sampled places)

namespace {

// embedding of the coefficient field into the canonical residue field
// F_{p^{e*d}}: image of T under a root of P, plus image of the base
// generator when e > 1. Cached by (base, P).
struct EmbedData {
  const FieldCtx* E;
  int baseGen;  // image of the base-field generator x in E (e > 1), else 0
  int rootT;    // image of T (a root of P) in E
};

int embed_base_elem(const FieldCtx* base, const EmbedData& ed, int a) {
  if (base->e == 1) return ed.E->from_int(a);
  // evaluate the coefficient vector of a at baseGen
  auto c = base->coeffs(a);
  int r = 0;
  for (int i = base->e - 1; i >= 0; --i) r = ed.E->add(ed.E->mul(r, ed.baseGen), ed.E->from_int(c[i]));
  return r;
}

const EmbedData& embedding_for(const FieldCtx* base, const Poly& P) {
  static std::map<std::pair<const FieldCtx*, std::string>, EmbedData> cache;
  auto key = std::make_pair(base, poly_str(P));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  EmbedData ed;
  int d = P.deg();
  ed.E = FieldCtx::get(base->p, base->e * d);
  ed.baseGen = 0;
  if (base->e > 1) {
    // smallest root in E of the base modulus
    bool found = false;
    for (int a = 0; a < ed.E->q && !found; ++a) {
      int v = 0;
      for (int i = base->e; i >= 0; --i)
        v = ed.E->add(ed.E->mul(v, a), ed.E->from_int(base->modulus[i]));
      if (v == 0) {
        ed.baseGen = a;
        found = true;
      }
    }
    if (!found) fail(Errc::InternalInconsistency, "no embedding of coefficient field");
  }
  ed.rootT = -1;
  for (int a = 0; a < ed.E->q; ++a) {
    int v = 0;
    for (int i = P.deg(); i >= 0; --i)
      v = ed.E->add(ed.E->mul(v, a), embed_base_elem(base, ed, P.c[i]));
    if (v == 0) {
      ed.rootT = a;
      break;
    }
  }
  (void)d;
  if (ed.rootT < 0) fail(Errc::InternalInconsistency, "no root of place polynomial in residue field");
  return cache.emplace(key, ed).first->second;
}

// evaluate a polynomial in T at the embedded root, landing in E
int embed_poly(const FieldCtx* base, const EmbedData& ed, const Poly& f) {
  int r = 0;
  for (int i = f.deg(); i >= 0; --i)
    r = ed.E->add(ed.E->mul(r, ed.rootT), embed_base_elem(base, ed, f.coeff(i)));
  return r;
}

// cycle type of x^4 + a x^2 + b over the field E: returns sorted degree list
std::vector<int> quartic_cycle_type(const FieldCtx* E, int a, int b) {
  Poly m(E);
  m.c = {b, 0, a, 0, 1};
  m.trim();
  if (m.deg() != 4) fail(Errc::InternalInconsistency, "quartic degenerated");
  std::vector<int> degs;
  Poly g = m;
  Poly x = poly_T(E);
  Poly h = x % g;
  int d = 0;
  while (g.deg() > 0) {
    ++d;
    if (2 * d > g.deg()) {
      degs.push_back(g.deg());
      break;
    }
    h = powmod(h, (unsigned long long)E->q, g);
    Poly gd = gcd(h - x, g);
    if (gd.deg() > 0) {
      for (int i = 0; i < gd.deg() / d; ++i) degs.push_back(d);
      g = g / gd;
      if (g.deg() == 0) break;
      h = h % g;
    }
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

}  // namespace

GaloisType cycle_type_oracle(const QuadField& K, const QuadElement& beta, int max_deg) {
  const FieldCtx* F = K.F;
  // minimal polynomial of c*sqrt(beta): x^4 - 2cA x^2 + c^2 (A^2 - B^2 D)
  Poly a = -(beta.A * beta.c + beta.A * beta.c);
  Poly num = beta.A * beta.A - beta.B * beta.B * K.D;
  if (num.is_zero() || beta.B.is_zero())
    fail(Errc::NotQuartic, "oracle needs a quartic generator with B != 0");
  Poly b = beta.c * beta.c * num;
  Poly bad = num * beta.c * beta.B * K.D;  // places dividing this are skipped
  // keep the residue fields within the table cap
  while (max_deg > 1 && std::pow(double(F->q), double(max_deg)) > 2187.0) --max_deg;

  bool seen4 = false, seen211 = false, seen31 = false;
  int samples = 0;
  for (int d = 1; d <= max_deg; ++d) {
    for (auto& P : monic_irreducibles(F, d)) {
      if ((bad % P).is_zero()) continue;
      const EmbedData& ed = embedding_for(F, P);
      int ae = embed_poly(F, ed, a);
      int be = embed_poly(F, ed, b);
      auto ct = quartic_cycle_type(ed.E, ae, be);
      ++samples;
      if (ct == std::vector<int>{4}) seen4 = true;
      else if (ct == std::vector<int>{1, 1, 2}) seen211 = true;
      else if (ct == std::vector<int>{1, 3}) seen31 = true;
      if (seen4 && seen211) return GaloisType::D4;
    }
  }
  if (samples == 0) fail(Errc::InternalInconsistency, "cycle type oracle found no usable place");
  if (seen31) fail(Errc::InternalInconsistency, "cycle type 31 observed: not in V4/C4/D4");
  if (seen4) return GaloisType::C4;
  return GaloisType::V4;
}

// ---------------------------------------------------------------------------
// flip

int j_factor_exponent(const QuadField& K, const RelDisc& rd) {
  (void)K;
  // base places unramified in K with EVERY place of K above them ramified in
  // L: a split pair with both places present, or an inert place (whose
  // beta-valuation can be odd when v(N(beta)) = 2 mod 4)
  int t = 0;
  for (size_t i = 0; i < rd.places.size(); ++i) {
    const QPlace& p = rd.places[i];
    if (p.kind == QKind::Inert) {
      t += p.base.degree;
    } else if (p.kind == QKind::Split && i + 1 < rd.places.size()) {
      const QPlace& r = rd.places[i + 1];
      if (r.kind == QKind::Split && p.base == r.base && p.index == 0 && r.index == 1)
        t += p.base.degree;
    }
  }
  return t;
}

FlipResult flip(const QuadField& K, const QuadElement& beta, const RelDisc& rd) {
  const FieldCtx* F = K.F;
  Poly num = beta.A * beta.A - beta.B * beta.B * K.D;
  if (num.is_zero()) fail(Errc::NotQuartic, "flip of degenerate element");

  // num = lam * W * S^2 with W squarefree monic (odd part), S monic
  auto sfd = squarefree_decomposition(num);
  Poly W = poly_const(F, 1), S = poly_const(F, 1);
  for (auto& f : sfd) {
    if (f.mult % 2 == 1) W = W * f.p;
    for (int i = 0; i < f.mult / 2; ++i) S = S * f.p;
  }
  int lam = num.lc();
  if (W.is_one())
    fail(Errc::FlipValidationFailure,
         "flip subfield would be a constant extension (norm has trivial odd part)");
  bool twisted = !F->is_square(lam);
  int uprime = twisted ? F->alpha0 : 1;
  int mu = *F->sqrt(F->div(lam, uprime));  // lam/u' is a square by construction

  QuadField Kf = make_quadfield(F, twisted, W);
  int n2 = 2 * K.j + rd.delta;  // 2n: conductor exponent of (L, K)
  int tJ = j_factor_exponent(K, rd);

  for (int attempt = 0; attempt < 2; ++attempt) {
    // beta' = (2A +- 2 mu S sqrt(D')) / c
    Poly Bf = S * F->mul(mu, F->from_int(2));
    if (attempt == 1) Bf = -Bf;
    Poly Af = beta.A * F->from_int(2);
    QuadElement bf = make_quad_element(Af, Bf, beta.c);
    RelDisc rdf = rel_discriminant(Kf, bf);
    int n2f = 2 * Kf.j + rdf.delta;
    int tJf = j_factor_exponent(Kf, rdf);
    // conductor preserved, identity C = |Disc K| |Disc K'| J, and J symmetric
    if (n2f == n2 && 2 * K.j + 2 * Kf.j + 2 * tJ == n2 && tJf == tJ) {
      FlipResult r;
      r.Kf = Kf;
      r.betaf = bf;
      r.jf = Kf.j;
      r.tJ = tJ;
      r.primary = attempt == 0;
      return r;
    }
  }
  fail(Errc::FlipValidationFailure, "no flip candidate satisfied the conductor identity");
}

// ---------------------------------------------------------------------------
// splitting types

SplitType splitting_type(const QuadField& K, const QuadElement& beta, const Place& P) {
  int s = chi_base(K, P);
  if (s == 0) return SplitType::Ram;
  auto above = places_above(K, P);
  if (s == 1) {
    int c0 = chi_rel(K, beta, above[0]);
    int c1 = chi_rel(K, beta, above[1]);
    if (c0 == 0 || c1 == 0) return SplitType::Ram;
    if (c0 == 1 && c1 == 1) return SplitType::S1111_11;
    if (c0 == -1 && c1 == -1) return SplitType::S22_11;
    return SplitType::S211_11;
  }
  int c = chi_rel(K, beta, above[0]);
  if (c == 0) return SplitType::Ram;
  return c == 1 ? SplitType::S22_2 : SplitType::S4_2;
}

bool split_correspondence_check(const QuarticPair& pair, const Place& P) {
  SplitType t1 = splitting_type(*pair.K, pair.beta, P);
  SplitType t2 = splitting_type(*pair.Kf, pair.betaf, P);
  if (t1 == SplitType::Ram || t2 == SplitType::Ram) return true;  // vacuous
  if (t1 == t2) return t1 != SplitType::S22_2 && t1 != SplitType::S211_11;
  return (t1 == SplitType::S22_2 && t2 == SplitType::S211_11) ||
         (t1 == SplitType::S211_11 && t2 == SplitType::S22_2);
}

// ---------------------------------------------------------------------------
// family enumeration

namespace {

struct Cand {
  Poly A, B;
  RelDisc rd;
};

// exact square root of a polynomial, if it is a perfect square (char != 2)
std::optional<Poly> poly_sqrt(const Poly& p) {
  const FieldCtx* F = p.F;
  if (p.is_zero()) return poly_zero(F);
  int n = p.deg();
  if (n % 2 != 0) return std::nullopt;
  auto lead = F->sqrt(p.lc());
  if (!lead) return std::nullopt;
  int m = n / 2;
  Poly s(F);
  s.c.assign(m + 1, 0);
  s.c[m] = *lead;
  int inv2l = F->inv(F->mul(F->from_int(2), s.c[m]));
  for (int i = m - 1; i >= 0; --i) {
    // coefficient of T^{m+i} in s^2: 2 s_m s_i + sum over a+b = m+i, i<a,b<m
    int acc = p.coeff(m + i);
    for (int a = i + 1; a < m; ++a) {
      int b = m + i - a;
      if (b <= i || b >= m || b <= a) continue;
      acc = F->sub(acc, F->mul(F->from_int(2), F->mul(s.c[a], s.c[b])));
    }
    if ((m + i) % 2 == 0 && (m + i) / 2 > i && (m + i) / 2 < m) {
      int h = (m + i) / 2;
      acc = F->sub(acc, F->mul(s.c[h], s.c[h]));
    }
    s.c[i] = F->mul(acc, inv2l);
  }
  if (s * s == p) return s;
  return std::nullopt;
}

// is the nonzero polynomial x a square in k* = F_q(T)*?
inline bool is_poly_square(const Poly& x) { return poly_sqrt(x).has_value(); }

// is A + B sqrt(D) (nonzero) a square in K*? If beta = (x + y sqrt(D))^2
// then x^2 and D y^2 are the roots (A +- s)/2 of z^2 - A z + D B^2 / 4,
// with s = sqrt(A^2 - B^2 D) in k.
bool is_square_in_K(const QuadField& K, const Poly& A, const Poly& B) {
  const FieldCtx* F = K.F;
  if (B.is_zero())
    return is_poly_square(A) || is_poly_square(A * K.D);
  Poly N = A * A - B * B * K.D;
  if (N.is_zero()) return false;
  auto s = poly_sqrt(N);
  if (!s) return false;
  int inv2 = F->inv(F->from_int(2));
  return is_poly_square((A + *s) * inv2) || is_poly_square((A - *s) * inv2);
}

// beta1 and beta2 generate the same square class iff beta1 * beta2 in K*^2
bool same_class(const QuadField& K, const Cand& c1, bool conj1, const Cand& c2) {
  Poly B1 = conj1 ? -c1.B : c1.B;
  Poly A = c1.A * c2.A + B1 * c2.B * K.D;
  Poly B = c1.A * c2.B + c2.A * B1;
  if (A.is_zero() && B.is_zero()) return false;
  return is_square_in_K(K, A, B);
}

std::string encode_reldisc(const RelDisc& rd, bool conj_o) {
  std::vector<QPlace> ps = rd.places;
  if (conj_o)
    for (auto& p : ps) p = conjugate(p);
  std::sort(ps.begin(), ps.end(),
            [](const QPlace& a, const QPlace& b) { return qplace_cmp(a, b) < 0; });
  std::ostringstream os;
  for (auto& p : ps) os << qplace_str(p) << ";";
  return os.str();
}

struct ClassEnumResult {
  std::vector<Cand> classes;  // canonical representatives, deterministic order
  unsigned long long candidates = 0;
};

// Enumerate square classes beta = A + B sqrt(D) (c = 1) over K with relative
// discriminant degree exactly d. d4_only keeps D4 classes and skips B = 0.
ClassEnumResult enumerate_beta_classes(const QuadField& K, int d, bool d4_only,
                                       const FamilyOptions& opt) {
  const FieldCtx* F = K.F;
  int degF = K.Fpoly.deg();
  // Riemann-Roch style box: deg N(beta) <= d + 2g + 2 = d + deg F gives
  // deg A <= (d + deg F)/2, deg B <= d/2; saturation rounds verify it.
  int aMax = (d + degF + 1) / 2 + opt.box_slack;
  int bMax = (d + 1) / 2 + opt.box_slack;
  int aCap = d + 2 * K.genus + 2 + degF / 2;
  int bCap = d + 2 * K.genus + 2;

  ClassEnumResult res;
  std::map<std::string, std::vector<Cand>> classes;  // relDisc key -> class reps

  auto scan_box = [&](int aM, int bM, int aPrev, int bPrev) {
    bool found_new = false;
    // iterate B: zero (unless d4_only), then lc in {1, alpha0} monic-scaled
    std::vector<Poly> Bs;
    if (!d4_only) Bs.push_back(poly_zero(F));
    for (int degB = 0; degB <= bM; ++degB) {
      unsigned long long total = 1;
      for (int i = 0; i < degB; ++i) total *= (unsigned long long)F->q;
      for (unsigned long long nn = 0; nn < total; ++nn) {
        Poly h(F);
        h.c.assign(degB + 1, 0);
        unsigned long long rem = nn;
        for (int i = 0; i < degB; ++i) {
          unsigned long long place = 1;
          for (int t = 0; t < degB - 1 - i; ++t) place *= (unsigned long long)F->q;
          h.c[i] = int(rem / place);
          rem %= place;
        }
        h.c[degB] = 1;
        Bs.push_back(h);
        Poly ht = h * F->alpha0;
        Bs.push_back(ht);
      }
    }
    for (auto& B : Bs) {
      Poly B2D = B * B * K.D;
      for (int degA = -1; degA <= aM; ++degA) {
        unsigned long long total = 1;
        for (int i = 0; i < std::max(0, degA); ++i) total *= (unsigned long long)F->q;
        unsigned long long count = degA < 0 ? 1 : total * (F->q - 1);
        for (unsigned long long nn = 0; nn < count; ++nn) {
          // skip the sub-box already scanned in a previous round
          if (degA <= aPrev && B.deg() <= bPrev) continue;
          Poly A(F);
          if (degA >= 0) {
            A.c.assign(degA + 1, 0);
            unsigned long long rem = nn;
            // leading coefficient 1..q-1, rest free
            A.c[degA] = int(rem % (F->q - 1)) + 1;
            rem /= (F->q - 1);
            for (int i = 0; i < degA; ++i) {
              unsigned long long place = 1;
              for (int t = 0; t < degA - 1 - i; ++t) place *= (unsigned long long)F->q;
              A.c[i] = int(rem / place);
              rem %= place;
            }
          }
          if (A.is_zero() && B.is_zero()) continue;
          ++res.candidates;
          if (res.candidates > opt.candidate_cap)
            fail(Errc::CapExceeded, "family enumeration candidate cap exceeded");
          // square factors of gcd(A,B) only duplicate classes
          if (!A.is_zero() && !B.is_zero()) {
            Poly g = gcd(A, B);
            if (g.deg() > 0 && !is_squarefree(g)) continue;
          }
          Poly num = A * A - B2D;
          if (num.is_zero()) continue;
          // odd part of num away from F must fit in the discriminant budget
          Poly O = squarefree_part_odd(num);
          Poly Og = O / gcd(O, K.Fpoly);
          if (Og.deg() > d) continue;
          QuadElement beta = make_quad_element(A, B, poly_const(F, 1));
          RelDisc rd = rel_discriminant(K, beta);
          if (rd.delta != d) continue;
          if (d4_only) {
            // O = 1 covers V4 (lam square) and non-geometric closures (the
            // flipped field would be a constant extension): both excluded
            if (O.is_one()) continue;
            int lam = num.lc();
            bool c4 = O == K.Fpoly && F->is_square(F->mul(lam, K.u));
            if (c4) continue;
          }
          Cand cand{A, B, rd};
          auto& bucket = classes[encode_reldisc(rd, false)];
          bool dup = false;
          for (auto& r : bucket)
            if (same_class(K, cand, false, r)) {
              // keep the smaller representative within the class
              if (poly_cmp(cand.A, r.A) < 0 ||
                  (poly_cmp(cand.A, r.A) == 0 && poly_cmp(cand.B, r.B) < 0)) {
                r.A = cand.A;
                r.B = cand.B;
              }
              dup = true;
              break;
            }
          if (!dup) {
            bucket.push_back(std::move(cand));
            found_new = true;
          }
        }
      }
    }
    return found_new;
  };

  scan_box(aMax, bMax, -2, -2);
  // saturation: always verify with at least one grown box; keep growing
  // while new classes keep appearing (up to the caps)
  int rounds = 0;
  bool grew = true;
  while (grew && rounds <= opt.max_saturation && (aMax < aCap || bMax < bCap)) {
    int aPrev = aMax, bPrev = bMax;
    aMax = std::min(aMax + 1, aCap);
    bMax = std::min(bMax + 1, bCap);
    grew = scan_box(aMax, bMax, aPrev, bPrev);
    ++rounds;
  }

  // flatten in deterministic order: relDisc key, then representative
  std::vector<Cand> all;
  for (auto& [k2, v] : classes) {
    std::sort(v.begin(), v.end(), [](const Cand& x, const Cand& y) {
      int c = poly_cmp(x.A, y.A);
      if (c != 0) return c < 0;
      return poly_cmp(x.B, y.B) < 0;
    });
    for (auto& c : v) all.push_back(std::move(c));
  }

  // canonical conjugate pairing: keep one representative per unordered
  // {class, conjugate class}; first (smallest) orientation wins
  std::vector<char> dropped(all.size(), 0);
  std::vector<Cand> kept;
  for (size_t i = 0; i < all.size(); ++i) {
    if (dropped[i]) continue;
    std::string ck = encode_reldisc(all[i].rd, true);
    for (size_t j2 = i + 1; j2 < all.size(); ++j2) {
      if (dropped[j2]) continue;
      if (encode_reldisc(all[j2].rd, false) != ck) continue;
      if (same_class(K, all[i], true, all[j2])) {
        dropped[j2] = 1;
        break;
      }
    }
    kept.push_back(std::move(all[i]));
  }
  res.classes = std::move(kept);
  return res;
}

}  // namespace

std::vector<QuarticPair> enumerate_family(const FieldCtx* F, int n, const FamilyOptions& opt) {
  if (n < 2) fail(Errc::InvalidInput, "family enumeration needs n >= 2");
  std::vector<QuarticPair> out;
  const double eps = 1e-9;
  for (int j = 1; j <= n; ++j) {
    // X^alpha < q^{2j} <= X^beta with X = q^{2n}
    if (!(j > n * opt.alpha + eps) || !(j <= n * opt.beta + eps)) continue;
    int d = 2 * n - 2 * j;
    // the conductor identity gives delta = 2 j' + 2 t_J >= 2 for every D4
    // pair, so the j = n stratum (delta = 0, L/K unramified) is empty
    if (d == 0) continue;
    for (auto& K : enumerate_quadfields(F, j)) {
      auto res = enumerate_beta_classes(K, d, true, opt);
      if (res.classes.empty()) continue;
      auto Kp = std::make_shared<QuadField>(K);
      for (auto& c : res.classes) {
        QuarticPair p;
        p.K = Kp;
        p.beta = make_quad_element(c.A, c.B, poly_const(F, 1));
        p.relDisc = c.rd;
        p.n = n;
        p.type = galois_type(K, p.beta);
        if (p.type != GaloisType::D4)
          fail(Errc::InternalInconsistency, "non-D4 class survived the filter");
        if (opt.build_flips) {
          FlipResult fr = flip(K, p.beta, p.relDisc);
          p.Kf = std::make_shared<QuadField>(fr.Kf);
          p.betaf = fr.betaf;
          p.jf = fr.jf;
          p.tJ = fr.tJ;
          p.flip_primary = fr.primary;
        }
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

double euler_product(long long q, int max_deg, bool plus_form) {
  // product over all places (including infinity) of degree <= max_deg
  double logp = 0.0;
  for (int d = 1; d <= max_deg; ++d) {
    // number of places of degree d (Moebius count, as a double), +1 at d = 1
    double cnt = 0.0;
    auto mu = [](int m) {
      int r = 1;
      for (int p2 = 2; p2 * p2 <= m; ++p2) {
        if (m % p2 == 0) {
          m /= p2;
          if (m % p2 == 0) return 0;
          r = -r;
        }
      }
      if (m > 1) r = -r;
      return r;
    };
    for (int m = 1; m <= d; ++m)
      if (d % m == 0 && mu(m) != 0) cnt += mu(m) * std::pow(double(q), double(d) / m);
    cnt /= d;
    if (d == 1) cnt += 1.0;  // infinite place
    double Qd = std::pow(double(q), double(d));
    double f = plus_form ? 1.0 + 1.0 / ((Qd + 1.0) * (Qd + 1.0))
                         : 1.0 - 1.0 / (Qd * Qd) - 2.0 / (Qd * Qd * Qd) +
                               2.0 / (Qd * Qd * Qd * Qd);
    logp += cnt * std::log(f);
  }
  return std::exp(logp);
}

std::pair<double, double> family_main_terms(long long q, int n, int max_deg) {
  double X = std::pow(double(q), 2.0 * n);
  double base = 2.0 * X * (n - 1);
  double qi = 1.0 / double(q);
  double plus = base * (1.0 - qi * qi) * (1.0 - qi * qi) * euler_product(q, max_deg, true);
  double minus = base / ((1.0 - qi) * (1.0 - qi)) * euler_product(q, max_deg, false);
  return {plus, minus};
}

FamilyCount count_family(const FieldCtx* F, int n, const FamilyOptions& opt, int euler_max_deg) {
  FamilyCount fc;
  fc.enumerated = enumerate_family(F, n, opt).size();
  auto [p, m] = family_main_terms(F->q, n, euler_max_deg);
  fc.main_plus = p;
  fc.main_minus = m;
  return fc;
}

std::vector<QuadElement> enumerate_rel_quad_classes(const QuadField& K, int d,
                                                    const FamilyOptions& opt) {
  if (d < 1) fail(Errc::InvalidInput, "need relative discriminant degree >= 1");
  auto res = enumerate_beta_classes(K, d, false, opt);
  std::vector<QuadElement> out;
  for (auto& c : res.classes)
    out.push_back(make_quad_element(c.A, c.B, poly_const(K.F, 1)));
  return out;
}

QuadCountRecord count_quad_ext_over(const QuadField& K, int r) {
  if (r < 1) fail(Errc::InvalidInput, "count_quad_ext_over needs r >= 1");
  FamilyOptions opt;
  auto res = enumerate_beta_classes(K, 2 * r, false, opt);
  QuadCountRecord rec;
  rec.count = res.classes.size();
  LPolynomial PK = zeta_numerator(K);
  double q = double(K.F->q);
  auto evalP = [&](double u) {
    double v = 0;
    for (int i = PK.N; i >= 0; --i) v = v * u + PK.b[i].get_d();
    return v;
  };
  double Y = std::pow(q, 2.0 * r);
  rec.main_term = 2.0 * Y * (1.0 - 1.0 / (q * q)) * evalP(1.0 / q) / evalP(1.0 / (q * q));
  return rec;
}

}  // namespace d4lab
