#include "d4lab/quadfield.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace d4lab {

namespace {
constexpr int kInfVal = INT_MAX / 4;  // valuation of a zero component
}

// ---------------------------------------------------------------------------
// QuadField

Divisor QuadField::disc() const {
  Divisor d;
  for (auto& p : Ffactors) d.add(Place::finite_place(p), 1);
  if (inf_ramified) d.add(Place::infinity(F), 1);
  return d;
}

std::string QuadField::key() const {
  std::ostringstream os;
  os << "q" << F->q << ":u" << u << ":F";
  for (size_t i = 0; i < Fpoly.c.size(); ++i) os << (i ? "," : "") << Fpoly.c[i];
  return os.str();
}

QuadField make_quadfield(const FieldCtx* F, bool twisted, const Poly& Fpoly) {
  if (Fpoly.deg() < 1 || !Fpoly.is_monic() || !is_squarefree(Fpoly))
    fail(Errc::InvalidInput, "quadratic field needs a monic squarefree nonconstant F");
  require_same_ctx(F, Fpoly.F);
  QuadField K;
  K.F = F;
  K.twisted = twisted;
  K.u = twisted ? F->alpha0 : 1;
  K.Fpoly = Fpoly;
  K.D = Fpoly * K.u;
  K.inf_ramified = Fpoly.deg() % 2 == 1;
  K.j = (Fpoly.deg() + 1) / 2;
  K.genus = K.j - 1;
  for (auto& f : factorize(Fpoly)) K.Ffactors.push_back(f.p);
  return K;
}

int chi_base(const QuadField& K, const Place& P) {
  if (P.infinite) {
    if (K.inf_ramified) return 0;
    return K.F->is_square(K.u) ? 1 : -1;
  }
  return residue_symbol(K.D, P);
}

// ---------------------------------------------------------------------------
// enumeration of quadratic fields

namespace {

bool passes_filter(const QuadFieldFilter& filt, const Poly& Fpoly, bool /*twisted*/) {
  bool inf_ram = Fpoly.deg() % 2 == 1;
  if (filt.ramified_at) {
    for (auto& [p, m] : filt.ramified_at->coef) {
      if (m <= 0) continue;
      if (p.infinite) {
        if (!inf_ram) return false;
      } else if (!(Fpoly % p.prime).is_zero()) {
        return false;
      }
    }
  }
  if (filt.unramified_at) {
    for (auto& [p, m] : filt.unramified_at->coef) {
      if (m <= 0) continue;
      if (p.infinite) {
        if (inf_ram) return false;
      } else if ((Fpoly % p.prime).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

template <typename Fn>
void scan_quadfields(const FieldCtx* F, int j, const QuadFieldFilter& filter, Fn&& fn) {
  if (j < 1) fail(Errc::InvalidInput, "quadratic field enumeration needs j >= 1");
  for (int twisted = 0; twisted <= 1; ++twisted) {
    for (int degF : {2 * j - 1, 2 * j}) {
      unsigned long long total = 1;
      for (int i = 0; i < degF; ++i) {
        if (total > (1ull << 26)) fail(Errc::CapExceeded, "quadfield scan too large");
        total *= (unsigned long long)F->q;
      }
      for (unsigned long long n = 0; n < total; ++n) {
        Poly h(F);
        h.c.assign(degF + 1, 0);
        h.c[degF] = 1;
        unsigned long long rem = n;
        for (int i = 0; i < degF; ++i) {
          unsigned long long place = 1;
          for (int t = 0; t < degF - 1 - i; ++t) place *= (unsigned long long)F->q;
          h.c[i] = int(rem / place);
          rem %= place;
        }
        if (!is_squarefree(h)) continue;
        if (!passes_filter(filter, h, twisted)) continue;
        fn(twisted != 0, h);
      }
    }
  }
}

}  // namespace

std::vector<QuadField> enumerate_quadfields(const FieldCtx* F, int j,
                                            const QuadFieldFilter& filter) {
  std::vector<QuadField> out;
  scan_quadfields(F, j, filter,
                  [&](bool tw, const Poly& h) { out.push_back(make_quadfield(F, tw, h)); });
  return out;
}

unsigned long long count_quadfields(const FieldCtx* F, int j, const QuadFieldFilter& filter) {
  unsigned long long n = 0;
  scan_quadfields(F, j, filter, [&](bool, const Poly&) { ++n; });
  return n;
}

// ---------------------------------------------------------------------------
// places of K

bool operator==(const QPlace& a, const QPlace& b) {
  return a.base == b.base && a.kind == b.kind && a.index == b.index;
}

int qplace_cmp(const QPlace& a, const QPlace& b) {
  int c = place_cmp(a.base, b.base);
  if (c) return c;
  if (a.index != b.index) return a.index < b.index ? -1 : 1;
  return 0;
}

std::string qplace_str(const QPlace& p) {
  std::string k = p.kind == QKind::Split ? "split" : p.kind == QKind::Inert ? "inert" : "ram";
  std::string s = place_str(p.base) + ":" + k;
  if (p.kind == QKind::Split) s += std::to_string(p.index);
  return s;
}

QPlace conjugate(const QPlace& p) {
  QPlace r = p;
  if (p.kind == QKind::Split) r.index ^= 1;
  return r;
}

std::vector<QPlace> places_above(const QuadField& K, const Place& P) {
  const FieldCtx* F = K.F;
  std::vector<QPlace> out;
  QPlace base;
  base.base = P;
  if (!P.infinite) {
    base.Ploc = P.prime;
    base.Dloc = K.D;
    int s = residue_symbol(K.D, P);
    if (s == 0) {
      base.kind = QKind::Ramified;
      base.degK = P.degree;
      out.push_back(base);
    } else if (s == -1) {
      base.kind = QKind::Inert;
      base.degK = 2 * P.degree;
      out.push_back(base);
    } else {
      auto root = quot_sqrt(K.D % P.prime, P.prime);
      if (!root) fail(Errc::InternalInconsistency, "split place without square root");
      base.kind = QKind::Split;
      base.degK = P.degree;
      base.root0 = *root;
      base.index = 0;
      out.push_back(base);
      base.index = 1;
      out.push_back(base);
    }
  } else {
    // local coordinates S = 1/T; the infinite place becomes the place (S)
    base.Ploc = poly_T(F);
    if (K.inf_ramified) {
      base.Dloc = shift(reverse(K.D), 1);
      base.kind = QKind::Ramified;
      base.degK = 1;
      out.push_back(base);
    } else {
      base.Dloc = reverse(K.D);
      // split iff the leading unit u is a square in F_q
      if (F->is_square(K.u)) {
        int r0 = *F->sqrt(K.u);
        int r1 = F->neg(r0);
        base.kind = QKind::Split;
        base.degK = 1;
        base.root0 = poly_const(F, std::min(r0, r1));
        base.index = 0;
        out.push_back(base);
        base.index = 1;
        out.push_back(base);
      } else {
        base.kind = QKind::Inert;
        base.degK = 2;
        out.push_back(base);
      }
    }
  }
  return out;
}

std::vector<QPlace> enumerate_qplaces(const QuadField& K, int m) {
  if (m < 1) fail(Errc::InvalidInput, "place degree must be >= 1");
  std::vector<QPlace> out;
  auto consider = [&](const Place& P) {
    for (auto& qp : places_above(K, P))
      if (qp.degK == m) out.push_back(qp);
  };
  // split/ramified places over base places of degree m
  for (auto& P : enumerate_places(K.F, m)) consider(P);
  // inert places over base places of degree m/2
  if (m % 2 == 0)
    for (auto& P : enumerate_places(K.F, m / 2)) consider(P);
  std::sort(out.begin(), out.end(),
            [](const QPlace& a, const QPlace& b) { return qplace_cmp(a, b) < 0; });
  return out;
}

// ---------------------------------------------------------------------------
// QuadElement and local computations

QuadElement make_quad_element(const Poly& A, const Poly& B, const Poly& c) {
  if (c.is_zero()) fail(Errc::DivisionByZero, "quad element with zero denominator");
  require_same_ctx(A.F, B.F);
  require_same_ctx(A.F, c.F);
  QuadElement r{A, B, c};
  Poly g = gcd(gcd(r.A, r.B), r.c);
  if (g.deg() > 0) {
    r.A = r.A / g;
    r.B = r.B / g;
    r.c = r.c / g;
  }
  if (!r.c.is_monic()) {
    int s = r.c.F->inv(r.c.lc());
    r.A = r.A * s;
    r.B = r.B * s;
    r.c = r.c * s;
  }
  return r;
}

std::string quad_element_str(const QuadElement& b) {
  return "(" + poly_str(b.A) + " + (" + poly_str(b.B) + ")*sqrtD) / (" + poly_str(b.c) + ")";
}

QuadElement conj(const QuadElement& b) { return QuadElement{b.A, -b.B, b.c}; }

std::pair<Poly, Poly> norm_to_base(const QuadField& K, const QuadElement& b) {
  Poly num = b.A * b.A - b.B * b.B * K.D;
  Poly den = b.c * b.c;
  Poly g = gcd(num, den);
  if (g.deg() > 0) {
    num = num / g;
    den = den / g;
  }
  return {num, den};
}

namespace {

// Hensel lift: s0^2 = D mod P, lift to s^2 = D mod P^prec with s = s0 mod P.
Poly hensel_sqrt(const Poly& D, const Poly& P, const Poly& s0, int prec) {
  Poly s = s0;
  int m = 1;
  while (m < prec) {
    int m2 = std::min(2 * m, prec);
    Poly PM = poly_const(P.F, 1);
    for (int i = 0; i < m2; ++i) PM = PM * P;
    Poly twos = (s + s) % PM;
    Poly inv2s = qinv(twos, PM);
    s = qmul(qmul(s, s, PM) + D % PM, inv2s, PM);
    m = m2;
  }
  return s;
}

// Degree-2 extension ring (F_q[T]/P)[y]/(y^2 - Dbar), used for inert places.
struct Q2Elem {
  Poly a, b;
};

Q2Elem q2mul(const Q2Elem& x, const Q2Elem& y, const Poly& P, const Poly& Dbar) {
  Q2Elem r;
  r.a = (x.a * y.a + qmul(x.b * y.b % P, Dbar, P)) % P;
  r.b = (x.a * y.b + x.b * y.a) % P;
  return r;
}

int q2_euler(Q2Elem x, const Poly& P, const Poly& Dbar) {
  const FieldCtx* F = P.F;
  unsigned long long Q = 1;
  for (int i = 0; i < P.deg(); ++i) {
    if (Q > (1ull << 31)) fail(Errc::CapExceeded, "inert residue field too large");
    Q *= (unsigned long long)F->q;
  }
  unsigned long long ex = (Q * Q - 1) / 2;
  Q2Elem r{poly_const(F, 1), poly_zero(F)};
  while (ex) {
    if (ex & 1) r = q2mul(r, x, P, Dbar);
    x = q2mul(x, x, P, Dbar);
    ex >>= 1;
  }
  if (!r.b.is_zero()) fail(Errc::InternalInconsistency, "inert Euler power not in prime field");
  if (r.a.is_one()) return 1;
  if (r.a.deg() == 0 && r.a.c[0] == F->neg(1)) return -1;
  fail(Errc::InternalInconsistency, "inert Euler power not +-1");
}

struct LocalVal {
  int v;
  int chi;  // 0 when v is odd
};

// Core local computation for beta = (A + B sqrt(Dloc)) / c at the finite
// local prime Ploc, with split/inert/ramified behaviour given by the QPlace.
LocalVal local_at(const Poly& A, const Poly& B, const Poly& c, const QPlace& pl) {
  const FieldCtx* F = c.F;
  const Poly& P = pl.Ploc;
  const Poly& D = pl.Dloc;
  Poly Aunit(F), Bunit(F), cunit(F);
  int vA = A.is_zero() ? kInfVal : valuation_at(A, P, &Aunit);
  int vB = B.is_zero() ? kInfVal : valuation_at(B, P, &Bunit);
  int vc = valuation_at(c, P, &cunit);
  if (vA >= kInfVal && vB >= kInfVal) fail(Errc::InvalidInput, "local data of zero element");

  switch (pl.kind) {
    case QKind::Ramified: {
      // v(sqrt(D)) = 1 at the ramified place: v = min(2vA, 2vB+1) - 2vc.
      long long vnum = std::min<long long>(2LL * vA, 2LL * vB + 1);
      int v = int(vnum - 2LL * vc);
      if (vnum % 2 != 0) return {v, 0};
      // unit part reduces to (A / (c * (D/P)^w)) mod P with w = vA - vc
      auto [D1, rem] = divmod(D, P);
      if (!rem.is_zero() || (D1 % P).is_zero())
        fail(Errc::InternalInconsistency, "ramified place: v_P(D) != 1");
      int chi = euler_symbol(Aunit, P) * euler_symbol(cunit, P);
      if ((vA - vc) % 2 != 0) chi *= euler_symbol(D1, P);
      return {v, chi};
    }
    case QKind::Inert: {
      int m = std::min(vA, vB);
      int v = m - vc;
      if (v % 2 != 0) return {v, 0};
      Poly Pm = poly_const(F, 1);
      for (int i = 0; i < m; ++i) Pm = Pm * P;
      Poly A0 = A.is_zero() ? A : (A / Pm) % P;
      Poly B0 = B.is_zero() ? B : (B / Pm) % P;
      Poly Dbar = D % P;
      Poly cinv = qinv(cunit, P);
      Q2Elem E{qmul(A0, cinv, P), qmul(B0, cinv, P)};
      if (E.a.is_zero() && E.b.is_zero())
        fail(Errc::InternalInconsistency, "inert unit part vanished");
      return {v, q2_euler(E, P, Dbar)};
    }
    case QKind::Split: {
      // pull out the common power of P so the Hensel precision stays small
      int g = std::min(vA, vB);
      if (g >= kInfVal) g = std::min(vA, vB);  // unreachable; appease analysis
      Poly Pg = poly_const(F, 1);
      for (int i = 0; i < std::min(g, kInfVal / 2); ++i) Pg = Pg * P;
      Poly A1 = A.is_zero() ? A : A / Pg;
      Poly B1 = B.is_zero() ? B : B / Pg;
      Poly num = A1 * A1 - B1 * B1 * D;
      if (num.is_zero()) fail(Errc::InternalInconsistency, "split place with square twist");
      int prec = valuation_at(num, P) + 1;
      Poly root = pl.index == 0 ? pl.root0 : (P - pl.root0) % P;
      Poly s = hensel_sqrt(D, P, root, prec);
      Poly PK = poly_const(F, 1);
      for (int i = 0; i < prec; ++i) PK = PK * P;
      Poly W = (A1 + B1 * s) % PK;
      if (W.is_zero())
        fail(Errc::InternalInconsistency, "split valuation exceeded Hensel precision");
      Poly Wunit(F);
      int vW = valuation_at(W, P, &Wunit);
      if (vW >= prec) fail(Errc::InternalInconsistency, "split valuation inconsistent");
      int v = g + vW - vc;
      if (v % 2 != 0) return {v, 0};
      int chi = euler_symbol(Wunit, P) * euler_symbol(cunit, P);
      return {v, chi};
    }
  }
  fail(Errc::InternalInconsistency, "unhandled place kind");
}

// Rewrite beta in the S = 1/T coordinates used by places above infinity.
void to_inf_coords(const QuadField& K, const QuadElement& b, Poly& A, Poly& B, Poly& c) {
  int degD = K.D.deg();
  int hm = (degD + 1) / 2;  // = degD/2 for even degD
  long long dA = b.A.is_zero() ? -1 : b.A.deg();
  long long dB = b.B.is_zero() ? -1 : b.B.deg();
  long long dc = b.c.deg();
  long long M = dc;
  if (dA >= 0) M = std::max(M, dA);
  if (dB >= 0) M = std::max(M, dB + hm);
  A = b.A.is_zero() ? b.A : shift(reverse(b.A), int(M - dA));
  B = b.B.is_zero() ? b.B : shift(reverse(b.B), int(M - dB - hm));
  c = shift(reverse(b.c), int(M - dc));
}

LocalVal local_val(const QuadField& K, const QuadElement& b, const QPlace& pl) {
  if (b.A.is_zero() && b.B.is_zero()) fail(Errc::InvalidInput, "valuation of zero element");
  if (!pl.base.infinite) return local_at(b.A, b.B, b.c, pl);
  Poly A(K.F), B(K.F), c(K.F);
  to_inf_coords(K, b, A, B, c);
  return local_at(A, B, c, pl);
}

}  // namespace

int valuation(const QuadField& K, const QuadElement& b, const QPlace& pl) {
  return local_val(K, b, pl).v;
}

int chi_rel(const QuadField& K, const QuadElement& b, const QPlace& pl) {
  LocalVal lv = local_val(K, b, pl);
  return lv.v % 2 == 0 ? lv.chi : 0;
}

RelDisc rel_discriminant(const QuadField& K, const QuadElement& b) {
  if (b.A.is_zero() && b.B.is_zero()) fail(Errc::InvalidInput, "rel_discriminant of zero");
  // candidate base places: factors of the norm numerator, of c, of F, and oo
  std::vector<Place> bases;
  Poly num = b.A * b.A - b.B * b.B * K.D;
  if (num.is_zero()) fail(Errc::InvalidInput, "element generates no quadratic extension");
  for (auto& f : factorize(num)) bases.push_back(Place::finite_place(f.p));
  if (b.c.deg() > 0)
    for (auto& f : factorize(b.c)) bases.push_back(Place::finite_place(f.p));
  for (auto& f : K.Ffactors) bases.push_back(Place::finite_place(f));
  bases.push_back(Place::infinity(K.F));
  std::sort(bases.begin(), bases.end(),
            [](const Place& x, const Place& y) { return place_cmp(x, y) < 0; });
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  RelDisc rd;
  for (auto& P : bases) {
    for (auto& qp : places_above(K, P)) {
      if (valuation(K, b, qp) % 2 != 0) {
        rd.places.push_back(qp);
        rd.delta += qp.degK;
      }
    }
  }
  std::sort(rd.places.begin(), rd.places.end(),
            [](const QPlace& x, const QPlace& y) { return qplace_cmp(x, y) < 0; });
  return rd;
}

// ---------------------------------------------------------------------------
// counting experiments

QuadCountRecord count_quad_ext_base(const FieldCtx* F, int r, const Divisor& Bdiv) {
  if (r < 1) fail(Errc::InvalidInput, "count_quad_ext_base needs r >= 1");
  if (!Bdiv.is_effective() || !Bdiv.is_squarefree())
    fail(Errc::InvalidInput, "ramification divisor must be effective squarefree");
  QuadFieldFilter filt;
  filt.ramified_at = Bdiv;
  QuadCountRecord rec;
  rec.count = count_quadfields(F, r, filt);
  double Y = std::pow(double(F->q), 2.0 * r);
  double normB = std::pow(double(F->q), double(Bdiv.degree()));
  double prod = 1.0;
  for (auto& [p, m] : Bdiv.coef) prod *= 1.0 / (1.0 + 1.0 / double(place_norm(p)));
  double q = double(F->q);
  rec.main_term = 2.0 * (Y / normB) * prod * (1.0 - 1.0 / (q * q));
  return rec;
}

AvgChiRecord average_chi_over_K(const FieldCtx* F, int j, const Divisor& C, const Divisor& fg) {
  if (!C.is_effective() || !fg.is_effective())
    fail(Errc::InvalidInput, "average_chi_over_K needs effective divisors");
  QuadFieldFilter filt;
  if (!fg.empty()) filt.unramified_at = fg;
  AvgChiRecord rec;
  for (auto& K : enumerate_quadfields(F, j, filt)) {
    ++rec.fields;
    long long val = 1;
    for (auto& [p, m] : C.coef) {
      int s = chi_base(K, p);
      if (s == 0) {
        val = 0;
        break;
      }
      if (m % 2 != 0) val *= s;
    }
    rec.sum += val;
  }
  bool square = true;
  for (auto& [p, m] : C.coef)
    if (m % 2 != 0) square = false;
  if (square) {
    double q = double(F->q);
    double prod = 1.0;
    // product over distinct places dividing fg*C
    std::vector<Place> supp;
    for (auto& [p, m] : C.coef) supp.push_back(p);
    for (auto& [p, m] : fg.coef) supp.push_back(p);
    std::sort(supp.begin(), supp.end(),
              [](const Place& x, const Place& y) { return place_cmp(x, y) < 0; });
    supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
    for (auto& p : supp) prod *= 1.0 / (1.0 + 1.0 / double(place_norm(p)));
    rec.main_term = 2.0 * std::pow(q, 2.0 * j) * (1.0 - 1.0 / (q * q)) * prod;
  } else {
    rec.main_term = 0.0;
  }
  return rec;
}

}  // namespace d4lab
