#include "padicseq/recurrence.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <utility>

#include "padicseq/analytic.hpp"
#include "padicseq/polyutil.hpp"

namespace padic {

namespace {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

long legendre_unit(const Int& p, const Int& u) {
  Int e = (p - 1) / 2, r;
  mpz_powm(r.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r == 1 ? 1 : -1;
}

Int least_nonresidue(const Int& p) {
  for (Int r = 2;; ++r)
    if (legendre_unit(p, r) < 0) return r;
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

void RecurrenceSpec::validate() const {
  if (!is_prime(p)) fail(errc::config, "p must be prime");
  if (order < 1) fail(errc::config, "order must be at least 1");
  if (static_cast<int>(coeffs.size()) != order)
    fail(errc::config, "coeffs must list a_0 .. a_{order-1}");
  if (static_cast<int>(initial.size()) != order)
    fail(errc::config, "initial must list s(0) .. s(order-1)");
  if (precision < 1) fail(errc::config, "precision must be positive");
  if (guard < 0) fail(errc::config, "guard digits must be non-negative");
  for (const Rat& a : coeffs)
    if (a != 0 && nu_p(p, a) < 0)
      fail(errc::config, "recurrence coefficients must be p-integral");
  for (const Rat& s : initial)
    if (s != 0 && nu_p(p, s) < 0)
      fail(errc::config, "initial terms must be p-integral");
}

std::vector<Rat> RecurrenceSpec::char_poly() const {
  std::vector<Rat> g = coeffs;
  g.push_back(Rat(1));
  return g;
}

PadicValue mul_ppow(const PadicValue& x, long k) {
  if (k < 0) fail(errc::internal, "negative power shift");
  if (k == 0) return x;
  const FieldPtr K = x.field();
  Int pk = pow_int(K->p, k);
  std::vector<Int> c = x.coeffs();
  for (Int& cc : c) cc *= pk;
  return PadicValue(K, x.precision() + static_cast<long>(K->e) * k, std::move(c));
}

PadicValue shift_up(const PadicValue& x, long d) {
  if (d < 0) fail(errc::internal, "negative shift");
  const FieldPtr K = x.field();
  if (K->kind != FieldKind::eisenstein) return mul_ppow(x, d);
  PadicValue y = x;
  Int b = K->B.get_num(), c = K->C.get_num();
  for (long i = 0; i < d; ++i) {
    // (c0 + c1 theta) theta = -C c1 + (c0 - B c1) theta, exactly
    std::vector<Int> nc(2);
    nc[0] = -c * y.coeff(1);
    nc[1] = y.coeff(0) - b * y.coeff(1);
    y = PadicValue(K, y.precision() + 1, std::move(nc));
  }
  return y;
}

ScaledValue sv_make(PadicValue v) { return {std::move(v), 0}; }

ScaledValue sv_add(const ScaledValue& a, const ScaledValue& b) {
  long s = std::max(a.shift, b.shift);
  PadicValue av = a.shift == s ? a.val : shift_up(a.val, s - a.shift);
  PadicValue bv = b.shift == s ? b.val : shift_up(b.val, s - b.shift);
  return {av + bv, s};
}

ScaledValue sv_sub(const ScaledValue& a, const ScaledValue& b) {
  return sv_add(a, sv_neg(b));
}

ScaledValue sv_neg(const ScaledValue& a) { return {-a.val, a.shift}; }

ScaledValue sv_mul(const ScaledValue& a, const ScaledValue& b) {
  return {a.val * b.val, a.shift + b.shift};
}

ScaledValue sv_div(const ScaledValue& a, const ScaledValue& b) {
  Valuation v = valuation(b.val);
  if (!v.bounded)
    fail(errc::precision, "division by a value indistinguishable from zero");
  PadicValue unit = b.val;
  if (v.nu > 0)
    unit = div_exact(b.val, pow(uniformizer(b.val.field(), b.val.precision()), Int(v.nu)));
  return {a.val * invert(unit), a.shift - b.shift + v.nu};
}

ScaledValue sv_normalize(ScaledValue a) {
  if (a.shift < 0) {
    a.val = shift_up(a.val, -a.shift);
    a.shift = 0;
    return a;
  }
  if (a.shift == 0) return a;
  Valuation v = valuation(a.val);
  long nu = v.bounded ? v.nu : a.val.precision();
  long k = std::min(a.shift, nu);
  if (k > 0) {
    a.val = div_exact(a.val, pow(uniformizer(a.val.field(), a.val.precision()), Int(k)));
    a.shift -= k;
  }
  return a;
}

bool sv_is_zero(const ScaledValue& a) { return is_zero(a.val); }

Valuation sv_valuation(const ScaledValue& a) {
  Valuation v = valuation(a.val);
  v.nu -= a.shift;
  v.cap -= a.shift;
  return v;
}

PadicValue sv_to_value(const ScaledValue& a) {
  ScaledValue n = sv_normalize(a);
  if (n.shift > 0 && !is_zero(n.val))
    fail(errc::precision, "value is not integral at this precision");
  return n.val;
}

std::vector<PadicValue> eval_terms(const RecurrenceSpec& spec, long n_max) {
  spec.validate();
  if (n_max < 0) fail(errc::config, "n_max must be non-negative");
  const Int mod = pow_int(spec.p, spec.precision);
  const int l = spec.order;
  std::vector<Int> a(l);
  for (int i = 0; i < l; ++i) a[i] = poly::z_residue(spec.coeffs[i], spec.p, spec.precision);
  std::vector<Int> t;
  t.reserve(std::max<long>(n_max + 1, l));
  for (int i = 0; i < l; ++i) t.push_back(poly::z_residue(spec.initial[i], spec.p, spec.precision));
  for (long n = l; n <= n_max; ++n) {
    Int acc = 0;
    for (int i = 0; i < l; ++i) acc += a[i] * t[n - l + i];
    acc = ((-acc) % mod + mod) % mod;
    t.push_back(acc);
  }
  auto Kb = base_field(spec.p);
  std::vector<PadicValue> out;
  out.reserve(n_max + 1);
  for (long n = 0; n <= n_max; ++n) out.push_back(from_int(Kb, t[n], spec.precision));
  return out;
}

PadicValue term_at_index(const RecurrenceSpec& spec, const Int& n) {
  spec.validate();
  if (n < 0) fail(errc::domain, "term_at_index requires n >= 0");
  const Int mod = pow_int(spec.p, spec.precision);
  const int l = spec.order;
  auto Kb = base_field(spec.p);
  std::vector<Int> init(l);
  for (int i = 0; i < l; ++i) init[i] = poly::z_residue(spec.initial[i], spec.p, spec.precision);
  if (n < l) return from_int(Kb, init[n.get_si()], spec.precision);
  using Mat = std::vector<std::vector<Int>>;
  auto matmul = [&](const Mat& x, const Mat& y) {
    Mat z(l, std::vector<Int>(l, Int(0)));
    for (int i = 0; i < l; ++i)
      for (int k = 0; k < l; ++k) {
        if (x[i][k] == 0) continue;
        for (int j = 0; j < l; ++j) z[i][j] = (z[i][j] + x[i][k] * y[k][j]) % mod;
      }
    return z;
  };
  Mat comp(l, std::vector<Int>(l, Int(0)));
  for (int i = 0; i + 1 < l; ++i) comp[i][i + 1] = 1;
  for (int j = 0; j < l; ++j) {
    Int aj = poly::z_residue(spec.coeffs[j], spec.p, spec.precision);
    comp[l - 1][j] = (mod - aj) % mod;
  }
  Mat acc(l, std::vector<Int>(l, Int(0)));
  for (int i = 0; i < l; ++i) acc[i][i] = 1;
  Mat base = comp;
  Int k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = matmul(acc, base);
    k >>= 1;
    if (k > 0) base = matmul(base, base);
  }
  Int v = 0;
  for (int j = 0; j < l; ++j) v = (v + acc[0][j] * init[j]) % mod;
  return from_int(Kb, v, spec.precision);
}

namespace {

enum class ClusterShape {
  exact_linear,  // degree-1 squarefree factor, rational root
  linear,        // simple residue root, lifted in the base field
  unram_scan,    // irreducible residue factor; degree 2 gets roots by scan
  split2,        // repeated residue root splitting into two base-field roots
  unram2,        // repeated residue root generating the unramified quadratic
  ram2,          // repeated residue root generating a ramified quadratic
  steep,         // certified total ramification of degree >= 3 (invariants only)
};

struct ClusterInfo {
  poly::QPoly S;  // squarefree factor the cluster lives in
  int mult = 1;
  poly::FpPoly u;
  int k = 1;
  ClusterShape shape = ClusterShape::linear;
  // repeated-root quadratic data: p odd keeps (b, c), p = 2 keeps (hb, D)
  Rat b, c, hb, D;
  long trust = 0;  // base-p digits of confidence; 0 means the data is exact
  long w = 0;      // nu_p of the relevant discriminant
  Int uclass = 1;  // ramified square class: 1 / least nonresidue, or mod-8 class at p = 2
};

// Pulls the quadratic factor behind a repeated residue root: exact when the
// squarefree factor is itself quadratic, via coprime factor lifting otherwise.
// Classifies the quadratic's local type.  Returns false when KK digits were
// not enough to see the discriminant's valuation.
bool quad_analyze(ClusterInfo& ci, const Int& p, long KK) {
  if (poly::q_deg(ci.S) == 2) {
    ci.b = ci.S[1];
    ci.c = ci.S[0];
    ci.trust = 0;
  } else {
    poly::ZPoly fz = poly::z_from_q(ci.S, p, KK);
    poly::FpPoly g0 = poly::fp_mul(ci.u, ci.u, p);
    poly::FpPoly h0, rem;
    poly::fp_divmod(poly::fp_from_q(ci.S, p), g0, p, h0, rem);
    auto pair = poly::hensel_factor_pair(fz, g0, h0, p, KK);
    ci.b = Rat(pair.g[1]);
    ci.c = Rat(pair.g[0]);
    ci.trust = KK;
  }
  if (p == 2) {
    ci.hb = ci.b / 2;
    Rat D = ci.hb * ci.hb - ci.c;
    if (D == 0) {
      if (ci.trust == 0) fail(errc::internal, "repeated root inside a squarefree factor");
      return false;
    }
    ci.w = nu_p(p, D);
    if (ci.trust > 0 && ci.w > ci.trust - 12) return false;
    ci.D = D;
    long u8 = poly::z_residue(D / pow_int(p, ci.w), p, 3).get_si();
    if (ci.w % 2 == 1) {
      ci.shape = ClusterShape::ram2;
      ci.uclass = u8;
    } else if (u8 == 1) {
      ci.shape = ClusterShape::split2;
    } else if (u8 == 5) {
      ci.shape = ClusterShape::unram2;
    } else {
      fail(errc::unsupported, "splitting field out of supported class");
    }
  } else {
    Rat delta = ci.b * ci.b - 4 * ci.c;
    if (delta == 0) {
      if (ci.trust == 0) fail(errc::internal, "repeated root inside a squarefree factor");
      return false;
    }
    ci.w = nu_p(p, delta);
    if (ci.trust > 0 && ci.w > ci.trust - 12) return false;
    bool qr = legendre_unit(p, poly::z_residue(delta / pow_int(p, ci.w), p, 1)) > 0;
    if (ci.w % 2 == 0) {
      ci.shape = qr ? ClusterShape::split2 : ClusterShape::unram2;
    } else {
      ci.shape = ClusterShape::ram2;
      ci.uclass = qr ? Int(1) : least_nonresidue(p);
    }
  }
  return true;
}

// Certifies total ramification of degree k for a residue-root cluster by
// recentering the cluster factor at its residue root and testing the
// Eisenstein condition on the shifted coefficients.
bool eisenstein_probe(const ClusterInfo& ci, const Int& p, long Ndig) {
  long KK = 3 * Ndig + 32;
  std::vector<Int> cz;
  if (poly::q_deg(ci.S) == ci.k) {
    cz = poly::z_from_q(ci.S, p, KK);
  } else {
    poly::ZPoly fz = poly::z_from_q(ci.S, p, KK);
    poly::FpPoly g0 = {Int(1)};
    for (int i = 0; i < ci.k; ++i) g0 = poly::fp_mul(g0, ci.u, p);
    poly::FpPoly h0, rem;
    poly::fp_divmod(poly::fp_from_q(ci.S, p), g0, p, h0, rem);
    cz = poly::hensel_factor_pair(fz, g0, h0, p, KK).g;
  }
  Int m = pow_int(p, KK);
  Int a = (p - ci.u[0] % p) % p;
  std::vector<Int> sh = cz;
  long d = static_cast<long>(sh.size()) - 1;
  for (long i = 0; i < d; ++i)
    for (long j = d - 1; j >= i; --j) sh[j] = (sh[j] + sh[j + 1] * a) % m;
  for (long i = 1; i < d; ++i)
    if (sh[i] % p != 0) return false;
  return sh[0] % p == 0 && (sh[0] / p) % p != 0;
}

std::vector<ClusterInfo> analyze_clusters(const RecurrenceSpec& spec, bool allow_steep) {
  const Int& p = spec.p;
  const long Ndig = spec.precision + spec.guard;
  auto parts = poly::squarefree_decomposition(spec.char_poly());
  std::vector<ClusterInfo> out;
  for (size_t idx = 0; idx < parts.size(); ++idx) {
    const poly::QPoly& S = parts[idx];
    if (poly::q_deg(S) < 1) continue;
    ClusterInfo seed;
    seed.S = S;
    seed.mult = static_cast<int>(idx) + 1;
    if (poly::q_deg(S) == 1) {
      seed.shape = ClusterShape::exact_linear;
      out.push_back(seed);
      continue;
    }
    for (auto& [u, k] : poly::fp_factor(poly::fp_from_q(S, p), p)) {
      ClusterInfo ci = seed;
      ci.u = u;
      ci.k = k;
      long du = poly::fp_deg(u);
      if (k == 1 && du == 1) {
        ci.shape = ClusterShape::linear;
      } else if (k == 1 && du == 2) {
        ci.shape = ClusterShape::unram_scan;
      } else if (k == 1 && du >= 3) {
        if (!allow_steep) fail(errc::unsupported, "splitting field out of supported class");
        ci.shape = ClusterShape::unram_scan;
      } else if (k == 2 && du == 1) {
        long KK = 2 * Ndig + 32;
        bool done = false;
        for (int att = 0; att < 3 && !done; ++att, KK *= 2) done = quad_analyze(ci, p, KK);
        if (!done)
          fail(errc::precision, "characteristic roots indistinguishable at working precision");
      } else if (k >= 3 && du == 1 && allow_steep && eisenstein_probe(ci, p, Ndig)) {
        ci.shape = ClusterShape::steep;
      } else {
        fail(errc::unsupported, "splitting field out of supported class");
      }
      out.push_back(std::move(ci));
    }
  }
  return out;
}

}  // namespace

SpectralData spectral_decompose(const RecurrenceSpec& spec) {
  spec.validate();
  const Int p = spec.p;
  const bool p2 = (p == 2);
  const long Ndig = spec.precision + spec.guard;
  auto clusters = analyze_clusters(spec, false);

  bool any_unram = false, any_ram = false;
  Int ram_m = 0;
  for (const auto& ci : clusters) {
    if (ci.shape == ClusterShape::unram_scan || ci.shape == ClusterShape::unram2)
      any_unram = true;
    if (ci.shape == ClusterShape::ram2) {
      Int m = (p2 ? Int(2) : p) * ci.uclass;
      if (any_ram && m != ram_m)
        fail(errc::unsupported, "splitting field out of supported class");
      ram_m = m;
      any_ram = true;
    }
  }
  if (any_unram && any_ram)
    fail(errc::unsupported, "splitting field out of supported class");

  FieldPtr K;
  if (any_ram) {
    K = build_extension(p, {Rat(-ram_m), Rat(0), Rat(1)});
  } else if (any_unram) {
    K = p2 ? build_extension(p, {Rat(1), Rat(1), Rat(1)})
           : build_extension(p, {Rat(-least_nonresidue(p)), Rat(0), Rat(1)});
  } else {
    K = base_field(p);
  }

  long wmax = 0;
  for (const auto& ci : clusters) wmax = std::max(wmax, ci.w);
  const long W = static_cast<long>(K->e) * Ndig;
  const long Jdig = Ndig + 2 * wmax + 16;
  const long PJ = static_cast<long>(K->e) * Jdig;
  auto Kb = base_field(p);

  auto lift_poly = [&](const poly::QPoly& S) {
    std::vector<PadicValue> f;
    f.reserve(S.size());
    for (const Rat& cc : S) f.push_back(from_rational(K, cc, W));
    return f;
  };

  SpectralData sd;
  sd.field = K;
  sd.precision = W;

  auto push_root = [&](PadicValue beta, int mult, bool zero_root) {
    SpectralRoot r;
    r.beta = std::move(beta);
    r.multiplicity = mult;
    r.zero = zero_root;
    if (!zero_root) {
      Valuation v = valuation(r.beta);
      r.unit = v.bounded && v.nu == 0;
    }
    sd.roots.push_back(std::move(r));
  };

  for (const auto& ci : clusters) {
    switch (ci.shape) {
      case ClusterShape::exact_linear: {
        Rat root = -ci.S[0];
        if (root == 0)
          push_root(zero(K, W), ci.mult, true);
        else
          push_root(from_rational(K, root, W), ci.mult, false);
        break;
      }
      case ClusterShape::linear: {
        auto f = lift_poly(ci.S);
        Int a0 = (p - ci.u[0] % p) % p;
        push_root(hensel_lift(f, from_int(K, a0, W)), ci.mult, false);
        break;
      }
      case ClusterShape::unram_scan: {
        auto f = lift_poly(ci.S);
        std::vector<PadicValue> up;
        up.reserve(ci.u.size());
        for (const Int& cc : ci.u) up.push_back(from_int(K, cc, W));
        PadicValue cand = zero(K, W);
        bool ok = false;
        for (Int c1 = 1; c1 < p && !ok; ++c1)
          for (Int c0 = 0; c0 < p && !ok; ++c0) {
            PadicValue t(K, W, {c0, c1});
            Valuation v = valuation(eval_poly(up, t));
            if (!v.bounded || v.nu >= 1) {
              cand = t;
              ok = true;
            }
          }
        if (!ok) fail(errc::internal, "residue root scan failed");
        PadicValue r1 = hensel_lift(f, cand);
        push_root(r1, ci.mult, false);
        push_root(conj(r1), ci.mult, false);
        break;
      }
      case ClusterShape::split2:
      case ClusterShape::unram2:
      case ClusterShape::ram2: {
        auto f = lift_poly(ci.S);
        PadicValue theta = K->d == 2 ? generator(K, PJ) : one(K, PJ);
        PadicValue sq = zero(K, PJ);
        PadicValue center = zero(K, PJ);
        PadicValue step = one(K, PJ);
        if (p2) {
          Rat du = ci.D / pow_int(p, ci.w);
          if (ci.shape == ClusterShape::split2) {
            sq = mul_ppow(embed(sqrt(from_rational(Kb, du, Jdig)), K), ci.w / 2);
          } else if (ci.shape == ClusterShape::unram2) {
            // sqrt(du) = sqrt(-3 du) (1 + 2 theta) / (-3) since (1 + 2 theta)^2 = -3
            PadicValue sm = embed(sqrt(from_rational(Kb, -3 * du, Jdig)), K);
            PadicValue planted = sm * (one(K, PJ) + mul_ppow(theta, 1));
            sq = mul_ppow(planted * from_rational(K, Rat(-1, 3), PJ), ci.w / 2);
          } else {
            Rat uc(ci.uclass);
            PadicValue su = embed(sqrt(from_rational(Kb, du / uc, Jdig)), K);
            sq = mul_ppow(theta * su, (ci.w - 1) / 2);
          }
          center = from_rational(K, -ci.hb, PJ);
          step = sq;
        } else {
          Rat delta = ci.b * ci.b - 4 * ci.c;
          Rat uu = delta / pow_int(p, ci.w);
          if (ci.shape == ClusterShape::split2) {
            sq = mul_ppow(embed(sqrt(from_rational(Kb, uu, Jdig)), K), ci.w / 2);
          } else if (ci.shape == ClusterShape::unram2) {
            Rat r = -K->C;  // canonical modulus x^2 - r
            PadicValue su = embed(sqrt(from_rational(Kb, uu / r, Jdig)), K);
            sq = mul_ppow(theta * su, ci.w / 2);
          } else {
            Rat uc(ci.uclass);
            PadicValue su = embed(sqrt(from_rational(Kb, uu / uc, Jdig)), K);
            sq = mul_ppow(theta * su, (ci.w - 1) / 2);
          }
          center = from_rational(K, -ci.b / 2, PJ);
          step = sq * from_rational(K, Rat(1, 2), PJ);
        }
        push_root(hensel_lift(f, center + step), ci.mult, false);
        push_root(hensel_lift(f, center - step), ci.mult, false);
        break;
      }
      default:
        fail(errc::internal, "unexpected cluster shape");
    }
  }

  const int l = spec.order;
  {
    int total = 0;
    for (const auto& r : sd.roots) total += r.multiplicity;
    if (total != l) fail(errc::internal, "root multiplicities do not sum to the order");
  }

  // confluent Vandermonde: row n, one column per (root, k) pair
  std::vector<std::vector<ScaledValue>> A(l);
  for (int n = 0; n < l; ++n) {
    A[n].reserve(l + 1);
    for (const auto& r : sd.roots)
      for (int k = 0; k < r.multiplicity; ++k) {
        PadicValue entry = zero(K, W);
        if (r.zero) {
          if (n == k) entry = one(K, W);
        } else {
          entry = pow(r.beta, Int(n)) * from_int(K, pow_int(Int(n), k), W);
        }
        A[n].push_back(sv_make(std::move(entry)));
      }
    A[n].push_back(sv_make(from_rational(K, spec.initial[n], W)));
  }

  for (int col = 0; col < l; ++col) {
    int best = -1;
    long bestnu = 0;
    for (int row = col; row < l; ++row) {
      Valuation v = sv_valuation(A[row][col]);
      if (!v.bounded) continue;
      if (best < 0 || v.nu < bestnu) {
        best = row;
        bestnu = v.nu;
      }
    }
    if (best < 0) fail(errc::precision, "insufficient precision for Binet solve");
    std::swap(A[col], A[best]);
    for (int row = col + 1; row < l; ++row) {
      if (sv_is_zero(A[row][col])) continue;
      ScaledValue fac = sv_div(A[row][col], A[col][col]);
      for (int cc = col; cc <= l; ++cc)
        A[row][cc] = sv_sub(A[row][cc], sv_mul(fac, A[col][cc]));
    }
  }
  std::vector<ScaledValue> sol(l, sv_make(zero(K, W)));
  for (int row = l - 1; row >= 0; --row) {
    ScaledValue acc = A[row][l];
    for (int cc = row + 1; cc < l; ++cc) acc = sv_sub(acc, sv_mul(A[row][cc], sol[cc]));
    sol[row] = sv_div(acc, A[row][row]);
  }

  size_t pos = 0;
  long cp = LONG_MAX;
  for (auto& r : sd.roots)
    for (int k = 0; k < r.multiplicity; ++k) {
      ScaledValue c = sv_normalize(sol[pos++]);
      cp = std::min(cp, c.val.precision() - c.shift);
      r.binet.push_back(std::move(c));
    }
  sd.coeff_precision = cp;
  return sd;
}

ScaledValue binet_coefficient_at(const SpectralRoot& root, const PadicValue& n) {
  ScaledValue acc = sv_make(zero(n.field(), n.precision()));
  for (size_t k = root.binet.size(); k-- > 0;)
    acc = sv_add(sv_mul(acc, sv_make(n)), root.binet[k]);
  return acc;
}

ScaledValue binet_sum(const SpectralData& sd, const Int& n) {
  ScaledValue acc = sv_make(zero(sd.field, sd.precision));
  for (const auto& r : sd.roots) {
    if (r.zero) {
      if (n >= 0 && n < static_cast<long>(r.binet.size()))
        acc = sv_add(acc, r.binet[n.get_si()]);
      continue;
    }
    ScaledValue c = binet_coefficient_at(r, from_int(sd.field, n, sd.precision));
    acc = sv_add(acc, sv_mul(c, sv_make(pow(r.beta, n))));
  }
  return acc;
}

InterpolabilityClass classify(const RecurrenceSpec& spec) {
  spec.validate();
  bool allz = true;
  for (const Rat& s : spec.initial)
    if (s != 0) {
      allz = false;
      break;
    }
  if (allz) return {InterpTag::IdenticallyZero, "every initial term vanishes"};
  const Rat& a0 = spec.coeffs[0];
  if (a0 != 0 && nu_p(spec.p, a0) == 0)
    return {InterpTag::ExactTwisted,
            "a_0 is a p-adic unit, so every characteristic root is a unit"};
  SpectralData sd = spectral_decompose(spec);
  bool unit_part = false, bad = false;
  std::string offenders;
  for (const auto& r : sd.roots) {
    bool nonzero = false;
    for (const auto& c : r.binet)
      if (!sv_is_zero(c)) {
        nonzero = true;
        break;
      }
    if (!nonzero) continue;
    if (r.unit) {
      unit_part = true;
      continue;
    }
    bad = true;
    if (!offenders.empty()) offenders += ", ";
    Valuation bv = r.zero ? Valuation{false, 0, 0} : valuation(r.beta);
    if (r.zero || !bv.bounded)
      offenders += "the zero root";
    else
      offenders += "root with pi-valuation " + std::to_string(bv.nu);
  }
  if (!bad)
    return {InterpTag::ExactTwisted, "all weight lies on unit characteristic roots"};
  if (unit_part)
    return {InterpTag::ApproximateOnly,
            "non-unit characteristic roots carry nonzero weight (" + offenders + ")"};
  return {InterpTag::ApproximateOnly,
          "no twisted interpolation exists: every weighted characteristic root satisfies "
          "|beta| < 1 (" + offenders + ")"};
}

ErrorConstants error_constants(const SpectralData& sd) {
  ErrorConstants ec;
  const long e = sd.field->e;
  bool first_c = true, first_d = true;
  for (const auto& r : sd.roots) {
    if (r.unit) continue;
    bool nonzero = false;
    long cmin = 0;
    for (const auto& c : r.binet) {
      Valuation v = sv_valuation(c);
      if (!v.bounded) continue;
      if (!nonzero || v.nu < cmin) {
        nonzero = true;
        cmin = v.nu;
      }
    }
    if (!nonzero) continue;
    Rat nc = make_rat(cmin, e);
    if (first_c || nc < ec.nu_C) {
      ec.nu_C = nc;
      first_c = false;
    }
    ec.has_C = true;
    if (!r.zero) {
      Valuation bv = valuation(r.beta);
      if (bv.bounded) {
        Rat nd = make_rat(bv.nu, e);
        if (first_d || nd < ec.nu_D) {
          ec.nu_D = nd;
          first_d = false;
        }
        ec.has_D = true;
      }
    }
  }
  return ec;
}

SplittingInvariants splitting_invariants(const RecurrenceSpec& spec) {
  spec.validate();
  auto clusters = analyze_clusters(spec, true);
  int e = 1, f = 1;
  for (const auto& ci : clusters) {
    switch (ci.shape) {
      case ClusterShape::exact_linear:
      case ClusterShape::linear:
      case ClusterShape::split2:
        break;
      case ClusterShape::unram_scan:
        f = lcm_int(f, static_cast<int>(poly::fp_deg(ci.u)));
        break;
      case ClusterShape::unram2:
        f = lcm_int(f, 2);
        break;
      case ClusterShape::ram2:
        e = lcm_int(e, 2);
        break;
      case ClusterShape::steep:
        e = lcm_int(e, ci.k);
        break;
    }
  }
  SplittingInvariants inv;
  inv.e = e;
  inv.f = f;
  inv.q = q_constant(spec.p, e);
  Int fs = pow_int(spec.p, f) - 1;
  if (fs < 1) fs = 1;
  inv.function_count = inv.q * fs;
  return inv;
}

}  // namespace padic
