#include "padicseq/polyutil.hpp"

#include <utility>

namespace padic::poly {

namespace {

Int imod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int minv(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(errc::internal, "element not invertible modulo " + m.get_str());
  return r;
}

}  // namespace

QPoly q_trim(QPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int q_deg(const QPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

QPoly q_add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return q_trim(std::move(out));
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return q_trim(std::move(out));
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (q_deg(a) < 0 || q_deg(b) < 0) return {};
  QPoly out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return q_trim(std::move(out));
}

QPoly q_scale(const QPoly& a, const Rat& s) {
  if (s == 0) return {};
  QPoly out = a;
  for (auto& c : out) c *= s;
  return q_trim(std::move(out));
}

QPoly q_derivative(const QPoly& f) {
  if (f.size() < 2) return {};
  QPoly out(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) out[i - 1] = f[i] * Rat(static_cast<long>(i));
  return q_trim(std::move(out));
}

Rat q_eval(const QPoly& f, const Rat& x) {
  Rat acc(0);
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

QPoly q_monic(QPoly f) {
  f = q_trim(std::move(f));
  if (f.empty()) return f;
  Rat lc = f.back();
  for (auto& c : f) c /= lc;
  return f;
}

void q_divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem) {
  int db = q_deg(b);
  if (db < 0) fail(errc::internal, "polynomial division by zero");
  rem = q_trim(a);
  quo.clear();
  int da = q_deg(rem);
  if (da < db) return;
  quo.assign(da - db + 1, Rat(0));
  while ((da = q_deg(rem)) >= db) {
    Rat c = rem[da] / b[db];
    quo[da - db] = c;
    for (int i = 0; i <= db; ++i) rem[da - db + i] -= c * b[i];
    rem = q_trim(std::move(rem));
  }
  quo = q_trim(std::move(quo));
}

QPoly q_gcd(QPoly a, QPoly b) {
  a = q_trim(std::move(a));
  b = q_trim(std::move(b));
  while (q_deg(b) >= 0) {
    QPoly quo, rem;
    q_divmod(a, b, quo, rem);
    a = std::move(b);
    b = q_monic(std::move(rem));
  }
  return q_monic(std::move(a));
}

std::vector<QPoly> squarefree_decomposition(const QPoly& f) {
  QPoly g = q_monic(f);
  if (g.empty()) fail(errc::internal, "squarefree decomposition of zero");
  std::vector<QPoly> out;
  if (q_deg(g) == 0) return out;
  QPoly d = q_derivative(g);
  QPoly a = q_gcd(g, d);
  if (q_deg(a) == 0) {
    out.push_back(g);
    return out;
  }
  QPoly quo, rem;
  q_divmod(g, a, quo, rem);
  QPoly c = quo;  // product of distinct squarefree parts
  q_divmod(d, a, quo, rem);
  QPoly w = quo;
  for (;;) {
    QPoly y = q_sub(w, q_derivative(c));
    if (q_deg(y) < 0) {
      out.push_back(c);
      break;
    }
    QPoly s = q_gcd(c, y);
    out.push_back(s);
    q_divmod(c, s, quo, rem);
    c = quo;
    q_divmod(y, s, quo, rem);
    w = quo;
  }
  return out;
}

FpPoly fp_trim(FpPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int fp_deg(const FpPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

FpPoly fp_from_q(const QPoly& f, const Int& p) {
  FpPoly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Int num = imod(f[i].get_num(), p);
    Int den = imod(f[i].get_den(), p);
    if (den == 0) fail(errc::config, "denominator divisible by " + p.get_str());
    out[i] = imod(num * minv(den, p), p);
  }
  return fp_trim(std::move(out));
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, const Int& p) {
  FpPoly out(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = imod(out[i] + b[i], p);
  for (auto& c : out) c = imod(c, p);
  return fp_trim(std::move(out));
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, const Int& p) {
  FpPoly out(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  for (auto& c : out) c = imod(c, p);
  return fp_trim(std::move(out));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const Int& p) {
  if (fp_deg(a) < 0 || fp_deg(b) < 0) return {};
  FpPoly out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  for (auto& c : out) c = imod(c, p);
  return fp_trim(std::move(out));
}

FpPoly fp_monic(FpPoly f, const Int& p) {
  f = fp_trim(std::move(f));
  if (f.empty()) return f;
  Int inv = minv(f.back(), p);
  for (auto& c : f) c = imod(c * inv, p);
  return f;
}

void fp_divmod(const FpPoly& a, const FpPoly& b, const Int& p, FpPoly& quo, FpPoly& rem) {
  int db = fp_deg(b);
  if (db < 0) fail(errc::internal, "polynomial division by zero");
  Int lead_inv = minv(b[db], p);
  rem = fp_trim(a);
  quo.clear();
  int da = fp_deg(rem);
  if (da < db) return;
  quo.assign(da - db + 1, Int(0));
  while ((da = fp_deg(rem)) >= db) {
    Int c = imod(rem[da] * lead_inv, p);
    quo[da - db] = c;
    for (int i = 0; i <= db; ++i) rem[da - db + i] = imod(rem[da - db + i] - c * b[i], p);
    rem = fp_trim(std::move(rem));
  }
  quo = fp_trim(std::move(quo));
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const Int& p) {
  a = fp_trim(std::move(a));
  b = fp_trim(std::move(b));
  while (fp_deg(b) >= 0) {
    FpPoly quo, rem;
    fp_divmod(a, b, p, quo, rem);
    a = std::move(b);
    b = std::move(rem);
  }
  return fp_monic(std::move(a), p);
}

void fp_xgcd(const FpPoly& a, const FpPoly& b, const Int& p, FpPoly& g, FpPoly& u,
             FpPoly& v) {
  FpPoly r0 = fp_trim(a), r1 = fp_trim(b);
  FpPoly u0 = {Int(1)}, u1 = {};
  FpPoly v0 = {}, v1 = {Int(1)};
  while (fp_deg(r1) >= 0) {
    FpPoly quo, rem;
    fp_divmod(r0, r1, p, quo, rem);
    FpPoly u2 = fp_sub(u0, fp_mul(quo, u1, p), p);
    FpPoly v2 = fp_sub(v0, fp_mul(quo, v1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  g = r0;
  u = u0;
  v = v0;
  if (!g.empty() && g.back() != 1) {
    Int inv = minv(g.back(), p);
    for (auto& c : g) c = imod(c * inv, p);
    for (auto& c : u) c = imod(c * inv, p);
    for (auto& c : v) c = imod(c * inv, p);
  }
}

Int fp_eval(const FpPoly& f, const Int& x, const Int& p) {
  Int acc(0);
  for (size_t i = f.size(); i-- > 0;) acc = imod(acc * x + f[i], p);
  return acc;
}

std::vector<std::pair<FpPoly, int>> fp_factor(FpPoly f, const Int& p) {
  f = fp_monic(std::move(f), p);
  if (f.empty()) fail(errc::internal, "factoring the zero polynomial");
  std::vector<std::pair<FpPoly, int>> out;
  // Once all irreducible factors of degree < d are extracted, only irreducible
  // candidates of degree d can divide the remainder, so plain enumeration is
  // already restricted to what matters.
  for (int d = 1; 2 * d <= fp_deg(f); ++d) {
    Int total = 1;
    for (int i = 0; i < d; ++i) {
      total *= p;
      if (total > 2000000) fail(errc::budget, "modular factorization candidate cap exceeded");
    }
    FpPoly cand(d + 1, Int(0));
    cand[d] = 1;
    for (Int idx = 0; idx < total; ++idx) {
      Int rest = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = imod(rest, p);
        rest /= p;
      }
      int mult = 0;
      for (;;) {
        FpPoly quo, rem;
        fp_divmod(f, cand, p, quo, rem);
        if (!rem.empty()) break;
        f = std::move(quo);
        ++mult;
      }
      if (mult > 0) out.emplace_back(cand, mult);
      if (2 * d > fp_deg(f)) break;
    }
  }
  if (fp_deg(f) >= 1) out.emplace_back(f, 1);
  return out;
}

Int z_residue(const Rat& x, const Int& p, long K) {
  Int m = 1;
  for (long i = 0; i < K; ++i) m *= p;
  Int den = imod(x.get_den(), m);
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t());
  if (g != 1) fail(errc::config, "denominator divisible by " + p.get_str());
  return imod(imod(x.get_num(), m) * minv(den, m), m);
}

ZPoly z_from_q(const QPoly& f, const Int& p, long K) {
  ZPoly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = z_residue(f[i], p, K);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

namespace {

ZPoly z_mul(const ZPoly& a, const ZPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  for (auto& c : out) c = imod(c, m);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

LiftedPair hensel_factor_pair(const ZPoly& f, const FpPoly& g0, const FpPoly& h0,
                              const Int& p, long K) {
  int dg = fp_deg(g0), dh = fp_deg(h0);
  if (dg < 0 || dh < 0 || g0[dg] != 1 || h0[dh] != 1)
    fail(errc::internal, "factor pair must be monic");
  FpPoly g, u, v;
  fp_xgcd(g0, h0, p, g, u, v);
  if (fp_deg(g) != 0) fail(errc::domain, "factor pair is not coprime mod " + p.get_str());

  Int m = 1;
  for (long i = 0; i < K; ++i) m *= p;
  ZPoly G(g0.begin(), g0.begin() + dg + 1);
  ZPoly H(h0.begin(), h0.begin() + dh + 1);
  if (static_cast<int>(f.size()) != dg + dh + 1 || imod(f.back() - 1, p) != 0)
    fail(errc::internal, "degree mismatch in factor lifting");

  Int pk = 1;
  for (long k = 1; k < K; ++k) {
    pk *= p;
    ZPoly gh = z_mul(G, H, m);
    gh.resize(f.size(), Int(0));
    FpPoly E(f.size());
    bool zero = true;
    for (size_t i = 0; i < f.size(); ++i) {
      Int diff = imod(f[i] - gh[i], m);
      if (imod(diff, pk) != 0) fail(errc::internal, "factor lifting lost divisibility");
      E[i] = imod(diff / pk, p);
      if (E[i] != 0) zero = false;
    }
    if (zero) continue;
    E = fp_trim(std::move(E));
    FpPoly quo, dg_corr, dh_corr;
    fp_divmod(fp_mul(v, E, p), g0, p, quo, dg_corr);
    fp_divmod(fp_mul(u, E, p), h0, p, quo, dh_corr);
    for (size_t i = 0; i < dg_corr.size(); ++i) G[i] = imod(G[i] + pk * dg_corr[i], m);
    for (size_t i = 0; i < dh_corr.size(); ++i) H[i] = imod(H[i] + pk * dh_corr[i], m);
  }

  ZPoly gh = z_mul(G, H, m);
  gh.resize(f.size(), Int(0));
  for (size_t i = 0; i < f.size(); ++i)
    if (imod(f[i] - gh[i], m) != 0) fail(errc::internal, "factor lifting failed to converge");
  return {G, H};
}

}  // namespace padic::poly
