#include "padicseq/analytic.hpp"

#include <algorithm>

namespace padic {

long ilog(const Int& p, const Int& m) {
  if (m < 1) fail(errc::internal, "ilog of a nonpositive value");
  Int t = m;
  long j = 0;
  while (t >= p) {
    t /= p;
    ++j;
  }
  return j;
}

long digit_sum(const Int& p, const Int& m) {
  if (m < 0) fail(errc::internal, "digit sum of a negative value");
  Int t = m;
  Int s = 0;
  while (t > 0) {
    s += t % p;
    t /= p;
  }
  return mpz_get_si(s.get_mpz_t());
}

long nu_factorial(const Int& p, const Int& m) {
  Int num = m - digit_sum(p, m);
  Int den = p - 1;
  Int q = num / den;
  return mpz_get_si(q.get_mpz_t());
}

namespace {

// smallest M so every later log term z^m/m with nu(z) = t lies above target
long log_cutoff(const Int& p, long e, long t, long target) {
  for (long m = 1;; ++m) {
    long j = ilog(p, Int(m));
    if (m * t - e * j < target) continue;
    // the next power of p is the only later index that can dip lower
    long jn = j + 1;
    Int q = pow_int(p, jn);
    Int bound = q * t - e * jn;
    if (bound >= target) return m;
  }
}

}  // namespace

PadicValue log_p(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  long N = x.precision();
  long e = K.e;
  PadicValue z = x - one(x.field(), N);
  Valuation vz = valuation(z);
  if (vz.bounded && vz.nu < 1) fail(errc::domain, "log requires an argument in 1 + M");
  long delta = (K.p == 2) ? std::max(0L, e - (vz.bounded ? vz.nu : N)) : 0;
  long res_prec = std::max(0L, N - delta);
  if (!vz.bounded) return zero(x.field(), res_prec);
  long t = vz.nu;
  long M = log_cutoff(K.p, e, t, N);
  long maxdiv = e * (ilog(K.p, Int(std::max(M, 1L))) + 1);
  long W = N + maxdiv + 4;
  PadicValue zl = lift_representative(z, W);
  PadicValue acc = zero(x.field(), W);
  PadicValue zpow = one(x.field(), W);
  for (long m = 1; m <= M; ++m) {
    zpow = zpow * zl;
    PadicValue term = div_exact(zpow, from_int(x.field(), Int(m), W));
    term = lift_representative(term, W);
    if (m % 2 == 0) acc = acc - term;
    else acc = acc + term;
  }
  return reduce_precision(acc, res_prec);
}

PadicValue exp_p(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  long N = x.precision();
  long e = K.e;
  Int pm1 = K.p - 1;
  Valuation vx = valuation(x);
  if (!vx.bounded) return one(x.field(), N);
  long t = vx.nu;
  if (Int(t) * pm1 <= e) fail(errc::domain, "exp diverges at this valuation");
  // m (t - e/(p-1)) >= N once m >= M
  Int num = Int(N) * pm1;
  Int den = Int(t) * pm1 - e;
  Int Mi = (num + den - 1) / den;
  long M = mpz_get_si(Mi.get_mpz_t());
  long maxdiv = e * nu_factorial(K.p, Int(M));
  long W = N + maxdiv + 4;
  PadicValue xl = lift_representative(x, W);
  PadicValue acc = one(x.field(), W);
  PadicValue xpow = one(x.field(), W);
  Int mfact = 1;
  for (long m = 1; m <= M; ++m) {
    xpow = xpow * xl;
    mfact *= m;
    PadicValue term = div_exact(xpow, from_int(x.field(), mfact, W));
    acc = acc + lift_representative(term, W);
  }
  return reduce_precision(acc, N);
}

PadicValue sinh_p(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  if (K.p == 2) fail(errc::domain, "sinh is restricted to odd p");
  PadicValue ex = exp_p(x);
  PadicValue emx = exp_p(-x);
  return (ex - emx) * from_rational(x.field(), Rat(1, 2), ex.precision());
}

PadicValue teichmuller(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  Valuation v = valuation(x);
  if (!v.bounded || v.nu != 0) fail(errc::domain, "Teichmueller lift needs a unit");
  long N = x.precision();
  if (K.p == 2 && K.f == 1) return one(x.field(), N);
  Int q = pow_int(K.p, K.f);
  PadicValue y = x;
  for (long iter = 0; iter < N + 2; ++iter) {
    PadicValue yn = pow(y, q);
    if (equals(yn, y)) return y;
    y = yn;
  }
  fail(errc::precision, "Teichmueller iteration did not stabilize");
}

Int q_constant(const Int& p, int e) {
  if (e < p - 1) return Int(1);
  Int q = 1;
  while (q < e + 1) q *= p;
  return q;
}

DomainCheck check_general_domain(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  PadicValue w = teichmuller(x);
  PadicValue r = x * invert(w);
  DomainCheck out;
  out.t = valuation(r - one(x.field(), r.precision()));
  long t_eff = out.t.bounded ? out.t.nu : out.t.cap;
  out.exp_ok = Int(t_eff) * (K.p - 1) > K.e;
  return out;
}

}  // namespace padic
