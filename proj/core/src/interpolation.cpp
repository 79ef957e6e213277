#include "padicseq/interpolation.hpp"

#include <algorithm>

#include "padicseq/analytic.hpp"

namespace padic {

namespace {

Int mod_nonneg(const Int& n, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

void check_index(const TwistedInterpolation& T, const ResidueIndex& idx) {
  if (idx.q != T.q || idx.f != T.f)
    fail(errc::config, "residue index built for a different family");
  if (idx.r < 0 || idx.r >= T.q) fail(errc::config, "residue index out of range");
  Int imax = T.pf1 > 1 ? T.pf1 : Int(1);
  if (idx.i < 0 || idx.i >= imax) fail(errc::config, "residue index out of range");
}

bool has_nonunit_root(const SpectralData& sd) {
  for (const SpectralRoot& r : sd.roots)
    if (!r.unit) return true;
  return false;
}

}  // namespace

TwistedInterpolation build_interpolation(const RecurrenceSpec& spec) {
  spec.validate();
  TwistedInterpolation T;
  T.spec = spec;
  T.spectral = spectral_decompose(spec);
  T.cls = classify(spec);
  T.consts = error_constants(T.spectral);
  const FieldPtr& K = T.spectral.field;
  T.f = K->f;
  T.q = q_constant(spec.p, K->e);
  T.pf1 = pow_int(spec.p, T.f) - 1;
  T.function_count = T.q * T.pf1;
  for (const SpectralRoot& r : T.spectral.roots) {
    if (!r.unit) continue;
    UnitBranch br;
    br.root = r;
    br.omega = teichmuller(r.beta);
    PadicValue principal = r.beta * invert(br.omega);
    br.lambda = log_p(pow(principal, T.q));
    Valuation lv = valuation(br.lambda);
    // exp_p needs nu(lambda) (p - 1) > e; the q-th power guarantees it
    if (lv.bounded && Int(lv.nu) * (spec.p - 1) <= K->e)
      fail(errc::internal, "interpolation exponent outside the exponential domain");
    T.branches.push_back(std::move(br));
  }
  return T;
}

ResidueIndex resolve_index(const TwistedInterpolation& T, const Int& n) {
  ResidueIndex idx;
  idx.q = T.q;
  idx.f = T.f;
  idx.i = mod_nonneg(n, T.pf1);
  idx.r = mod_nonneg(n, T.q);
  return idx;
}

PadicValue eval(const TwistedInterpolation& T, const ResidueIndex& idx,
                const PadicValue& x) {
  check_index(T, idx);
  const FieldPtr& K = T.spectral.field;
  if (!x.valid() || x.field()->d != 1 || x.field()->p != K->p)
    fail(errc::mismatch, "interpolation argument must lie in Z_p");
  PadicValue xe = embed(x, K);
  long W = std::min(xe.precision(), T.spectral.precision);
  if (T.branches.empty()) return zero(K, W);
  PadicValue nval =
      xe * from_int(K, idx.q, xe.precision()) + from_int(K, idx.r, xe.precision());
  bool started = false;
  ScaledValue acc;
  for (const UnitBranch& br : T.branches) {
    ScaledValue c = binet_coefficient_at(br.root, nval);
    PadicValue twist = pow(br.omega, idx.i - idx.r) * pow(br.root.beta, idx.r);
    PadicValue ex = exp_p(xe * br.lambda);
    ScaledValue term = sv_mul(c, sv_make(twist * ex));
    acc = started ? sv_add(acc, term) : term;
    started = true;
  }
  return sv_to_value(sv_normalize(acc));
}

PadicValue eval_at_integer(const TwistedInterpolation& T, const Int& n) {
  ResidueIndex idx = resolve_index(T, n);
  const FieldPtr& K = T.spectral.field;
  Int xi = (n - idx.r) / idx.q;
  long xprec = std::max(1L, T.spectral.precision / K->e);
  PadicValue x = from_int(base_field(K->p), xi, xprec);
  return eval(T, idx, x);
}

bool in_base_ring(const PadicValue& x) {
  if (x.field()->d == 1) return true;
  PadicValue tail(x.field(), x.precision(), {Int(0), x.coeff(1)});
  return is_zero(tail);
}

PadicValue padic_limit(const TwistedInterpolation& T, const Int& a, const Int& b) {
  const FieldPtr& K = T.spectral.field;
  bool restricted = has_nonunit_root(T.spectral);
  if (restricted && b < 0) fail(errc::domain, "two-sided extension unavailable");
  if (restricted && a < 1)
    fail(errc::domain, "limit index a must be positive when non-unit roots are present");
  long W = T.spectral.precision;
  if (T.branches.empty()) return zero(K, W);
  PadicValue bval = from_int(K, b, W);
  bool started = false;
  ScaledValue acc;
  for (const UnitBranch& br : T.branches) {
    ScaledValue c = binet_coefficient_at(br.root, bval);
    PadicValue twist = pow(br.omega, a) * pow(br.root.beta, b);
    ScaledValue term = sv_mul(c, sv_make(twist));
    acc = started ? sv_add(acc, term) : term;
    started = true;
  }
  return sv_to_value(sv_normalize(acc));
}

bool verify_algebraic(const PadicValue& value, const std::vector<Int>& poly) {
  size_t len = poly.size();
  while (len > 0 && poly[len - 1] == 0) --len;
  if (len == 0) return true;
  const FieldPtr& K = value.field();
  long N = value.precision();
  PadicValue acc = from_int(K, poly[len - 1], N);
  for (size_t k = len - 1; k-- > 0;) acc = acc * value + from_int(K, poly[k], N);
  long deg = static_cast<long>(len) - 1;
  long thr = N - K->e * deg;
  if (thr <= 0) return true;
  Valuation v = valuation(acc);
  return !v.bounded || v.nu >= thr;
}

std::vector<AgreementRow> agreement_report(const RecurrenceSpec& spec,
                                           const TwistedInterpolation& T,
                                           long n_max) {
  const FieldPtr& K = T.spectral.field;
  std::vector<PadicValue> terms = eval_terms(spec, n_max);
  std::vector<AgreementRow> rows;
  rows.reserve(n_max + 1);
  for (long n = 0; n <= n_max; ++n) {
    AgreementRow row;
    row.n = n;
    PadicValue diff = embed(terms[n], K) - eval_at_integer(T, Int(n));
    Valuation v = valuation(diff);
    row.exact = !v.bounded;
    if (v.bounded) row.diff_nu = make_rat(v.nu, K->e);
    if (T.consts.has_C && T.consts.has_D) {
      row.has_bound = true;
      row.bound_nu = T.consts.nu_C + Rat(n) * T.consts.nu_D;
      row.holds = row.exact || row.diff_nu >= row.bound_nu;
    } else if (T.consts.has_C) {
      // finite-support non-unit part: exact outside the support
      row.holds = row.exact || n < spec.order;
    } else {
      row.holds = row.exact;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace padic
