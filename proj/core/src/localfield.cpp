#include "padicseq/localfield.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

namespace {

Int imod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int ipow(const Int& b, unsigned long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
  return r;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// modular inverse; gcd(a, m) = 1
Int minv(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(errc::internal, "modular inverse does not exist");
  return r;
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (long q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // deterministic Miller-Rabin for this base set, valid well past 64-bit range
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 80)
    fail(errc::config, "prime candidate too large for the deterministic check");
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Int x;
    Int base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = imod(x * x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

long nu_p(const Int& p, const Int& x) {
  if (x == 0) fail(errc::internal, "valuation of zero integer");
  Int t = x;
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    ++v;
  }
  return v;
}

long nu_p(const Int& p, const Rat& x) {
  if (x == 0) fail(errc::internal, "valuation of zero rational");
  if (mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t()))
    return -nu_p(p, x.get_den());
  return nu_p(p, x.get_num());
}

Int pow_int(const Int& base, long exp) {
  if (exp < 0) fail(errc::internal, "negative exponent");
  return ipow(base, static_cast<unsigned long>(exp));
}

bool ExtensionField::compatible(const ExtensionField& other) const {
  if (p != other.p || d != other.d) return false;
  if (d == 1) return true;
  return kind == other.kind && B == other.B && C == other.C;
}

std::string ExtensionField::describe() const {
  std::ostringstream os;
  if (d == 1) {
    os << "Q_" << p;
  } else {
    os << "Q_" << p << "[x]/(x^2";
    if (B != 0) os << (B > 0 ? "+" : "") << B << "x";
    if (C != 0) os << (C > 0 ? "+" : "") << C;
    os << ")";
    os << (kind == FieldKind::unramified ? " unramified" : " totally ramified");
  }
  return os.str();
}

namespace {

FieldPtr make_base(const Int& p, const Rat& root0) {
  auto K = std::make_shared<ExtensionField>();
  K->p = p;
  K->d = 1;
  K->e = 1;
  K->f = 1;
  K->kind = FieldKind::base;
  K->root0 = root0;
  return K;
}

FieldPtr make_quadratic(const Int& p, FieldKind kind, const Int& B, const Int& C) {
  auto K = std::make_shared<ExtensionField>();
  K->p = p;
  K->d = 2;
  K->kind = kind;
  if (kind == FieldKind::unramified) {
    K->e = 1;
    K->f = 2;
  } else {
    K->e = 2;
    K->f = 1;
  }
  K->B = Rat(B);
  K->C = Rat(C);
  return K;
}

// working moduli are kept with integer coefficients
Int field_Bi(const ExtensionField& K) { return K.B.get_num(); }
Int field_Ci(const ExtensionField& K) { return K.C.get_num(); }

// coefficient modulus exponent for basis slot j at pi-precision N
long coeff_exp(const ExtensionField& K, long N, int j) {
  long n = N - K.basis_val(j);
  if (n <= 0) return 0;
  return ceil_div(n, K.e);
}

Int rat_residue(const Rat& q, const Int& p, const Int& mod) {
  if (mod == 1) return Int(0);
  Int num = imod(q.get_num(), mod);
  Int den = q.get_den();
  if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
    fail(errc::config, "denominator not invertible at p");
  return imod(num * minv(imod(den, mod), mod), mod);
}

// exact square root of a rational that is a perfect square
Rat rat_sqrt_exact(const Rat& q) {
  if (q < 0) fail(errc::internal, "rational square root of a negative");
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  if (n * n != q.get_num() || d * d != q.get_den())
    fail(errc::internal, "rational is not a perfect square");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

FieldPtr base_field(const Int& p) {
  if (!is_prime(p)) fail(errc::config, "p must be prime");
  return make_base(p, Rat(0));
}

PadicValue::PadicValue(FieldPtr field, long precision, std::vector<Int> coeffs)
    : field_(std::move(field)), prec_(precision), coeffs_(std::move(coeffs)) {
  if (prec_ < 0) fail(errc::precision, "negative precision");
  const ExtensionField& K = *field_;
  if (static_cast<int>(coeffs_.size()) != K.d) fail(errc::internal, "coefficient count");
  for (int j = 0; j < K.d; ++j) {
    Int mod = pow_int(K.p, coeff_exp(K, prec_, j));
    coeffs_[j] = imod(coeffs_[j], mod);
  }
}

namespace {

PadicValue make_value(const FieldPtr& K, long N, std::vector<Int> raw) {
  return PadicValue(K, N, std::move(raw));
}

void check_same_field(const PadicValue& x, const PadicValue& y) {
  if (!x.valid() || !y.valid()) fail(errc::internal, "uninitialized value");
  if (!x.field()->compatible(*y.field())) fail(errc::mismatch, "field mismatch");
}

}  // namespace

PadicValue from_int(const FieldPtr& K, const Int& n, long precision) {
  std::vector<Int> c(K->d, Int(0));
  c[0] = n;
  return make_value(K, precision, std::move(c));
}

PadicValue from_rational(const FieldPtr& K, const Rat& q, long precision) {
  Rat qq = q;
  qq.canonicalize();
  std::vector<Int> c(K->d, Int(0));
  Int mod = pow_int(K->p, coeff_exp(*K, precision, 0));
  if (mod > 1) c[0] = rat_residue(qq, K->p, mod);
  return make_value(K, precision, std::move(c));
}

PadicValue zero(const FieldPtr& K, long precision) { return from_int(K, 0, precision); }
PadicValue one(const FieldPtr& K, long precision) { return from_int(K, 1, precision); }

PadicValue uniformizer(const FieldPtr& K, long precision) {
  if (K->kind == FieldKind::eisenstein) return generator(K, precision);
  return from_int(K, K->p, precision);
}

PadicValue generator(const FieldPtr& K, long precision) {
  if (K->d != 2) fail(errc::domain, "no generator in the base field");
  std::vector<Int> c(2, Int(0));
  c[1] = 1;
  return make_value(K, precision, std::move(c));
}

PadicValue operator+(const PadicValue& x, const PadicValue& y) {
  check_same_field(x, y);
  long N = std::min(x.precision(), y.precision());
  std::vector<Int> c(x.field()->d);
  for (int j = 0; j < x.field()->d; ++j) c[j] = x.coeff(j) + y.coeff(j);
  return make_value(x.field(), N, std::move(c));
}

PadicValue operator-(const PadicValue& x, const PadicValue& y) {
  check_same_field(x, y);
  long N = std::min(x.precision(), y.precision());
  std::vector<Int> c(x.field()->d);
  for (int j = 0; j < x.field()->d; ++j) c[j] = x.coeff(j) - y.coeff(j);
  return make_value(x.field(), N, std::move(c));
}

PadicValue operator-(const PadicValue& x) {
  std::vector<Int> c(x.field()->d);
  for (int j = 0; j < x.field()->d; ++j) c[j] = -x.coeff(j);
  return make_value(x.field(), x.precision(), std::move(c));
}

PadicValue operator*(const PadicValue& x, const PadicValue& y) {
  check_same_field(x, y);
  long N = std::min(x.precision(), y.precision());
  const ExtensionField& K = *x.field();
  if (K.d == 1) return make_value(x.field(), N, {x.coeff(0) * y.coeff(0)});
  // theta^2 = -B theta - C
  Int cross = x.coeff(1) * y.coeff(1);
  std::vector<Int> c(2);
  c[0] = x.coeff(0) * y.coeff(0) - field_Ci(K) * cross;
  c[1] = x.coeff(0) * y.coeff(1) + x.coeff(1) * y.coeff(0) - field_Bi(K) * cross;
  return make_value(x.field(), N, std::move(c));
}

PadicValue arith(const PadicValue& x, const PadicValue& y, char op) {
  switch (op) {
    case '+': return x + y;
    case '-': return x - y;
    case '*': return x * y;
    default: fail(errc::config, "unknown arith op");
  }
}

bool is_zero(const PadicValue& x) {
  for (const Int& c : x.coeffs())
    if (c != 0) return false;
  return true;
}

bool equals(const PadicValue& x, const PadicValue& y) {
  check_same_field(x, y);
  return is_zero(x - y);
}

Valuation valuation(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  Valuation v;
  v.cap = x.precision();
  if (is_zero(x)) {
    v.bounded = false;
    return v;
  }
  long nu;
  if (K.d == 1) {
    nu = nu_p(K.p, x.coeff(0));
  } else {
    // nu_pi(x) = e * nu_p(det M_x) / d on the exact canonical representative
    Int det = x.coeff(0) * x.coeff(0) - field_Bi(K) * x.coeff(0) * x.coeff(1) +
              field_Ci(K) * x.coeff(1) * x.coeff(1);
    if (det == 0) fail(errc::internal, "degenerate norm");
    long nd = nu_p(K.p, det);
    if ((nd * K.e) % K.d != 0) fail(errc::internal, "norm valuation parity");
    nu = nd * K.e / K.d;
  }
  if (nu >= x.precision()) {
    v.bounded = false;
    return v;
  }
  v.nu = nu;
  return v;
}

long valuation_or(const PadicValue& x, long fallback) {
  Valuation v = valuation(x);
  return v.bounded ? v.nu : fallback;
}

PadicValue reduce_precision(const PadicValue& x, long precision) {
  if (precision > x.precision()) fail(errc::precision, "cannot raise precision by reduction");
  return make_value(x.field(), precision, x.coeffs());
}

PadicValue lift_representative(const PadicValue& x, long precision) {
  if (precision < x.precision()) return reduce_precision(x, precision);
  return make_value(x.field(), precision, x.coeffs());
}

PadicValue conj(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  if (K.d == 1) return x;
  std::vector<Int> c(2);
  c[0] = x.coeff(0) - field_Bi(K) * x.coeff(1);
  c[1] = -x.coeff(1);
  return make_value(x.field(), x.precision(), std::move(c));
}

namespace {

// norm of the canonical representative, exact
Int norm_exact(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  if (K.d == 1) return x.coeff(0);
  return x.coeff(0) * x.coeff(0) - field_Bi(K) * x.coeff(0) * x.coeff(1) +
         field_Ci(K) * x.coeff(1) * x.coeff(1);
}

}  // namespace

PadicValue invert(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  Valuation v = valuation(x);
  if (!v.bounded || v.nu != 0) fail(errc::domain, "not invertible at this precision");
  long N = x.precision();
  if (K.d == 1) {
    Int mod = pow_int(K.p, coeff_exp(K, N, 0));
    return make_value(x.field(), N, {minv(x.coeff(0), mod)});
  }
  Int n = norm_exact(x);
  Int mod = pow_int(K.p, coeff_exp(K, N, 0) + 1);
  Int w = minv(imod(n, mod), mod);
  PadicValue cx = conj(x);
  return make_value(x.field(), N, {cx.coeff(0) * w, cx.coeff(1) * w});
}

PadicValue div_exact(const PadicValue& x, const PadicValue& y) {
  check_same_field(x, y);
  const ExtensionField& K = *x.field();
  Valuation vy = valuation(y);
  if (!vy.bounded) fail(errc::domain, "division by a value indistinguishable from zero");
  long t = vy.nu;
  long N = std::min(x.precision(), y.precision()) - t;
  if (N < 0) fail(errc::precision, "no precision left after division");
  if (is_zero(x)) return zero(x.field(), N);
  Valuation vx = valuation(x);
  if (vx.bounded && vx.nu < t) fail(errc::domain, "quotient not integral");
  // x/y = x conj(y) / N(y); for d == 1 the norm is y itself
  Int n = norm_exact(y);
  long s = nu_p(K.p, n);
  Int ps = pow_int(K.p, s);
  Int w = n / ps;
  std::vector<Int> raw(K.d);
  if (K.d == 1) {
    raw[0] = x.coeff(0);
  } else {
    PadicValue cy = conj(y);
    Int cross = x.coeff(1) * cy.coeff(1);
    raw[0] = x.coeff(0) * cy.coeff(0) - field_Ci(K) * cross;
    raw[1] = x.coeff(0) * cy.coeff(1) + x.coeff(1) * cy.coeff(0) - field_Bi(K) * cross;
  }
  Int mod = pow_int(K.p, coeff_exp(K, N, 0) + K.e);
  Int winv = minv(imod(w, mod), mod);
  for (int j = 0; j < K.d; ++j) {
    if (!mpz_divisible_p(raw[j].get_mpz_t(), ps.get_mpz_t()))
      fail(errc::precision, "quotient coordinates not integral at this precision");
    raw[j] = (raw[j] / ps) * winv;
  }
  return make_value(x.field(), N, std::move(raw));
}

PadicValue pow(const PadicValue& x, const Int& n) {
  if (n < 0) return pow(invert(x), -n);
  PadicValue acc = one(x.field(), x.precision());
  PadicValue base = x;
  Int k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

PadicValue embed(const PadicValue& x, const FieldPtr& K) {
  if (x.field()->d != 1) {
    if (x.field()->compatible(*K)) return make_value(K, x.precision(), x.coeffs());
    fail(errc::mismatch, "can only embed base-field values");
  }
  if (x.field()->p != K->p) fail(errc::mismatch, "field mismatch");
  std::vector<Int> c(K->d, Int(0));
  c[0] = x.coeff(0);
  return make_value(K, static_cast<long>(K->e) * x.precision(), std::move(c));
}

namespace {

// square root of the unit u modulo p^m, p odd; canonical least residue mod p
Int unit_sqrt_odd(const Int& p, const Int& u, long m) {
  Int r0 = imod(u, p);
  Int leg;
  Int expo = (p - 1) / 2;
  mpz_powm(leg.get_mpz_t(), r0.get_mpz_t(), expo.get_mpz_t(), p.get_mpz_t());
  if (leg != 1) fail(errc::domain, "not a square");
  if (p > 5000000) fail(errc::unsupported, "residue square root search: p too large");
  Int r = 0;
  for (Int i = 1; i < p; ++i) {
    if (imod(i * i - r0, p) == 0) {
      r = i;
      break;
    }
  }
  long have = 1;
  Int y = r;
  while (have < m) {
    have = std::min(2 * have, m);
    Int mod = pow_int(p, have);
    Int inv2y = minv(imod(2 * y, mod), mod);
    y = imod(y + (u - y * y) * inv2y, mod);
  }
  Int modm = pow_int(p, m);
  Int res = imod(y, modm);
  Int low = imod(res, p);
  if (low > p - low) res = modm - res;
  return res;
}

// square root of u == 1 mod 8 modulo 2^(m-1); canonical root == 1 mod 4
Int unit_sqrt_two(const Int& u, long m) {
  Int y = 1;
  for (long k = 3; k < m; ++k) {
    Int diff = y * y - u;
    if (mpz_tstbit(diff.get_mpz_t(), static_cast<unsigned long>(k))) {
      Int add;
      mpz_ui_pow_ui(add.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
      y += add;
    }
  }
  return imod(y, pow_int(Int(2), std::max(1L, m - 1)));
}

}  // namespace

bool is_square(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  if (K.d != 1) fail(errc::unsupported, "square root is supported in the base field only");
  if (is_zero(x)) return true;
  long nu = nu_p(K.p, x.coeff(0));
  if (nu % 2 != 0) return false;
  Int u = x.coeff(0) / pow_int(K.p, nu);
  long m = x.precision() - nu;
  if (K.p == 2) {
    if (m < 3) fail(errc::precision, "squareness undecidable at this precision");
    return imod(u, 8) == 1;
  }
  Int leg;
  Int r0 = imod(u, K.p);
  Int expo = (K.p - 1) / 2;
  mpz_powm(leg.get_mpz_t(), r0.get_mpz_t(), expo.get_mpz_t(), K.p.get_mpz_t());
  return leg == 1;
}

PadicValue sqrt(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  if (K.d != 1) fail(errc::unsupported, "square root is supported in the base field only");
  long N = x.precision();
  if (is_zero(x)) return zero(x.field(), ceil_div(N, 2));
  long nu = nu_p(K.p, x.coeff(0));
  if (nu % 2 != 0) fail(errc::domain, "not a square");
  Int u = x.coeff(0) / pow_int(K.p, nu);
  long m = N - nu;
  Int root;
  long res_prec;
  if (K.p == 2) {
    if (m < 3) fail(errc::precision, "square root undecidable at this precision");
    if (imod(u, 8) != 1) fail(errc::domain, "not a square");
    root = unit_sqrt_two(u, m);
    res_prec = N - nu / 2 - 1;
  } else {
    root = unit_sqrt_odd(K.p, u, m);
    res_prec = N - nu / 2;
  }
  return make_value(x.field(), res_prec, {root * pow_int(K.p, nu / 2)});
}

PadicValue eval_poly(const std::vector<PadicValue>& fpoly, const PadicValue& x) {
  if (fpoly.empty()) fail(errc::config, "empty polynomial");
  PadicValue acc = fpoly.back();
  for (auto it = fpoly.rbegin() + 1; it != fpoly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PadicValue hensel_lift(const std::vector<PadicValue>& fpoly, const PadicValue& a) {
  if (fpoly.size() < 2) fail(errc::config, "polynomial must be nonconstant");
  std::vector<PadicValue> dpoly;
  for (size_t k = 1; k < fpoly.size(); ++k)
    dpoly.push_back(fpoly[k] *
                    from_int(a.field(), Int(static_cast<long>(k)), fpoly[k].precision()));
  PadicValue fa = eval_poly(fpoly, a);
  if (is_zero(fa)) return a;
  PadicValue fpa = eval_poly(dpoly, a);
  Valuation vf = valuation(fa);
  Valuation vd = valuation(fpa);
  if (!vd.bounded || (vf.bounded && vf.nu <= 2 * vd.nu)) {
    std::ostringstream os;
    os << "Hensel criterion not satisfied: nu(f(a)) = ";
    if (vf.bounded) os << vf.nu;
    else os << ">= " << vf.cap;
    os << ", nu(f'(a)) = ";
    if (vd.bounded) os << vd.nu;
    else os << ">= " << vd.cap;
    fail(errc::domain, os.str());
  }
  long t = vd.nu;
  PadicValue y = a;
  for (int iter = 0; iter < 64; ++iter) {
    PadicValue fy = eval_poly(fpoly, y);
    if (is_zero(fy)) return reduce_precision(y, std::max(0L, y.precision() - t));
    PadicValue fpy = eval_poly(dpoly, y);
    y = y - div_exact(fy, fpy);
  }
  fail(errc::precision, "Hensel iteration did not converge");
}

std::vector<PiDigit> pi_expansion(const PadicValue& x) {
  const ExtensionField& K = *x.field();
  long N = x.precision();
  std::vector<PiDigit> out;
  out.reserve(static_cast<size_t>(N));
  if (K.kind != FieldKind::eisenstein) {
    Int a = x.coeff(0), b = (K.d == 2) ? x.coeff(1) : Int(0);
    for (long j = 0; j < N; ++j) {
      PiDigit dg;
      dg.c0 = mpz_get_si(imod(a, K.p).get_mpz_t());
      dg.c1 = mpz_get_si(imod(b, K.p).get_mpz_t());
      a = (a - dg.c0) / K.p;
      b = (b - dg.c1) / K.p;
      out.push_back(dg);
    }
    return out;
  }
  PadicValue w = x;
  for (long j = 0; j < N; ++j) {
    PiDigit dg;
    dg.c0 = mpz_get_si(imod(w.coeff(0), K.p).get_mpz_t());
    out.push_back(dg);
    if (j + 1 == N) break;
    PadicValue d0 = from_int(x.field(), Int(dg.c0), w.precision());
    w = div_exact(w - d0, generator(x.field(), w.precision()));
  }
  return out;
}

PadicValue pi_reassemble(const FieldPtr& K, const std::vector<PiDigit>& digits, long precision) {
  long work = precision + 2;
  PadicValue pi = uniformizer(K, work);
  PadicValue acc = zero(K, work);
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    std::vector<Int> c(K->d, Int(0));
    c[0] = it->c0;
    if (K->d == 2 && K->kind == FieldKind::unramified) c[1] = it->c1;
    acc = acc * pi + make_value(K, work, std::move(c));
  }
  return reduce_precision(acc, std::min(precision, static_cast<long>(digits.size())));
}

std::string to_string(const PadicValue& x) {
  std::ostringstream os;
  os << x.coeff(0);
  if (x.field()->d == 2) os << " + " << x.coeff(1) << "*t";
  os << " + O(pi^" << x.precision() << ")";
  return os.str();
}

std::string digit_string(const PadicValue& x) {
  std::ostringstream os;
  auto digs = pi_expansion(x);
  bool pair = x.field()->d == 2 && x.field()->kind == FieldKind::unramified;
  os << "[";
  for (size_t j = 0; j < digs.size(); ++j) {
    if (j) os << " ";
    if (pair && digs[j].c1 != 0)
      os << digs[j].c0 << "+" << digs[j].c1 << "t";
    else
      os << digs[j].c0;
  }
  os << "]";
  return os.str();
}

namespace {

// strip small square factors coprime to p so normal-form moduli stay tidy
Int strip_squares(Int m, const Int& p) {
  for (long s : {2, 3, 5, 7}) {
    if (p == s) continue;
    Int s2(s * s);
    while (m != 0 && mpz_divisible_p(m.get_mpz_t(), s2.get_mpz_t())) m /= s2;
  }
  return m;
}

bool unit_is_qr(const Int& p, const Rat& u) {
  Int r = rat_residue(u, p, p);
  Int leg;
  Int expo = (p - 1) / 2;
  mpz_powm(leg.get_mpz_t(), r.get_mpz_t(), expo.get_mpz_t(), p.get_mpz_t());
  return leg == 1;
}

// u = U/V in lowest terms; U*V is an integer in the same square class as u
Int unit_int_class(const Rat& u) {
  Rat c = u;
  c.canonicalize();
  return c.get_num() * c.get_den();
}

}  // namespace

QuadraticAnalysis analyze_quadratic(const Int& p, const Rat& b, const Rat& c, long precision) {
  QuadraticAnalysis qa;
  qa.kind = QuadraticAnalysis::Kind::unsupported;
  if (!is_prime(p)) fail(errc::config, "p must be prime");
  if (mpz_divisible_p(b.get_den().get_mpz_t(), p.get_mpz_t()) ||
      mpz_divisible_p(c.get_den().get_mpz_t(), p.get_mpz_t()))
    fail(errc::config, "coefficients must be p-integral");
  Rat delta = b * b - 4 * c;
  delta.canonicalize();
  FieldPtr Q = make_base(p, Rat(0));
  const long pad = 8;

  if (delta == 0) {
    qa.kind = QuadraticAnalysis::Kind::split;
    PadicValue r = from_rational(Q, -b / 2, precision);
    qa.roots = {r, r};
    qa.note = "double rational root";
    return qa;
  }

  if (p != 2) {
    long w = nu_p(p, delta);
    long k = w / 2;
    Rat unit = delta / Rat(pow_int(p, 2 * k));
    unit.canonicalize();
    if (w % 2 == 0 && unit_is_qr(p, unit)) {
      qa.kind = QuadraticAnalysis::Kind::split;
      long work = precision + 2 * k + pad;
      PadicValue sd = sqrt(from_rational(Q, unit, work)) * from_int(Q, pow_int(p, k), work);
      PadicValue half = from_rational(Q, Rat(1, 2), work);
      PadicValue mb = from_rational(Q, -b, work);
      qa.roots = {reduce_precision((mb + sd) * half, precision),
                  reduce_precision((mb - sd) * half, precision)};
      return qa;
    }
    Int m = strip_squares(unit_int_class(unit), p);
    bool unram = (w % 2 == 0);
    qa.kind = unram ? QuadraticAnalysis::Kind::unramified : QuadraticAnalysis::Kind::ramified;
    qa.field = make_quadratic(p, unram ? FieldKind::unramified : FieldKind::eisenstein,
                              Int(0), -m);
    // sqrt(delta) = p^k (s/V) theta where m = unit (V/s)^2
    Rat scale = rat_sqrt_exact(Rat(m) / unit);
    long work_pi = qa.field->e * (precision + 2 * k + pad);
    PadicValue theta = generator(qa.field, work_pi);
    PadicValue mul = from_rational(qa.field, Rat(pow_int(p, k)) / scale, work_pi);
    qa.sqrt_delta = reduce_precision(theta * mul, qa.field->e * precision);
    return qa;
  }

  // p == 2
  long nb = (b == 0) ? -1 : nu_p(p, b);
  long nc = (c == 0) ? -1 : nu_p(p, c);
  if (nb == 0) {
    // residue polynomial separable mod 2
    if (nc != 0) {
      qa.kind = QuadraticAnalysis::Kind::split;
      long work = precision + pad;
      std::vector<PadicValue> fp = {from_rational(Q, c, work), from_rational(Q, b, work),
                                    one(Q, work)};
      qa.roots = {reduce_precision(hensel_lift(fp, zero(Q, work)), precision),
                  reduce_precision(hensel_lift(fp, one(Q, work)), precision)};
      return qa;
    }
    qa.kind = QuadraticAnalysis::Kind::unramified;
    Int V = lcm(b.get_den(), c.get_den());
    Rat Bn = b * V, Cn = c * V * V;
    Bn.canonicalize();
    Cn.canonicalize();
    qa.field = make_quadratic(p, FieldKind::unramified, Bn.get_num(), Cn.get_num());
    long work_pi = precision + pad;
    // theta' = V theta, so sqrt(delta) = (2/V) theta' + b
    PadicValue sd = from_rational(qa.field, Rat(2) / Rat(V), work_pi) *
                        generator(qa.field, work_pi) +
                    from_rational(qa.field, b, work_pi);
    qa.sqrt_delta = reduce_precision(sd, precision);
    return qa;
  }
  if (nc == 1) {
    // directly Eisenstein; integerize the modulus and keep it
    qa.kind = QuadraticAnalysis::Kind::ramified;
    Int V = lcm(b.get_den(), c.get_den());
    Rat Bn = b * V, Cn = c * V * V;
    Bn.canonicalize();
    Cn.canonicalize();
    qa.field = make_quadratic(p, FieldKind::eisenstein, Bn.get_num(), Cn.get_num());
    long work_pi = 2 * (precision + pad);
    PadicValue sd = from_rational(qa.field, Rat(2) / Rat(V), work_pi) *
                        generator(qa.field, work_pi) +
                    from_rational(qa.field, b, work_pi);
    qa.sqrt_delta = reduce_precision(sd, 2 * precision);
    return qa;
  }
  // b even, complete the square: D = (b/2)^2 - c, delta = 4 D
  Rat D = (b / 2) * (b / 2) - c;
  D.canonicalize();
  long w = nu_p(p, D);
  long k = w / 2;
  Rat unit = D / Rat(pow_int(p, 2 * k));
  unit.canonicalize();
  if (w % 2 == 1) {
    qa.kind = QuadraticAnalysis::Kind::ramified;
    Int m = strip_squares(unit_int_class(unit), p);
    qa.field = make_quadratic(p, FieldKind::eisenstein, Int(0), -m);
    Rat scale = rat_sqrt_exact(Rat(m) / unit);
    long work_pi = 2 * (precision + 2 * k + pad);
    PadicValue theta = generator(qa.field, work_pi);
    PadicValue mul = from_rational(qa.field, Rat(2 * pow_int(p, k)) / scale, work_pi);
    qa.sqrt_delta = reduce_precision(theta * mul, 2 * precision);
    return qa;
  }
  Int ucls = imod(unit_int_class(unit), Int(8));
  if (ucls == 1) {
    qa.kind = QuadraticAnalysis::Kind::split;
    long work = precision + 2 * k + pad + 4;
    PadicValue sd = sqrt(from_rational(Q, unit, work)) * from_int(Q, 2 * pow_int(p, k), work);
    PadicValue half = from_rational(Q, Rat(1, 2), work);
    PadicValue mb = from_rational(Q, -b, work);
    qa.roots = {reduce_precision((mb + sd) * half, precision),
                reduce_precision((mb - sd) * half, precision)};
    return qa;
  }
  if (ucls == 5) {
    qa.kind = QuadraticAnalysis::Kind::unramified;
    Int uu = unit_int_class(unit);
    Rat t = (Rat(1) - Rat(uu)) / 4;
    t.canonicalize();
    qa.field = make_quadratic(p, FieldKind::unramified, Int(-1), t.get_num());
    // theta = (1 + sqrt(uu))/2 and uu = unit V^2, so
    // sqrt(delta) = 2^(k+1) (2 theta - 1) / V
    Rat V = rat_sqrt_exact(Rat(uu) / unit);
    long work_pi = precision + 2 * k + pad + 4;
    PadicValue two_theta_m1 =
        from_int(qa.field, 2, work_pi) * generator(qa.field, work_pi) - one(qa.field, work_pi);
    PadicValue mul = from_rational(qa.field, Rat(2 * pow_int(p, k)) / V, work_pi);
    qa.sqrt_delta = reduce_precision(two_theta_m1 * mul, precision);
    return qa;
  }
  qa.kind = QuadraticAnalysis::Kind::unsupported;
  qa.note = "wild quadratic extension outside the supported normal forms";
  return qa;
}

FieldPtr build_extension(const Int& p, const std::vector<Rat>& modulus) {
  if (!is_prime(p)) fail(errc::config, "p must be prime");
  if (modulus.size() < 2 || modulus.size() > 3) fail(errc::config, "modulus degree must be 1 or 2");
  if (modulus.back() != 1) fail(errc::config, "modulus must be monic");
  for (const Rat& q : modulus)
    if (mpz_divisible_p(q.get_den().get_mpz_t(), p.get_mpz_t()))
      fail(errc::config, "modulus coefficients must be p-integral");
  if (modulus.size() == 2) return make_base(p, -modulus[0]);
  QuadraticAnalysis qa = analyze_quadratic(p, modulus[1], modulus[0], 8);
  switch (qa.kind) {
    case QuadraticAnalysis::Kind::split:
      fail(errc::unsupported,
           "modulus splits over Q_p: the extension is trivial, factor it instead");
    case QuadraticAnalysis::Kind::unsupported:
      fail(errc::unsupported, "unsupported extension: " + qa.note);
    default:
      return qa.field;
  }
}

}  // namespace padic
