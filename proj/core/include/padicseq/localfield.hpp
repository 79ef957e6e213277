#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "padicseq/errors.hpp"

namespace padic {

using Int = mpz_class;
using Rat = mpq_class;

// Valuation in uniformizer units, capped by the precision of the queried value.
// bounded == false means "indistinguishable from 0 at this precision", i.e. nu >= cap.
struct Valuation {
  bool bounded = true;
  long nu = 0;
  long cap = 0;
};

enum class FieldKind { base, unramified, eisenstein };

class ExtensionField;
using FieldPtr = std::shared_ptr<const ExtensionField>;

// K/Q_p of degree d <= 2 with basis {1, theta}, theta a root of the working
// modulus x^2 + B x + C.  Ramified fields are kept in Eisenstein form, so the
// generator itself is the uniformizer; unramified moduli stay separable mod p.
class ExtensionField {
 public:
  Int p;
  int d = 1, e = 1, f = 1;
  FieldKind kind = FieldKind::base;
  Rat B, C;    // d == 2 only
  Rat root0;   // d == 1: the root of the (x - c) modulus used to build this field

  // pi-valuation of basis element j (0 for 1 and for unramified theta, 1 for an
  // Eisenstein generator)
  int basis_val(int j) const { return (kind == FieldKind::eisenstein && j == 1) ? 1 : 0; }

  long residue_degree_card_exp() const { return f; }  // residue field F_{p^f}

  bool compatible(const ExtensionField& other) const;
  std::string describe() const;
};

FieldPtr base_field(const Int& p);
// modulus constant-first, monic, degree 1 or 2, coefficients p-integral
FieldPtr build_extension(const Int& p, const std::vector<Rat>& modulus);

bool is_prime(const Int& n);
long nu_p(const Int& p, const Int& x);          // x != 0
long nu_p(const Int& p, const Rat& x);          // x != 0
Int pow_int(const Int& base, long exp);         // exp >= 0

class PadicValue {
 public:
  PadicValue() = default;
  PadicValue(FieldPtr field, long precision, std::vector<Int> coeffs);

  const FieldPtr& field() const { return field_; }
  long precision() const { return prec_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& coeff(int j) const { return coeffs_[j]; }

  bool valid() const { return field_ != nullptr; }

 private:
  FieldPtr field_;
  long prec_ = 0;
  std::vector<Int> coeffs_;
};

// construction
PadicValue from_int(const FieldPtr& K, const Int& n, long precision);
PadicValue from_rational(const FieldPtr& K, const Rat& q, long precision);
PadicValue zero(const FieldPtr& K, long precision);
PadicValue one(const FieldPtr& K, long precision);
PadicValue uniformizer(const FieldPtr& K, long precision);
PadicValue generator(const FieldPtr& K, long precision);  // theta (d == 2)

// arithmetic; operands must come from compatible fields, result precision is
// the minimum of the operand precisions
PadicValue operator+(const PadicValue& x, const PadicValue& y);
PadicValue operator-(const PadicValue& x, const PadicValue& y);
PadicValue operator*(const PadicValue& x, const PadicValue& y);
PadicValue operator-(const PadicValue& x);
PadicValue arith(const PadicValue& x, const PadicValue& y, char op);  // '+', '-', '*'

bool equals(const PadicValue& x, const PadicValue& y);  // at the common precision
bool is_zero(const PadicValue& x);
Valuation valuation(const PadicValue& x);
long valuation_or(const PadicValue& x, long fallback);

PadicValue reduce_precision(const PadicValue& x, long precision);
// Reinterpret the canonical representative at a higher precision.  Only sound
// inside algorithms that account for the representative choice; series code
// uses it for guard digits.
PadicValue lift_representative(const PadicValue& x, long precision);

PadicValue conj(const PadicValue& x);            // identity for d == 1
PadicValue invert(const PadicValue& x);          // unit argument
PadicValue div_exact(const PadicValue& x, const PadicValue& y);  // nu(x) >= nu(y)
PadicValue pow(const PadicValue& x, const Int& n);  // negative n for units
PadicValue embed(const PadicValue& x, const FieldPtr& K);  // base value into K

// d == 1 only; x a unit, or of even valuation after factoring out p, subject to
// the usual quadratic-residue conditions (p odd: Euler criterion; p = 2: unit
// part 1 mod 8).  Canonical root: least residue mod p for p odd, 1 mod 4 for p = 2.
PadicValue sqrt(const PadicValue& x);
bool is_square(const PadicValue& x);

// Hensel lifting for fpoly given by constant-first coefficients over O_K.
// Requires nu(f(a)) > 2 nu(f'(a)) unless f(a) == 0 at full precision.
PadicValue hensel_lift(const std::vector<PadicValue>& fpoly, const PadicValue& a);
PadicValue eval_poly(const std::vector<PadicValue>& fpoly, const PadicValue& x);

// pi-adic digits, least significant first.  For d == 2 unramified each digit is
// a residue-field representative a + b theta with 0 <= a, b < p; otherwise
// digits lie in {0, ..., p-1} and c1 is 0.
struct PiDigit {
  long c0 = 0;
  long c1 = 0;
};
std::vector<PiDigit> pi_expansion(const PadicValue& x);
PadicValue pi_reassemble(const FieldPtr& K, const std::vector<PiDigit>& digits, long precision);

std::string to_string(const PadicValue& x);         // human-readable
std::string digit_string(const PadicValue& x);      // digits, least significant first

// Quadratic analysis of x^2 + b x + c over Q_p: decides split/unramified/
// ramified and hands back sqrt(b^2 - 4c) in the right place.  This is the
// engine behind build_extension for degree 2 and behind spectral root finding.
struct QuadraticAnalysis {
  enum class Kind { split, unramified, ramified, unsupported } kind;
  FieldPtr field;                 // unramified/ramified
  PadicValue sqrt_delta;          // in `field`, at the requested precision
  std::vector<PadicValue> roots;  // split: the two roots in Q_p (may coincide)
  std::string note;
};
QuadraticAnalysis analyze_quadratic(const Int& p, const Rat& b, const Rat& c, long precision);

}  // namespace padic
