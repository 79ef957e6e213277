#pragma once

#include <string>
#include <vector>

#include "padicseq/localfield.hpp"

namespace padic {

// Constant-recursive sequence s(n + l) + a_{l-1} s(n + l - 1) + ... + a_0 s(n) = 0
// with p-integral rational data.  `precision` counts requested base-p digits;
// extension computations scale that by the ramification index internally.
struct RecurrenceSpec {
  Int p = 2;
  int order = 0;
  std::vector<Rat> coeffs;   // a_0 .. a_{l-1}
  std::vector<Rat> initial;  // s(0) .. s(l-1)
  long precision = 16;
  long guard = 10;

  void validate() const;
  std::vector<Rat> char_poly() const;  // monic, constant first: x^l + a_{l-1} x^{l-1} + ... + a_0
};

// val / pi^shift.  Lets quotients of negative valuation (Binet coefficients,
// interpolation weights) ride on top of the capped-absolute representation.
struct ScaledValue {
  PadicValue val;
  long shift = 0;
};

PadicValue shift_up(const PadicValue& x, long d);  // x * pi^d, exact, precision grows by d
PadicValue mul_ppow(const PadicValue& x, long k);  // x * p^k, exact, precision grows by e*k

ScaledValue sv_make(PadicValue v);
ScaledValue sv_add(const ScaledValue& a, const ScaledValue& b);
ScaledValue sv_sub(const ScaledValue& a, const ScaledValue& b);
ScaledValue sv_neg(const ScaledValue& a);
ScaledValue sv_mul(const ScaledValue& a, const ScaledValue& b);
ScaledValue sv_div(const ScaledValue& a, const ScaledValue& b);
ScaledValue sv_normalize(ScaledValue a);  // clears as much of the shift as the value allows
bool sv_is_zero(const ScaledValue& a);
Valuation sv_valuation(const ScaledValue& a);  // pi-units; nu may be negative
PadicValue sv_to_value(const ScaledValue& a);  // requires an integral value

// One characteristic root together with its Binet weight polynomial:
// the contribution to s(n) is (sum_k binet[k] n^k) beta^n for an ordinary root.
// A zero root instead contributes sum_j binet[j] delta_{n,j} (finite support).
struct SpectralRoot {
  PadicValue beta;
  int multiplicity = 1;
  bool unit = false;
  bool zero = false;
  std::vector<ScaledValue> binet;
};

struct SpectralData {
  FieldPtr field;
  std::vector<SpectralRoot> roots;
  long precision = 0;        // pi-precision the decomposition was run at
  long coeff_precision = 0;  // worst effective pi-precision among Binet coefficients
};

std::vector<PadicValue> eval_terms(const RecurrenceSpec& spec, long n_max);
PadicValue term_at_index(const RecurrenceSpec& spec, const Int& n);

SpectralData spectral_decompose(const RecurrenceSpec& spec);
ScaledValue binet_coefficient_at(const SpectralRoot& root, const PadicValue& n);
ScaledValue binet_sum(const SpectralData& sd, const Int& n);

enum class InterpTag { ExactTwisted, ApproximateOnly, IdenticallyZero };

struct InterpolabilityClass {
  InterpTag tag = InterpTag::ApproximateOnly;
  std::string witness;
};

InterpolabilityClass classify(const RecurrenceSpec& spec);

// |s(n) - s_i(n)| <= C D^n with C = p^(-nu_C), D = p^(-nu_D).
// A missing constant means the corresponding supremum is 0 (empty non-unit part).
struct ErrorConstants {
  bool has_C = false;
  Rat nu_C;
  bool has_D = false;
  Rat nu_D;
};

ErrorConstants error_constants(const SpectralData& sd);

struct SplittingInvariants {
  int e = 1;
  int f = 1;
  Int q;
  Int function_count;
};

SplittingInvariants splitting_invariants(const RecurrenceSpec& spec);

}  // namespace padic
