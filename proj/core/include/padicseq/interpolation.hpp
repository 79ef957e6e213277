#pragma once

#include <string>
#include <vector>

#include "padicseq/recurrence.hpp"

namespace padic {

// Index (i, r) of one interpolation function: i picks the class of n modulo
// p^f - 1 (Teichmueller direction), r the class modulo q.  The function
// s_{i,r} is defined on r + q Z_p and agrees with s on
// A_{i,r} = { m >= 0 : m == i mod p^f - 1, m == r mod q }.
struct ResidueIndex {
  Int i;
  Int r;
  Int q = 1;
  int f = 1;
};

// Data for one unit characteristic root: omega = teichmuller(beta) and
// lambda = log_p((beta / omega)^q), which sits strictly inside the domain of
// exp_p by construction.
struct UnitBranch {
  SpectralRoot root;
  PadicValue omega;
  PadicValue lambda;
};

// The family of q (p^f - 1) p-adic analytic functions interpolating the unit
// part of the sequence:
//   s_{i,r}(q x + r) = sum over unit roots of
//       c_beta(q x + r) omega_beta^(i - r) beta^r exp_p(x lambda_beta).
// Values lie in the ambient field of the spectral decomposition; for
// conjugate-symmetric data they land in Z_p, which callers can check with
// in_base_ring below.  An empty unit part yields the zero family.
struct TwistedInterpolation {
  RecurrenceSpec spec;
  SpectralData spectral;
  InterpolabilityClass cls;
  ErrorConstants consts;
  Int q;
  int f = 1;
  Int pf1;  // p^f - 1
  Int function_count;
  std::vector<UnitBranch> branches;
};

TwistedInterpolation build_interpolation(const RecurrenceSpec& spec);

// class of the integer index n: i = n mod p^f - 1, r = n mod q
ResidueIndex resolve_index(const TwistedInterpolation& T, const Int& n);

// s_{i,r} at the point q x + r, x in Z_p (a base-field value)
PadicValue eval(const TwistedInterpolation& T, const ResidueIndex& idx,
                const PadicValue& x);

// s_{i,r}(n) for the classes of n itself; defined for every integer n
PadicValue eval_at_integer(const TwistedInterpolation& T, const Int& n);

// whether all coordinates beyond the first vanish at working precision
bool in_base_ring(const PadicValue& x);

// lim_{n -> inf} s(a p^{f n} + b) = sum over unit roots of
// c_beta(b) omega_beta^a beta^b.  Negative b (and a < 1) need every
// characteristic root to be a unit; otherwise the two-sided extension does
// not exist and the call fails with errc::domain.
PadicValue padic_limit(const TwistedInterpolation& T, const Int& a, const Int& b);

// whether poly (integer coefficients, constant first) vanishes at `value`
// modulo pi^(N - e deg poly), N the value's precision
bool verify_algebraic(const PadicValue& value, const std::vector<Int>& poly);

// One row of the empirical comparison |s(n) - s_{i,r}(n)| <= C D^n.
// Valuations are p-valuations (rational in ramified fields).  When the
// non-unit part has finite support the geometric bound degenerates; such rows
// carry has_bound == false and hold on exactness (or inside the support).
struct AgreementRow {
  long n = 0;
  bool exact = false;  // difference indistinguishable from 0
  Rat diff_nu;         // p-valuation of s(n) - s_{i,r}(n) when not exact
  bool has_bound = false;
  Rat bound_nu;  // nu_C + n nu_D
  bool holds = false;
};

std::vector<AgreementRow> agreement_report(const RecurrenceSpec& spec,
                                           const TwistedInterpolation& T,
                                           long n_max);

}  // namespace padic
