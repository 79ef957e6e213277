#pragma once

#include "padicseq/localfield.hpp"

namespace padic {

long ilog(const Int& p, const Int& m);        // floor log_p(m), m >= 1
long digit_sum(const Int& p, const Int& m);   // base-p digit sum, m >= 0
long nu_factorial(const Int& p, const Int& m);  // nu_p(m!) = (m - s_p(m))/(p-1)

// Iwasawa logarithm restricted to 1 + M_K: requires nu(x - 1) >= 1.  The
// result precision is the input precision minus max(0, e - nu(x-1)) at p = 2
// and equals it for odd p.
PadicValue log_p(const PadicValue& x);

// exponential; requires nu(x) (p - 1) > e strictly
PadicValue exp_p(const PadicValue& x);

// (exp(x) - exp(-x))/2 for odd p, same domain as exp_p
PadicValue sinh_p(const PadicValue& x);

// Teichmueller representative of a unit: the unique root of unity with
// omega(x) == x mod pi, computed by Frobenius iteration x -> x^(p^f)
PadicValue teichmuller(const PadicValue& x);

// smallest q in {1, p, p^2, ...} with q = 1 allowed only when e < p - 1,
// otherwise the least power of p that is >= e + 1
Int q_constant(const Int& p, int e);

// distance of a unit from its Teichmueller representative, and whether
// exp_p converges on log-type arguments of that valuation
struct DomainCheck {
  Valuation t;   // nu(x / omega(x) - 1)
  bool exp_ok = false;
};
DomainCheck check_general_domain(const PadicValue& x);

}  // namespace padic
