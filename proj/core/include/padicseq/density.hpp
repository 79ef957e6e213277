#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "padicseq/recurrence.hpp"

namespace padic {

// Residues attained by s(n) mod p^alpha, n >= 0, as an exact set.
struct ResidueLevel {
  long alpha = 1;
  std::vector<Int> residues;  // sorted; empty in predicted (exact-mode) profiles
  Int count;
  Rat density;  // count / p^alpha
};

enum class DensityMode { empirical, exact };

struct DensityComponent {
  std::string label;
  Rat measure;
};

// Density profile plus, in exact mode, the limiting measure with its
// derivation.  When the refinement recursion fails to close (depth limit),
// has_exact stays false and [inner, outer] bracket the true measure.
struct DensityReport {
  DensityMode mode = DensityMode::empirical;
  std::vector<ResidueLevel> profile;
  bool has_exact = false;
  Rat exact_limit;
  std::vector<DensityComponent> components;
  std::vector<std::string> trace;
  bool has_bracket = false;
  Rat inner;
  Rat outer;
};

// The tree of attained residues: a node at level alpha is a residue mod
// p^alpha, an edge adds one more base-p digit.  In exact mode, nodes whose
// whole coset is certified inside the closure carry a full mark and are not
// expanded further; levels list only the expanded frontier below them.
struct TreeEdge {
  long alpha = 1;  // parent level; child = parent + digit p^alpha
  Int parent;
  Int digit;
  Int child;
};

struct ResidueTree {
  DensityMode mode = DensityMode::empirical;
  Int p;
  std::vector<ResidueLevel> levels;
  std::vector<TreeEdge> edges;
  std::set<std::pair<long, Int>> full_marks;  // (level, residue)
};

inline constexpr long kDefaultStateBudget = 100000000;

// Exact residue set by iterating the state vector mod p^alpha until the
// state repeats; the budget caps visited states.
ResidueLevel attained_residues(const RecurrenceSpec& spec, long alpha,
                               long state_budget = kDefaultStateBudget);

DensityReport density_profile(const RecurrenceSpec& spec, long alpha_max,
                              long state_budget = kDefaultStateBudget);

ResidueTree residue_tree(const RecurrenceSpec& spec, long alpha_max, DensityMode mode,
                         long state_budget = kDefaultStateBudget);

// Limiting density, computed exactly for the supported classes:
// identically zero sequences; all-unit spectra certified saturating (every
// residue attained with Newton margin, density 1); periodic all-unit spectra
// (finite image, density 0); and the order-2 split class with a_0 = +-1 and
// unit weights, where coset membership reduces to a quadratic in the
// exp-parameter and refinement closes as a geometric series.
DensityReport exact_limiting_density(const RecurrenceSpec& spec);

// exact_limit <= min(profile) and the exact engine's predicted per-level
// densities coincide with the enumerated ones wherever both exist
bool bracket_check(const DensityReport& exact_report, const DensityReport& profile);

std::string tree_to_dot(const ResidueTree& tree);
std::string tree_to_text(const ResidueTree& tree);

}  // namespace padic
