#pragma once

#include <string>
#include <vector>

#include "padicseq/density.hpp"
#include "padicseq/interpolation.hpp"

namespace padic {

// JSON serialization for the CLI and for anything that wants to pipe values
// between runs.  Schemas:
//
//   recurrence  { "p", "order"?, "coeffs", "initial", "precision"?, "guard"? }
//   value       { "p", "modulus", "precision_pi_units", "coeffs" }
//   limit       { "a", "b", "limit": value, "algebraic_witness"?: [ints] }
//
// Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
// decimal strings; both forms parse.  Rationals travel as "num/den" strings
// (or plain integers).  The modulus is the working polynomial of the value's
// field, constant first with the leading 1 included; base-field values carry
// [0, 1].  Parsers throw errc::config with a pointed message on bad input.

Rat parse_rat(const std::string& s);
std::string rat_string(const Rat& q);

RecurrenceSpec spec_from_json(const std::string& text);
std::string spec_to_json(const RecurrenceSpec& spec);

std::string value_to_json(const PadicValue& x);
PadicValue value_from_json(const std::string& text);

struct LimitRecord {
  Int a;
  Int b;
  PadicValue limit;
  std::vector<Int> witness;  // polynomial, leading coefficient first; empty when absent
};

std::string limit_to_json(const LimitRecord& rec);
LimitRecord limit_from_json(const std::string& text);

// emission only; the reports are terminal artifacts
std::string report_to_json(const DensityReport& rep);
std::string tree_to_json(const ResidueTree& tree);

}  // namespace padic
