#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Coarse classification used by callers (the CLI maps these onto exit codes).
enum class errc {
  config,        // bad input: non-prime p, malformed polynomial, parse failure
  mismatch,      // operands from incompatible fields
  domain,        // argument outside an operation's domain (log, exp, sqrt, ...)
  unsupported,   // extension or spectral shape outside the supported class
  budget,        // enumeration budget exhausted
  precision,     // not decidable at the working precision
  internal,
};

class padic_error : public std::runtime_error {
 public:
  padic_error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw padic_error(c, what); }

}  // namespace padic
