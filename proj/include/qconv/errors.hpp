#ifndef QCONV_ERRORS_HPP
#define QCONV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qconv {

// Malformed input: bad JSON shape, dimension mismatch, out-of-range index.
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric precondition failed: non-Hermitian input, eigenvalue below the
// PSD tolerance, zero trace where a positive trace is required.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside the scope of the statement being checked. The message
// names the violated precondition.
struct ScopeError : std::runtime_error {
  explicit ScopeError(const std::string& msg) : std::runtime_error(msg) {}
};

// A builder's verification stage rejected the assembled structure. The
// message names the first failing axiom and carries the worst slack.
struct BuildError : std::runtime_error {
  explicit BuildError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qconv

#endif
