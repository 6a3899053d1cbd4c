#pragma once

#include <stdexcept>
#include <string>

namespace holoforge {

enum class Errc {
  DimensionMismatch,
  SizeMismatch,
  RingMismatch,
  NotInvertible,
  NotSquare,
  NotField,
  NotSimilar,
  NotInvariant,
  NotIndependent,
  NotUnipotent,
  NotAbelian,
  NotNormal,
  NotComplement,
  NotFreeBasis,
  NotFaithful,
  NotAutomorphism,
  DerivedNotContained,
  ZeroPolynomial,
  CapExceeded,
  BudgetExceeded,
  ParseError,
  UnknownExample,
  UnknownSuite,
  Internal,
};

/// Single exception type for the whole library; `code()` distinguishes the
/// contract violation, `what()` carries context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace holoforge
