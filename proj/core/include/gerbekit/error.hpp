#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gerbekit {

/// Every failure raised by the library carries one of these kinds; the CLI
/// maps them onto exit codes.
enum class ErrorKind {
  NotAssociative,
  NoUnit,
  NoInverse,
  NotClosed,
  MalformedTable,
  NotAHomomorphism,
  NotAMorphism,
  NotSubgroup,
  NotNormal,
  NotACover,
  NotSurjective,
  NotInjective,
  NotExact,
  NotCentral,
  NotAbelianKernel,
  NotACharacter,
  InvalidCentralData,
  InvalidCocycle,
  AssociativityFailure,
  NotInjectiveKernel,
  NotMorita,
  EmptyApex,
  IncompatibleSpans,
  MoritaMapNotInvertible,
  DegreeOutOfRange,
  DimensionCapExceeded,
  CapExceeded,
  BudgetExceeded,
  NoIsoFound,
  InvariantViolation,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gerbekit
