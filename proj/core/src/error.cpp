#include "gerbekit/error.hpp"

namespace gerbekit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoUnit: return "NoUnit";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotAbelianKernel: return "NotAbelianKernel";
    case ErrorKind::NotACharacter: return "NotACharacter";
    case ErrorKind::InvalidCentralData: return "InvalidCentralData";
    case ErrorKind::InvalidCocycle: return "InvalidCocycle";
    case ErrorKind::AssociativityFailure: return "AssociativityFailure";
    case ErrorKind::NotInjectiveKernel: return "NotInjectiveKernel";
    case ErrorKind::NotMorita: return "NotMorita";
    case ErrorKind::EmptyApex: return "EmptyApex";
    case ErrorKind::IncompatibleSpans: return "IncompatibleSpans";
    case ErrorKind::MoritaMapNotInvertible: return "MoritaMapNotInvertible";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoIsoFound: return "NoIsoFound";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gerbekit
