#include "cooc/error.hpp"

namespace cooc {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroSize: return "ZeroSize";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ProductTooLarge: return "ProductTooLarge";
    case ErrorCode::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorCode::CoordinateMismatch: return "CoordinateMismatch";
    case ErrorCode::NotAbsolutelyContinuous: return "NotAbsolutelyContinuous";
    case ErrorCode::IndexNotSubset: return "IndexNotSubset";
    case ErrorCode::IndexOverlap: return "IndexOverlap";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotFactorizable: return "NotFactorizable";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NonUniqueSolution: return "NonUniqueSolution";
    case ErrorCode::UnknownIndex: return "UnknownIndex";
    case ErrorCode::BadValue: return "BadValue";
  }
  return "Unknown";
}

bool is_witness_error(ErrorCode code) {
  return code == ErrorCode::NotAbsolutelyContinuous || code == ErrorCode::NotFactorizable ||
         code == ErrorCode::NoSolution || code == ErrorCode::NonUniqueSolution;
}

static std::string decorate(ErrorCode code, const std::string& what,
                            const std::vector<std::size_t>& witness) {
  std::string s = std::string(error_name(code)) + ": " + what;
  if (!witness.empty()) {
    s += " (witness ";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(witness[i]);
    }
    s += ")";
  }
  return s;
}

Error::Error(ErrorCode code, const std::string& what, std::vector<std::size_t> witness)
    : std::runtime_error(decorate(code, what, witness)), code_(code), witness_(std::move(witness)) {}

}  // namespace cooc
