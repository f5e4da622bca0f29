#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cooc {

enum class ErrorCode {
  ZeroSize,
  DuplicateLabel,
  SpaceMismatch,
  DomainMismatch,
  ProductTooLarge,
  EmptyIndexSet,
  CoordinateMismatch,
  NotAbsolutelyContinuous,
  IndexNotSubset,
  IndexOverlap,
  BadPartition,
  NotFactorizable,
  IndexMismatch,
  ChainMismatch,
  NoSolution,
  NonUniqueSolution,
  UnknownIndex,
  BadValue,
};

const char* error_name(ErrorCode code);

// Witness errors carry a point (tuple or outcome indices) that certifies the failure.
bool is_witness_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<std::size_t> witness = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace cooc
