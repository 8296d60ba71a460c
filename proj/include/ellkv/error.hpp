#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellkv {

enum class ErrorKind {
  DimensionMismatch,
  LengthMismatch,
  ConstantTermPresent,
  MixedDepth,
  NonHomogeneous,
  NotInCSpan,
  WeightMismatch,
  NotPushInvariant,
  NoSolution,
  WeightTooSmall,
  PreconditionViolated,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every domain precondition failure in the library is reported through this
// one exception type; kind() names the violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ellkv
