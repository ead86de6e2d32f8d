#pragma once

#include <stdexcept>
#include <string>

namespace uw {

enum class ErrorKind {
  InvalidArgument,
  DivergentTail,
  NotAWeightSequence,
  TruncationExhausted,
  UnboundedConjugate,
  QuasianalyticInput,
  MaximizerUnbounded,
  MissingEnvelope,
};

const char* to_string(ErrorKind kind);

// Precondition failures of the numerical layer. The CLI maps these to exit
// code 2 with a JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace uw
