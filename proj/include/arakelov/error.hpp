#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arakelov {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class Errc {
  NotSquarefree,
  DegenerateM,
  NotPrime,
  ZeroElement,
  NotInGamma,
  TraceNotZero,
  NotConjugationInvariant,
  NoSolution,
  SearchExhausted,
  BoundExceeded,
  Infeasible,
  Unbounded,
  DegreeNotZero,
  UndecidedAtDepth,
  NotSolvable,
  DegenerateForSin,
  NotNSD,
  FiberRelationViolated,
  QuadratureFailure,
  GridMismatch,
  InvalidArgument,
  Parse,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace arakelov
