#include "arakelov/error.hpp"

namespace arakelov {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::DegenerateM: return "DegenerateM";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::NotInGamma: return "NotInGamma";
    case Errc::TraceNotZero: return "TraceNotZero";
    case Errc::NotConjugationInvariant: return "NotConjugationInvariant";
    case Errc::NoSolution: return "NoSolution";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::Infeasible: return "Infeasible";
    case Errc::Unbounded: return "Unbounded";
    case Errc::DegreeNotZero: return "DegreeNotZero";
    case Errc::UndecidedAtDepth: return "UndecidedAtDepth";
    case Errc::NotSolvable: return "NotSolvable";
    case Errc::DegenerateForSin: return "DegenerateForSin";
    case Errc::NotNSD: return "NotNSD";
    case Errc::FiberRelationViolated: return "FiberRelationViolated";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace arakelov
