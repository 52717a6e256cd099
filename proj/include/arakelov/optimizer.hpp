#pragma once

// The minimax layer: the feasible set Phi of exponent vectors, its explicit
// compactness box, minimization of the sup norm over Phi as a linear program,
// and the degree-zero smallest-section pipeline.

#include <optional>
#include <string>
#include <vector>

#include "arakelov/arithdiv.hpp"
#include "arakelov/minkowski.hpp"

namespace arakelov {

struct MinimaxProblem {
  ArithmeticDivisor Dbar;
  std::vector<RRationalFunction> gens;
  std::vector<PrimeIdeal> primes;      // supp(D) and the supports of the generators
  std::vector<std::vector<double>> V;  // V[i][j] = ord_{P_j}(phi_i)
  std::vector<Archimedean> L;          // L[i][sigma] = log|phi_i|_sigma
};

MinimaxProblem make_problem(const QuadraticField& F, const ArithmeticDivisor& Dbar,
                            const std::vector<RRationalFunction>& gens);

struct MinimaxSolution {
  std::vector<double> a_star;
  double log_value = 0.0;               // log of the optimal sup norm
  std::vector<std::string> active_set;  // "sigma0", "sigma1", or "P(p,i)"
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  bool certified = false;
  RRationalFunction psi;  // prod phi_i^{a_i}
};

/// Throws Infeasible (Phi empty) or Unbounded.
MinimaxSolution minimize_sup(const MinimaxProblem& problem, double tol = Tolerances{}.lp_duality);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Box containing every a with Dbar + sum_P a_P (P, -log N(P)) effective.
std::vector<Interval> compactness_bounds(const ArithmeticDivisor& Dbar, const std::vector<PrimeIdeal>& basis);

/// Effectivity of Dbar + sum_P a_P (P, -log N(P)).
bool perturbation_feasible(const ArithmeticDivisor& Dbar, const std::vector<PrimeIdeal>& basis,
                           const std::vector<double>& a, double tol = Tolerances{}.effectivity);

struct PipelineOptions {
  int depth = 8;
  int threads = 1;  // > 1 runs the section searches concurrently
  double tol = Tolerances{}.lp_duality;
  SearchOptions search;
};

struct PipelineResult {
  RRationalFunction psi;
  MinimaxSolution solution;
  std::vector<PrimeIdeal> sigma;
  std::vector<FieldElement> sections;  // x_n for n = 1..depth
  long scale = 1;                      // common denominator M of the coefficients
};

/// Requires rational coefficients and deg_arith = 0. Throws DegreeNotZero,
/// UndecidedAtDepth, and propagates SearchExhausted.
PipelineResult smallest_section_pipeline(const QuadraticField& F, const ArithmeticDivisor& Dbar,
                                         const PipelineOptions& opts = {});

struct Decision {
  bool pseudo_effective = false;
  double degree = 0.0;
  std::optional<PipelineResult> witness;
};

Decision decide_pseudoeffective(const QuadraticField& F, const ArithmeticDivisor& Dbar,
                                const PipelineOptions& opts = {});

}  // namespace arakelov
