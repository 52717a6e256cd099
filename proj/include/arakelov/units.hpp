#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arakelov/quadfield.hpp"

namespace arakelov {

struct UnitGroup {
  int torsion_order = 2;
  std::vector<FieldElement> torsion;       // all roots of unity
  std::optional<FieldElement> fundamental;  // real fields only, normalized so |eps|_0 > 1
  double log_fundamental = 0.0;             // log|eps|_0, the regulator
};

UnitGroup unit_group(const QuadraticField& F);

/// Exponents a_i with xi_sigma = sum_i a_i log|u_i|_sigma for the fundamental
/// units u_i. Throws TraceNotZero, NotConjugationInvariant, NoSolution.
std::vector<std::pair<FieldElement, double>> dirichlet_realize(const QuadraticField& F, const Archimedean& xi,
                                                               double tol = 1e-9);

/// Every unit u with max_sigma log|u|_sigma <= bound, by direct scan of the
/// integral lattice.
std::vector<FieldElement> units_in_log_box(const QuadraticField& F, double bound);

}  // namespace arakelov
