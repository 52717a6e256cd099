#pragma once

#include <vector>

#include "arakelov/minkowski.hpp"
#include "arakelov/units.hpp"

namespace arakelov {

struct SUnitGroup {
  std::vector<PrimeIdeal> sigma;
  UnitGroup units;
  /// Unit generators first (a root of unity of order w, then the fundamental
  /// unit if any), followed by one witness per basis vector of the image lattice.
  std::vector<FieldElement> generators;
  /// Rows: ord vectors over sigma of the non-unit generators, in HNF.
  std::vector<std::vector<long>> ord_matrix;
  std::size_t unit_count = 0;
};

/// Throws BoundExceeded when the candidate box h^|sigma| is too large.
SUnitGroup s_unit_group(const QuadraticField& F, std::vector<PrimeIdeal> sigma, long disc_bound = 10000);

/// Row Hermite normal form of an integer matrix, zero rows dropped.
std::vector<std::vector<long>> hnf_rows(std::vector<std::vector<long>> rows);

}  // namespace arakelov
