#pragma once

// Geometry of numbers on K: the constant C_K, lattice points of ideals in
// archimedean boxes, small sections, the finite set Theta, principality and
// the class number.

#include <optional>
#include <utility>
#include <vector>

#include "arakelov/arithdiv.hpp"

namespace arakelov {

struct MinkowskiConstant {
  double value = 0.0;
  int r2 = 0;
  long abs_disc = 0;
};

MinkowskiConstant c_k(const QuadraticField& F);

/// Exact test of log N <= C_K for a positive integer N (no rounding at the boundary).
bool norm_within_minkowski(const QuadraticField& F, const Integer& N);

struct SearchOptions {
  long max_points = 2'000'000;  // SearchExhausted beyond this many lattice points
  double rel_tol = 1e-9;        // boundary slack on |x|_sigma <= R_sigma
};

/// Nonzero x in I with |x|_sigma <= R_sigma (a disk for imaginary fields,
/// where R_0 must equal R_1), sorted by coordinates. The ideal basis is
/// Lagrange-reduced first so that skewed ideals of large norm stay cheap.
std::vector<FieldElement> lattice_points(const QuadraticField& F, const FractionalIdeal& I, const Archimedean& R,
                                         const SearchOptions& opts = {});

/// prod P^{d_P}; the coefficients must be exact integers.
FractionalIdeal ideal_of(const QuadraticField& F, const FiniteDivisor& D);
bool is_integral_divisor(const FiniteDivisor& D);

/// x with Dbar + (x)^ effective. Requires integer coefficients and
/// deg_arith(Dbar) >= C_K - tol. Throws SearchExhausted or InvalidArgument.
FieldElement short_section(const QuadraticField& F, const ArithmeticDivisor& Dbar, const SearchOptions& opts = {});

/// All effective integral divisors E with deg(E) <= C_K, ordered by norm then
/// lexicographically by prime.
std::vector<FiniteDivisor> enumerate_theta(const QuadraticField& F);

/// (x, E) with E = D + (x) in Theta.
std::pair<FieldElement, FiniteDivisor> reduce_to_theta(const QuadraticField& F, const FiniteDivisor& D,
                                                       const SearchOptions& opts = {});

/// A generator of I when I is principal.
std::optional<FieldElement> principal_generator(const QuadraticField& F, const FractionalIdeal& I);

struct ClassGroup {
  long h = 1;
  std::vector<FiniteDivisor> representatives;
};

/// Class number by grouping Theta into ideal classes. Throws BoundExceeded
/// when |disc| exceeds disc_bound.
ClassGroup class_group(const QuadraticField& F, long disc_bound = 500);

}  // namespace arakelov
