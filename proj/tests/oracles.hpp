#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. None of these call into the library's search code.

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "arakelov/quadfield.hpp"

namespace oracle {

/// Class number of the imaginary quadratic discriminant d < 0 by counting
/// reduced primitive forms (a, b, c): b^2 - 4ac = d, |b| <= a <= c, and b >= 0
/// whenever |b| = a or a = c.
inline long class_number_reduced_forms(long d) {
  long count = 0;
  for (long a = 1; 3 * a * a <= -d; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

/// All nonzero points of I with |x|_sigma <= R_sigma by scanning every (s, t)
/// in the coefficient box given by Cramer's rule on the real embedding matrix.
inline std::set<std::pair<arakelov::Rational, arakelov::Rational>> naive_scan(const arakelov::QuadraticField& F,
                                                                            const arakelov::FractionalIdeal& I,
                                                                            const arakelov::Archimedean& R,
                                                                            double rel_tol) {
  using namespace arakelov;
  auto basis = ideal_basis(I);
  auto w = F.omega_embeddings();
  // Real 2x2 coordinates of the basis vectors.
  double v[2][2];
  for (int j = 0; j < 2; ++j) {
    double a = basis[j].a.get_d(), b = basis[j].b.get_d();
    if (F.is_real()) {
      v[j][0] = a + b * static_cast<double>(w[0].first);
      v[j][1] = a + b * static_cast<double>(w[1].first);
    } else {
      v[j][0] = a + b * static_cast<double>(w[0].first);
      v[j][1] = b * static_cast<double>(w[0].second);
    }
  }
  double det = std::fabs(v[0][0] * v[1][1] - v[0][1] * v[1][0]);
  double ynorm = F.is_real() ? std::hypot(R[0], R[1]) : R[0];
  ynorm *= 1 + rel_tol;
  long smax = static_cast<long>(std::ceil(ynorm * std::hypot(v[1][0], v[1][1]) / det)) + 1;
  long tmax = static_cast<long>(std::ceil(ynorm * std::hypot(v[0][0], v[0][1]) / det)) + 1;
  std::set<std::pair<Rational, Rational>> out;
  for (long s = -smax; s <= smax; ++s) {
    for (long t = -tmax; t <= tmax; ++t) {
      if (s == 0 && t == 0) continue;
      FieldElement x{basis[0].a * s + basis[1].a * t, basis[1].b * t};
      auto l = log_abs_embed(F, x);
      if (l[0] <= std::log(R[0]) + rel_tol && l[1] <= std::log(R[1]) + rel_tol) out.emplace(x.a, x.b);
    }
  }
  return out;
}

/// Fundamental discriminants d with lo <= d < 0.
inline std::vector<long> imaginary_fundamental_discs(long lo) {
  std::vector<long> out;
  for (long m = -1; 4 * m >= lo || m >= lo; --m) {
    if (!arakelov::is_squarefree(m)) continue;
    long d = (((m % 4) + 4) % 4 == 1) ? m : 4 * m;
    if (d >= lo) out.push_back(d);
    if (m < lo) break;
  }
  return out;
}

}  // namespace oracle
