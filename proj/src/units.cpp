#include "arakelov/units.hpp"

#include <cmath>

#include "arakelov/error.hpp"

namespace arakelov {

namespace {

bool is_unit(const QuadraticField& F, const Integer& a, const Integer& b) {
  Rational n = F.norm(FieldElement{Rational(a), Rational(b)});
  return n == 1 || n == -1;
}

// Fundamental unit of a real quadratic field. A unit a + b*omega > 1 has b > 0
// and a/b within 1/(b*eps) of theta = -omega', so for all but tiny b it is a
// convergent of theta. Small b are scanned directly to cover the gap.
FieldElement fundamental_unit(const QuadraticField& F) {
  const long m = F.m();
  const bool half = F.omega_is_half();
  const long double theta = half ? (std::sqrt(static_cast<long double>(m)) - 1) / 2 : std::sqrt(static_cast<long double>(m));
  constexpr long kDirect = 64;
  for (long b = 1; b < kDirect; ++b) {
    long a0 = static_cast<long>(std::floor(theta * b));
    for (long a = a0; a <= a0 + 1; ++a) {
      if (is_unit(F, Integer(a), Integer(b))) return {Rational(a), Rational(b)};
    }
  }
  // Continued fraction of theta = (P + sqrt m)/Q with exact integers.
  Integer M(m);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), M.get_mpz_t());
  Integer P = half ? -1 : 0;
  Integer Q = half ? 2 : 1;
  Integer p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
  for (long iter = 0; iter < 1000000; ++iter) {
    if (Q <= 0) throw Error(Errc::InvalidArgument, "continued fraction lost reduction");
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), Integer(P + s).get_mpz_t(), Q.get_mpz_t());
    Integer p_next = a * p_cur + p_prev;
    Integer q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    if (q_cur >= kDirect && is_unit(F, p_cur, q_cur)) return {Rational(p_cur), Rational(q_cur)};
    P = a * Q - P;
    Q = (M - P * P) / Q;
  }
  throw Error(Errc::SearchExhausted, "fundamental unit search did not terminate");
}

}  // namespace

UnitGroup unit_group(const QuadraticField& F) {
  UnitGroup G;
  for (long a = -2; a <= 2; ++a) {
    for (long b = -2; b <= 2; ++b) {
      FieldElement x{Rational(a), Rational(b)};
      if (F.norm(x) != 1) continue;
      // Roots of unity are the norm-one elements of finite order, at most 6 here.
      FieldElement y = x;
      for (int k = 1; k <= 6; ++k) {
        if (y == FieldElement::from_int(1)) {
          G.torsion.push_back(x);
          break;
        }
        y = F.mul(y, x);
      }
    }
  }
  G.torsion_order = static_cast<int>(G.torsion.size());
  if (F.is_real()) {
    G.fundamental = fundamental_unit(F);
    G.log_fundamental = log_abs_embed(F, *G.fundamental)[0];
  }
  return G;
}

std::vector<std::pair<FieldElement, double>> dirichlet_realize(const QuadraticField& F, const Archimedean& xi,
                                                               double tol) {
  if (std::fabs(xi[0] + xi[1]) > tol) throw Error(Errc::TraceNotZero, "sum of green values is not zero");
  if (!F.is_real() && std::fabs(xi[0] - xi[1]) > tol) {
    throw Error(Errc::NotConjugationInvariant, "green values at conjugate embeddings differ");
  }
  if (std::fabs(xi[0]) <= tol && std::fabs(xi[1]) <= tol) return {};
  if (!F.is_real()) throw Error(Errc::NoSolution, "unit rank is zero");
  UnitGroup G = unit_group(F);
  Archimedean L = log_abs_embed(F, *G.fundamental);
  double a = (xi[0] * L[0] + xi[1] * L[1]) / (L[0] * L[0] + L[1] * L[1]);
  double residual = std::max(std::fabs(xi[0] - a * L[0]), std::fabs(xi[1] - a * L[1]));
  if (residual > std::max(tol, 1e-10 * std::max(1.0, std::fabs(xi[0])))) {
    throw Error(Errc::NoSolution, "green vector is not in the log-unit lattice span");
  }
  return {{*G.fundamental, a}};
}

std::vector<FieldElement> units_in_log_box(const QuadraticField& F, double bound) {
  // |x|_sigma <= R for both sigma bounds the coordinates through the inverse
  // embedding matrix: b = (x_0 - x_1)/(omega_0 - omega_1), a = x_0 - b*omega_0.
  const double R = std::exp(bound);
  auto w = F.omega_embeddings();
  double gap = std::hypot(static_cast<double>(w[0].first - w[1].first), static_cast<double>(w[0].second - w[1].second));
  double w0 = std::hypot(static_cast<double>(w[0].first), static_cast<double>(w[0].second));
  long bmax = static_cast<long>(std::ceil(2 * R / gap)) + 1;
  long amax = static_cast<long>(std::ceil(R + bmax * w0)) + 1;
  std::vector<FieldElement> out;
  for (long b = -bmax; b <= bmax; ++b) {
    for (long a = -amax; a <= amax; ++a) {
      if (!is_unit(F, Integer(a), Integer(b))) continue;
      FieldElement x{Rational(a), Rational(b)};
      auto l = log_abs_embed(F, x);
      if (std::max(l[0], l[1]) <= bound + 1e-12) out.push_back(x);
    }
  }
  return out;
}

}  // namespace arakelov
