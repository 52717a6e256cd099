#pragma once

// Arithmetic R-divisors (D, xi) on Spec(O_K), R-rational functions, degrees,
// effectivity and sup / L^p norms.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arakelov/quadfield.hpp"
#include "arakelov/tolerance.hpp"

namespace arakelov {

/// A real number that remembers an exact rational value when it has one.
/// Arithmetic between two exact values stays exact; anything touching a
/// floating value degrades to floating.
class Real {
 public:
  Real() : q_(Rational(0)), v_(0.0) {}
  Real(long n) : q_(Rational(n)), v_(static_cast<double>(n)) {}  // NOLINT(google-explicit-constructor)
  Real(const Rational& q) : q_(q), v_(q.get_d()) {}                // NOLINT(google-explicit-constructor)
  static Real approx(double v) {
    Real r;
    r.q_.reset();
    r.v_ = v;
    return r;
  }
  /// Accepts "3/2", "-1", or a decimal such as "0.25" (read exactly). Scientific
  /// notation gives a floating value.
  static Real parse(const std::string& text);

  bool is_exact() const { return q_.has_value(); }
  const Rational& exact() const { return *q_; }
  double value() const { return v_; }

  /// -1, 0, +1; exact when possible, otherwise zero means |v| <= tol.
  int sign(double tol) const;
  bool is_zero() const { return q_ ? *q_ == 0 : v_ == 0.0; }

  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y);
  friend Real operator*(const Real& x, const Real& y);
  Real operator-() const;
  Real& operator+=(const Real& y) { return *this = *this + y; }
  /// Exact values compare exactly; floating values compare bitwise by value.
  friend bool operator==(const Real& x, const Real& y) {
    if (x.q_.has_value() != y.q_.has_value()) return false;
    return x.q_ ? *x.q_ == *y.q_ : x.v_ == y.v_;
  }

 private:
  std::optional<Rational> q_;
  double v_;
};

std::string to_string(const Real& x);

/// Formal product of x_i^{a_i} with x_i in K^x and real a_i.
struct RRationalFunction {
  struct Factor {
    FieldElement base;
    Real exponent;
  };
  std::vector<Factor> factors;

  static RRationalFunction one() { return {}; }
  static RRationalFunction of(const FieldElement& x, Real e = Real(1)) { return {{{x, e}}}; }
  bool all_exact() const;
};

/// Merge repeated bases whose exponents are exact; drops exact-zero exponents.
RRationalFunction canonicalize(RRationalFunction phi);
RRationalFunction fn_mul(const RRationalFunction& f, const RRationalFunction& g);
RRationalFunction fn_pow(const RRationalFunction& f, const Real& a);

using FiniteDivisor = std::map<PrimeIdeal, Real>;

struct ArithmeticDivisor {
  FiniteDivisor coeffs;
  Archimedean green{0.0, 0.0};

  bool all_exact() const;
};

/// Throws NotConjugationInvariant if xi is not F_infinity-invariant.
void check_conjugation_invariant(const QuadraticField& F, const Archimedean& xi, double tol = 1e-9);

ArithmeticDivisor div_add(const ArithmeticDivisor& x, const ArithmeticDivisor& y);
ArithmeticDivisor div_scale(const ArithmeticDivisor& x, const Real& a);
FiniteDivisor finite_add(const FiniteDivisor& x, const FiniteDivisor& y);

double deg_finite(const FiniteDivisor& D);
double deg_arith(const ArithmeticDivisor& Dbar);

/// (phi)_R: sum_i a_i ord_P(x_i). Throws ZeroElement.
FiniteDivisor ord_divisor(const QuadraticField& F, const RRationalFunction& phi);
/// sum_i a_i log|x_i|_sigma.
Archimedean log_abs_fn(const QuadraticField& F, const RRationalFunction& phi);
/// ((phi), -2 log|phi|_sigma).
ArithmeticDivisor principal(const QuadraticField& F, const RRationalFunction& phi);

bool is_effective(const FiniteDivisor& D, double tol = Tolerances{}.effectivity);
bool is_effective(const ArithmeticDivisor& Dbar, double tol = Tolerances{}.effectivity);

bool gamma_member(const QuadraticField& F, const RRationalFunction& phi, const FiniteDivisor& D,
                  double tol = Tolerances{}.effectivity);

/// log ||phi||_{g,sup} without the membership check.
double log_sup_norm_unchecked(const QuadraticField& F, const RRationalFunction& phi, const Archimedean& green);

/// ||phi||_{g,sup}; throws NotInGamma if D + (phi) is not effective.
double sup_norm(const QuadraticField& F, const RRationalFunction& phi, const ArithmeticDivisor& Dbar,
                double tol = Tolerances{}.effectivity);

/// Uniform probability weights on the embeddings.
Archimedean uniform_weights();

/// (sum_sigma w_sigma |phi|_sigma^p exp(-p xi_sigma/2))^{1/p}; throws NotInGamma.
double lp_norm(const QuadraticField& F, const RRationalFunction& phi, const ArithmeticDivisor& Dbar, double p,
               const Archimedean& weights = uniform_weights(), double tol = Tolerances{}.effectivity);

bool gammahat_member(const QuadraticField& F, const RRationalFunction& phi, const ArithmeticDivisor& Dbar,
                     double tol = Tolerances{}.effectivity);

}  // namespace arakelov
