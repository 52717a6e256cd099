#include "arakelov/arithdiv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "arakelov/error.hpp"

namespace arakelov {

Real Real::parse(const std::string& text) {
  if (text.find_first_of("eE") != std::string::npos) {
    try {
      return approx(std::stod(text));
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "bad real '" + text + "'");
    }
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Real(parse_rational(text));
  // Decimal literals are exact rationals.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac = text.size() - dot - 1;
  if (frac == 0 || digits.empty() || digits == "-" || digits == "+") throw Error(Errc::Parse, "bad real '" + text + "'");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac);
  Rational q = parse_rational(digits) / Rational(scale);
  q.canonicalize();
  return Real(q);
}

int Real::sign(double tol) const {
  if (q_) return sgn(*q_);
  if (v_ > tol) return 1;
  if (v_ < -tol) return -1;
  return 0;
}

Real operator+(const Real& x, const Real& y) {
  if (x.q_ && y.q_) return Real(Rational(*x.q_ + *y.q_));
  return Real::approx(x.v_ + y.v_);
}

Real operator-(const Real& x, const Real& y) {
  if (x.q_ && y.q_) return Real(Rational(*x.q_ - *y.q_));
  return Real::approx(x.v_ - y.v_);
}

Real operator*(const Real& x, const Real& y) {
  if (x.q_ && y.q_) return Real(Rational(*x.q_ * *y.q_));
  // An exact zero annihilates even a floating factor.
  if ((x.q_ && *x.q_ == 0) || (y.q_ && *y.q_ == 0)) return Real(0L);
  return Real::approx(x.v_ * y.v_);
}

Real Real::operator-() const {
  if (q_) return Real(Rational(-*q_));
  return approx(-v_);
}

std::string to_string(const Real& x) {
  if (x.is_exact()) return to_string(x.exact());
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x.value());
  return buf;
}

bool RRationalFunction::all_exact() const {
  return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.exponent.is_exact(); });
}

RRationalFunction canonicalize(RRationalFunction phi) {
  RRationalFunction out;
  for (auto& f : phi.factors) {
    if (f.exponent.is_exact() && f.exponent.is_zero()) continue;
    bool merged = false;
    if (f.exponent.is_exact()) {
      for (auto& g : out.factors) {
        if (g.base == f.base && g.exponent.is_exact()) {
          g.exponent += f.exponent;
          merged = true;
          break;
        }
      }
    }
    if (!merged) out.factors.push_back(std::move(f));
  }
  std::erase_if(out.factors, [](const auto& f) { return f.exponent.is_exact() && f.exponent.is_zero(); });
  return out;
}

RRationalFunction fn_mul(const RRationalFunction& f, const RRationalFunction& g) {
  RRationalFunction out = f;
  out.factors.insert(out.factors.end(), g.factors.begin(), g.factors.end());
  return canonicalize(std::move(out));
}

RRationalFunction fn_pow(const RRationalFunction& f, const Real& a) {
  RRationalFunction out = f;
  for (auto& x : out.factors) x.exponent = x.exponent * a;
  return canonicalize(std::move(out));
}

bool ArithmeticDivisor::all_exact() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second.is_exact(); });
}

void check_conjugation_invariant(const QuadraticField& F, const Archimedean& xi, double tol) {
  if (!F.is_real() && std::fabs(xi[0] - xi[1]) > tol) {
    throw Error(Errc::NotConjugationInvariant, "green values at conjugate embeddings differ");
  }
}

FiniteDivisor finite_add(const FiniteDivisor& x, const FiniteDivisor& y) {
  FiniteDivisor out = x;
  for (const auto& [P, c] : y) {
    auto it = out.find(P);
    if (it == out.end()) {
      out.emplace(P, c);
    } else {
      it->second += c;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_exact() && kv.second.is_zero(); });
  return out;
}

ArithmeticDivisor div_add(const ArithmeticDivisor& x, const ArithmeticDivisor& y) {
  return {finite_add(x.coeffs, y.coeffs), {x.green[0] + y.green[0], x.green[1] + y.green[1]}};
}

ArithmeticDivisor div_scale(const ArithmeticDivisor& x, const Real& a) {
  ArithmeticDivisor out;
  for (const auto& [P, c] : x.coeffs) {
    Real v = c * a;
    if (!(v.is_exact() && v.is_zero())) out.coeffs.emplace(P, v);
  }
  out.green = {x.green[0] * a.value(), x.green[1] * a.value()};
  return out;
}

double deg_finite(const FiniteDivisor& D) {
  double s = 0.0;
  for (const auto& [P, c] : D) s += c.value() * P.log_norm();
  return s;
}

double deg_arith(const ArithmeticDivisor& Dbar) {
  return deg_finite(Dbar.coeffs) + 0.5 * (Dbar.green[0] + Dbar.green[1]);
}

FiniteDivisor ord_divisor(const QuadraticField& F, const RRationalFunction& phi) {
  FiniteDivisor out;
  for (const auto& f : phi.factors) {
    if (f.base.is_zero()) throw Error(Errc::ZeroElement, "rational function has a zero base");
    FiniteDivisor local;
    for (auto& [P, v] : factor_element(F, f.base)) local.emplace(P, Real(static_cast<long>(v)) * f.exponent);
    out = finite_add(out, local);
  }
  return out;
}

Archimedean log_abs_fn(const QuadraticField& F, const RRationalFunction& phi) {
  Archimedean out{0.0, 0.0};
  for (const auto& f : phi.factors) {
    Archimedean l = log_abs_embed(F, f.base);
    out[0] += f.exponent.value() * l[0];
    out[1] += f.exponent.value() * l[1];
  }
  return out;
}

ArithmeticDivisor principal(const QuadraticField& F, const RRationalFunction& phi) {
  Archimedean l = log_abs_fn(F, phi);
  return {ord_divisor(F, phi), {-2.0 * l[0], -2.0 * l[1]}};
}

bool is_effective(const FiniteDivisor& D, double tol) {
  return std::all_of(D.begin(), D.end(), [tol](const auto& kv) { return kv.second.sign(tol) >= 0; });
}

bool is_effective(const ArithmeticDivisor& Dbar, double tol) {
  return is_effective(Dbar.coeffs, tol) && Dbar.green[0] >= -tol && Dbar.green[1] >= -tol;
}

bool gamma_member(const QuadraticField& F, const RRationalFunction& phi, const FiniteDivisor& D, double tol) {
  return is_effective(finite_add(D, ord_divisor(F, phi)), tol);
}

double log_sup_norm_unchecked(const QuadraticField& F, const RRationalFunction& phi, const Archimedean& green) {
  Archimedean l = log_abs_fn(F, phi);
  return std::max(l[0] - green[0] / 2, l[1] - green[1] / 2);
}

double sup_norm(const QuadraticField& F, const RRationalFunction& phi, const ArithmeticDivisor& Dbar, double tol) {
  if (!gamma_member(F, phi, Dbar.coeffs, tol)) throw Error(Errc::NotInGamma, "D + (phi) is not effective");
  return std::exp(log_sup_norm_unchecked(F, phi, Dbar.green));
}

Archimedean uniform_weights() { return {0.5, 0.5}; }

double lp_norm(const QuadraticField& F, const RRationalFunction& phi, const ArithmeticDivisor& Dbar, double p,
               const Archimedean& weights, double tol) {
  if (!(p > 0)) throw Error(Errc::InvalidArgument, "L^p exponent must be positive");
  if (!gamma_member(F, phi, Dbar.coeffs, tol)) throw Error(Errc::NotInGamma, "D + (phi) is not effective");
  Archimedean l = log_abs_fn(F, phi);
  std::array<double, 2> t{};
  for (int s = 0; s < 2; ++s) {
    if (weights[s] < 0) throw Error(Errc::InvalidArgument, "negative weight");
    t[s] = weights[s] > 0 ? std::log(weights[s]) + p * (l[s] - Dbar.green[s] / 2) : -HUGE_VAL;
  }
  double mx = std::max(t[0], t[1]);
  double lse = mx + std::log(std::exp(t[0] - mx) + std::exp(t[1] - mx));
  return std::exp(lse / p);
}

bool gammahat_member(const QuadraticField& F, const RRationalFunction& phi, const ArithmeticDivisor& Dbar,
                     double tol) {
  if (!gamma_member(F, phi, Dbar.coeffs, tol)) return false;
  return std::exp(log_sup_norm_unchecked(F, phi, Dbar.green)) <= 1 + tol;
}

}  // namespace arakelov
