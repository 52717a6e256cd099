#pragma once

// Exact arithmetic in quadratic fields K = Q(sqrt m): elements on the integral
// basis (1, omega), fractional ideals in Hermite normal form, splitting of
// rational primes, valuations and archimedean absolute values.

#include <array>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "arakelov/numtheory.hpp"

namespace arakelov {

/// Values indexed by the two embeddings K -> C. For imaginary fields index 1 is
/// the complex conjugate of index 0; for real fields both are real.
using Archimedean = std::array<double, 2>;

/// a + b*omega with exact rational coordinates.
struct FieldElement {
  Rational a;
  Rational b;

  FieldElement() = default;
  FieldElement(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
  static FieldElement from_int(long n) { return {Rational(n), Rational(0)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return {x.a - y.a, x.b - y.b};
  }
  FieldElement operator-() const { return {-a, -b}; }
};

std::string to_string(const FieldElement& x);

/// Fractional ideal (1/den) * (Z*a + Z*(b + c*omega)), i.e. the column HNF
/// [[a, b], [0, c]] over the integral basis. Stored reduced: a, c, den > 0,
/// 0 <= b < a, and gcd(a, b, c, den) = 1.
struct FractionalIdeal {
  Integer a;
  Integer b;
  Integer c;
  Integer den{1};

  friend bool operator==(const FractionalIdeal&, const FractionalIdeal&) = default;
  bool is_integral() const { return den == 1; }
};

std::string to_string(const FractionalIdeal& I);

enum class PrimeKind { Split, Inert, Ramified };
std::string to_string(PrimeKind kind);

/// A maximal ideal of O_K. Split primes carry index 0 or 1, ordered by the
/// residue r of omega modulo P (index 0 has the smaller r).
struct PrimeIdeal {
  long p = 0;
  PrimeKind kind = PrimeKind::Inert;
  int index = 0;
  FractionalIdeal ideal;
  long residue_norm = 0;

  int ramification() const { return kind == PrimeKind::Ramified ? 2 : 1; }
  double log_norm() const;

  friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y) {
    return x.p == y.p && x.index == y.index;
  }
  friend std::strong_ordering operator<=>(const PrimeIdeal& x, const PrimeIdeal& y) {
    if (auto c = x.p <=> y.p; c != 0) return c;
    return x.index <=> y.index;
  }
};

std::string to_string(const PrimeIdeal& P);

class QuadraticField {
 public:
  /// Throws NotSquarefree or DegenerateM.
  static QuadraticField make(long m);

  long m() const { return m_; }
  long disc() const { return disc_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  int degree() const { return 2; }
  bool is_real() const { return m_ > 0; }
  /// omega = (1 + sqrt m)/2 when m = 1 mod 4, else sqrt m.
  bool omega_is_half() const { return half_; }
  std::string omega_descriptor() const;

  /// omega^2 = trace_omega * omega + omega_sq_const.
  long trace_omega() const { return half_ ? 1 : 0; }
  long omega_sq_const() const { return half_ ? (m_ - 1) / 4 : m_; }

  /// Embedding index of the complex conjugate embedding.
  int conjugate(int sigma) const { return is_real() ? sigma : 1 - sigma; }

  friend bool operator==(const QuadraticField& x, const QuadraticField& y) { return x.m_ == y.m_; }

  // Element arithmetic.
  FieldElement omega() const { return {Rational(0), Rational(1)}; }
  FieldElement mul(const FieldElement& x, const FieldElement& y) const;
  FieldElement conj(const FieldElement& x) const;
  Rational norm(const FieldElement& x) const;
  Rational trace(const FieldElement& x) const;
  FieldElement inverse(const FieldElement& x) const;
  FieldElement pow(const FieldElement& x, long k) const;
  bool is_integral(const FieldElement& x) const;

  /// Exact numeric value of omega under each embedding (real part, imaginary part).
  std::array<std::pair<long double, long double>, 2> omega_embeddings() const;

 private:
  QuadraticField(long m, long disc, int r1, int r2, bool half)
      : m_(m), disc_(disc), r1_(r1), r2_(r2), half_(half) {}

  long m_;
  long disc_;
  int r1_;
  int r2_;
  bool half_;
};

inline QuadraticField make_field(long m) { return QuadraticField::make(m); }

// Ideals.
FractionalIdeal ideal_from_generators(const QuadraticField& F, const std::vector<FieldElement>& gens);
FractionalIdeal principal_ideal(const QuadraticField& F, const FieldElement& x);
FractionalIdeal unit_ideal();
FractionalIdeal ideal_mul(const QuadraticField& F, const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal ideal_conj(const QuadraticField& F, const FractionalIdeal& I);
FractionalIdeal ideal_inverse(const QuadraticField& F, const FractionalIdeal& I);
FractionalIdeal ideal_pow(const QuadraticField& F, const FractionalIdeal& I, long k);
Rational ideal_norm(const FractionalIdeal& I);
bool ideal_contains(const FractionalIdeal& I, const FieldElement& x);
/// Z-basis of I as field elements: a/den and (b + c*omega)/den.
std::array<FieldElement, 2> ideal_basis(const FractionalIdeal& I);

// Primes.
std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(const QuadraticField& F, long p);
PrimeIdeal prime_ideal(const QuadraticField& F, long p, int index);
/// All prime ideals of residue norm at most bound, sorted.
std::vector<PrimeIdeal> primes_up_to_norm(const QuadraticField& F, long bound);

/// ord_P(x) by exact membership tests x in P^k. Throws ZeroElement.
int ord(const QuadraticField& F, const PrimeIdeal& P, const FieldElement& x);

/// Nonzero valuations of x, sorted by prime.
std::vector<std::pair<PrimeIdeal, int>> factor_element(const QuadraticField& F, const FieldElement& x);

/// Factorization of a fractional ideal into prime powers.
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const QuadraticField& F, const FractionalIdeal& I);

/// |x|_sigma per embedding; throws ZeroElement.
Archimedean abs_embed(const QuadraticField& F, const FieldElement& x);
/// log|x|_sigma per embedding, accurate for large coordinates and for units
/// whose small conjugate suffers cancellation.
Archimedean log_abs_embed(const QuadraticField& F, const FieldElement& x);

}  // namespace arakelov
