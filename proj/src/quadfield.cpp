#include "arakelov/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arakelov/error.hpp"

namespace arakelov {

namespace {

using Column = std::array<Integer, 2>;

// Column HNF of the Z-lattice spanned by cols in Z^2 (coordinates on 1, omega).
// Returns (a, b, c) with the lattice equal to Z(a, 0) + Z(b, c).
std::array<Integer, 3> hnf_2x(const std::vector<Column>& cols) {
  Integer a = 0;
  Column piv{0, 0};
  for (const auto& v : cols) {
    if (v[1] == 0) {
      a = gcd(a, v[0]);
      continue;
    }
    if (piv[1] == 0) {
      // Previous pivot (if any) had zero omega-part; fold it into a.
      a = gcd(a, piv[0]);
      piv = v;
      continue;
    }
    Integer g, u, w;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), piv[1].get_mpz_t(), v[1].get_mpz_t());
    Column next{u * piv[0] + w * v[0], g};
    Integer s = v[1] / g;
    Integer t = piv[1] / g;
    Integer other = s * piv[0] - t * v[0];
    a = gcd(a, other);
    piv = next;
  }
  if (piv[1] == 0 || a == 0) throw Error(Errc::ZeroElement, "ideal generators do not span a full-rank lattice");
  if (piv[1] < 0) {
    piv[0] = -piv[0];
    piv[1] = -piv[1];
  }
  a = abs(a);
  Integer b = piv[0] % a;
  if (b < 0) b += a;
  return {a, b, piv[1]};
}

FractionalIdeal normalize(Integer a, Integer b, Integer c, Integer den) {
  Integer g = gcd(gcd(a, b), gcd(c, den));
  FractionalIdeal I{a / g, b / g, c / g, den / g};
  return I;
}

Integer common_denominator(const FieldElement& x) {
  return lcm(Integer(x.a.get_den()), Integer(x.b.get_den()));
}

// x = (A + B*omega)/n with integers A, B and n > 0.
struct IntegralForm {
  Integer A, B, n;
};

IntegralForm integral_form(const FieldElement& x) {
  Integer n = common_denominator(x);
  Rational A = x.a * n;
  Rational B = x.b * n;
  return {Integer(A.get_num()), Integer(B.get_num()), n};
}

Integer integral_norm(const QuadraticField& F, const Integer& A, const Integer& B) {
  return A * A + A * B * F.trace_omega() - B * B * F.omega_sq_const();
}

}  // namespace

std::string to_string(const FieldElement& x) {
  return to_string(x.a) + " + " + to_string(x.b) + "*w";
}

std::string to_string(const FractionalIdeal& I) {
  std::string s = "[" + I.a.get_str() + ", " + I.b.get_str() + " + " + I.c.get_str() + "*w]";
  if (I.den != 1) s += "/" + I.den.get_str();
  return s;
}

std::string to_string(PrimeKind kind) {
  switch (kind) {
    case PrimeKind::Split: return "split";
    case PrimeKind::Inert: return "inert";
    case PrimeKind::Ramified: return "ramified";
  }
  return "?";
}

std::string to_string(const PrimeIdeal& P) {
  return "P(" + std::to_string(P.p) + "," + std::to_string(P.index) + ")";
}

double PrimeIdeal::log_norm() const { return std::log(static_cast<double>(residue_norm)); }

QuadraticField QuadraticField::make(long m) {
  if (m == 0 || m == 1) throw Error(Errc::DegenerateM, "m must not be 0 or 1");
  if (!is_squarefree(m)) throw Error(Errc::NotSquarefree, std::to_string(m) + " is not squarefree");
  long mod4 = ((m % 4) + 4) % 4;
  bool half = mod4 == 1;
  long disc = half ? m : 4 * m;
  int r1 = m > 0 ? 2 : 0;
  int r2 = m > 0 ? 0 : 1;
  return QuadraticField(m, disc, r1, r2, half);
}

std::string QuadraticField::omega_descriptor() const {
  return half_ ? "(1+sqrt(" + std::to_string(m_) + "))/2" : "sqrt(" + std::to_string(m_) + ")";
}

FieldElement QuadraticField::mul(const FieldElement& x, const FieldElement& y) const {
  Rational bb = x.b * y.b;
  return {x.a * y.a + bb * omega_sq_const(), x.a * y.b + x.b * y.a + bb * trace_omega()};
}

FieldElement QuadraticField::conj(const FieldElement& x) const {
  return {x.a + x.b * trace_omega(), -x.b};
}

Rational QuadraticField::norm(const FieldElement& x) const {
  return x.a * x.a + x.a * x.b * trace_omega() - x.b * x.b * omega_sq_const();
}

Rational QuadraticField::trace(const FieldElement& x) const { return 2 * x.a + x.b * trace_omega(); }

FieldElement QuadraticField::inverse(const FieldElement& x) const {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "inverse of zero");
  Rational n = norm(x);
  FieldElement c = conj(x);
  return {c.a / n, c.b / n};
}

FieldElement QuadraticField::pow(const FieldElement& x, long k) const {
  if (k < 0) return pow(inverse(x), -k);
  FieldElement result = FieldElement::from_int(1);
  FieldElement base = x;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

bool QuadraticField::is_integral(const FieldElement& x) const {
  return x.a.get_den() == 1 && x.b.get_den() == 1;
}

std::array<std::pair<long double, long double>, 2> QuadraticField::omega_embeddings() const {
  long double s = std::sqrt(static_cast<long double>(m_ > 0 ? m_ : -m_));
  if (is_real()) {
    if (half_) return {{{(1 + s) / 2, 0.0L}, {(1 - s) / 2, 0.0L}}};
    return {{{s, 0.0L}, {-s, 0.0L}}};
  }
  if (half_) return {{{0.5L, s / 2}, {0.5L, -s / 2}}};
  return {{{0.0L, s}, {0.0L, -s}}};
}

FractionalIdeal ideal_from_generators(const QuadraticField& F, const std::vector<FieldElement>& gens) {
  std::vector<FieldElement> zgens;
  Integer den = 1;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    zgens.push_back(g);
    zgens.push_back(F.mul(g, F.omega()));
  }
  if (zgens.empty()) throw Error(Errc::ZeroElement, "ideal generated by zero");
  for (const auto& g : zgens) den = lcm(den, common_denominator(g));
  std::vector<Column> cols;
  cols.reserve(zgens.size());
  for (const auto& g : zgens) {
    Rational A = g.a * den;
    Rational B = g.b * den;
    cols.push_back({Integer(A.get_num()), Integer(B.get_num())});
  }
  auto [a, b, c] = hnf_2x(cols);
  return normalize(a, b, c, den);
}

FractionalIdeal principal_ideal(const QuadraticField& F, const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "principal ideal of zero");
  return ideal_from_generators(F, {x});
}

FractionalIdeal unit_ideal() { return FractionalIdeal{1, 0, 1, 1}; }

std::array<FieldElement, 2> ideal_basis(const FractionalIdeal& I) {
  Rational d(I.den);
  return {FieldElement{Rational(I.a) / d, Rational(0)}, FieldElement{Rational(I.b) / d, Rational(I.c) / d}};
}

FractionalIdeal ideal_mul(const QuadraticField& F, const FractionalIdeal& I, const FractionalIdeal& J) {
  FieldElement i1{Rational(I.a), 0}, i2{Rational(I.b), Rational(I.c)};
  FieldElement j1{Rational(J.a), 0}, j2{Rational(J.b), Rational(J.c)};
  std::vector<Column> cols;
  for (const auto& x : {F.mul(i1, j1), F.mul(i1, j2), F.mul(i2, j1), F.mul(i2, j2)}) {
    cols.push_back({Integer(x.a.get_num()), Integer(x.b.get_num())});
  }
  auto [a, b, c] = hnf_2x(cols);
  return normalize(a, b, c, I.den * J.den);
}

FractionalIdeal ideal_conj(const QuadraticField& F, const FractionalIdeal& I) {
  auto basis = ideal_basis(I);
  FieldElement c2 = F.conj(basis[1]);
  std::vector<Column> cols;
  Rational d(I.den);
  cols.push_back({I.a, 0});
  Rational A = c2.a * d, B = c2.b * d;
  cols.push_back({Integer(A.get_num()), Integer(B.get_num())});
  auto [a, b, c] = hnf_2x(cols);
  return normalize(a, b, c, I.den);
}

Rational ideal_norm(const FractionalIdeal& I) {
  Rational n(I.a * I.c, I.den * I.den);
  n.canonicalize();
  return n;
}

FractionalIdeal ideal_inverse(const QuadraticField& F, const FractionalIdeal& I) {
  // For integral J: J * conj(J) = (N(J)); so (J/den)^{-1} = den * conj(J) / N(J).
  FractionalIdeal J{I.a, I.b, I.c, 1};
  FractionalIdeal Jc = ideal_conj(F, J);
  Integer nj = I.a * I.c;
  return normalize(Jc.a * I.den, Jc.b * I.den, Jc.c * I.den, Jc.den * nj);
}

FractionalIdeal ideal_pow(const QuadraticField& F, const FractionalIdeal& I, long k) {
  if (k < 0) return ideal_pow(F, ideal_inverse(F, I), -k);
  FractionalIdeal result = unit_ideal();
  FractionalIdeal base = I;
  while (k > 0) {
    if (k & 1) result = ideal_mul(F, result, base);
    k >>= 1;
    if (k > 0) base = ideal_mul(F, base, base);
  }
  return result;
}

bool ideal_contains(const FractionalIdeal& I, const FieldElement& x) {
  Rational ya = x.a * I.den;
  Rational yb = x.b * I.den;
  if (ya.get_den() != 1 || yb.get_den() != 1) return false;
  Integer A(ya.get_num()), B(yb.get_num());
  if (!mpz_divisible_p(B.get_mpz_t(), I.c.get_mpz_t())) return false;
  Integer t = B / I.c;
  Integer rest = A - t * I.b;
  return mpz_divisible_p(rest.get_mpz_t(), I.a.get_mpz_t()) != 0;
}

std::vector<std::pair<PrimeIdeal, int>> factor_rational_prime(const QuadraticField& F, long p) {
  if (!is_prime(Integer(p))) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  const long T = F.trace_omega();
  const long c = F.omega_sq_const();
  auto make = [&](long r, PrimeKind kind, int index) {
    PrimeIdeal P;
    P.p = p;
    P.kind = kind;
    P.index = index;
    if (kind == PrimeKind::Inert) {
      P.ideal = ideal_from_generators(F, {FieldElement::from_int(p)});
      P.residue_norm = p * p;
    } else {
      P.ideal = ideal_from_generators(F, {FieldElement::from_int(p), FieldElement{Rational(-r), Rational(1)}});
      P.residue_norm = p;
    }
    return P;
  };
  // Roots of X^2 - T X - c modulo p; O_K = Z[omega] so Dedekind-Kummer applies.
  std::vector<long> roots;
  if (p == 2) {
    for (long x = 0; x < 2; ++x) {
      long v = x * x - T * x - c;
      if (((v % 2) + 2) % 2 == 0) roots.push_back(x);
    }
    if (roots.size() == 1) return {{make(roots[0], PrimeKind::Ramified, 0), 2}};
  } else {
    Integer P(p);
    Integer d(F.disc());
    Integer dm = d % P;
    if (dm < 0) dm += P;
    Integer inv2 = (P + 1) / 2;
    if (dm == 0) {
      Integer r = (Integer(T) * inv2) % P;
      if (r < 0) r += P;
      return {{make(r.get_si(), PrimeKind::Ramified, 0), 2}};
    }
    if (kronecker(dm, P) == 1) {
      Integer s = sqrt_mod(dm, P);
      Integer r1 = ((Integer(T) + s) * inv2) % P;
      Integer r2 = ((Integer(T) - s) * inv2) % P;
      if (r1 < 0) r1 += P;
      if (r2 < 0) r2 += P;
      roots = {r1.get_si(), r2.get_si()};
    }
  }
  if (roots.empty()) return {{make(0, PrimeKind::Inert, 0), 1}};
  std::sort(roots.begin(), roots.end());
  return {{make(roots[0], PrimeKind::Split, 0), 1}, {make(roots[1], PrimeKind::Split, 1), 1}};
}

PrimeIdeal prime_ideal(const QuadraticField& F, long p, int index) {
  for (auto& [P, e] : factor_rational_prime(F, p)) {
    if (P.index == index) return P;
  }
  throw Error(Errc::InvalidArgument, "no prime of index " + std::to_string(index) + " over " + std::to_string(p));
}

std::vector<PrimeIdeal> primes_up_to_norm(const QuadraticField& F, long bound) {
  std::vector<PrimeIdeal> out;
  for (long p = 2; p <= bound; ++p) {
    if (!is_prime(Integer(p))) continue;
    for (auto& [P, e] : factor_rational_prime(F, p)) {
      if (P.residue_norm <= bound) out.push_back(P);
    }
  }
  return out;
}

namespace {

// Largest k with y in P^k, for integral y != 0.
int ord_integral(const QuadraticField& F, const PrimeIdeal& P, const FieldElement& y, const Integer& normy) {
  Integer pz(P.p);
  if (!mpz_divisible_p(normy.get_mpz_t(), pz.get_mpz_t())) return 0;
  int cap = valuation(normy, pz);
  FractionalIdeal Pk = P.ideal;
  int k = 0;
  while (k <= cap && ideal_contains(Pk, y)) {
    ++k;
    Pk = ideal_mul(F, Pk, P.ideal);
  }
  return k;
}

}  // namespace

int ord(const QuadraticField& F, const PrimeIdeal& P, const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "ord of zero");
  IntegralForm f = integral_form(x);
  FieldElement y{Rational(f.A), Rational(f.B)};
  Integer normy = abs(integral_norm(F, f.A, f.B));
  int num = ord_integral(F, P, y, normy);
  int den = P.ramification() * valuation(f.n, Integer(P.p));
  return num - den;
}

std::vector<std::pair<PrimeIdeal, int>> factor_element(const QuadraticField& F, const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "factor of zero");
  Rational n = F.norm(x);
  std::vector<Integer> ps;
  for (auto& [p, e] : factor_integer(Integer(n.get_num()))) ps.push_back(p);
  for (auto& [p, e] : factor_integer(Integer(n.get_den()))) ps.push_back(p);
  // Denominators of coordinates can hide primes whose contributions cancel in the norm.
  for (auto& [p, e] : factor_integer(common_denominator(x))) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<std::pair<PrimeIdeal, int>> out;
  for (const auto& p : ps) {
    for (auto& [P, e] : factor_rational_prime(F, p.get_si())) {
      int v = ord(F, P, x);
      if (v != 0) out.emplace_back(P, v);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const QuadraticField& F, const FractionalIdeal& I) {
  std::vector<Integer> ps;
  for (auto& [p, e] : factor_integer(I.a * I.c)) ps.push_back(p);
  for (auto& [p, e] : factor_integer(I.den)) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  FractionalIdeal J{I.a, I.b, I.c, 1};
  auto basis = ideal_basis(J);
  std::vector<std::pair<PrimeIdeal, int>> out;
  for (const auto& p : ps) {
    for (auto& [P, e] : factor_rational_prime(F, p.get_si())) {
      int k = 0;
      FractionalIdeal Pk = P.ideal;
      while (ideal_contains(Pk, basis[0]) && ideal_contains(Pk, basis[1])) {
        ++k;
        Pk = ideal_mul(F, Pk, P.ideal);
      }
      int v = k - P.ramification() * valuation(I.den, p);
      if (v != 0) out.emplace_back(P, v);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

Archimedean log_abs_embed(const QuadraticField& F, const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "absolute value of zero");
  double log_norm = log_abs(F.norm(x));
  if (!F.is_real()) return {0.5 * log_norm, 0.5 * log_norm};
  IntegralForm f = integral_form(x);
  long shift = static_cast<long>(std::max(mpz_sizeinbase(f.A.get_mpz_t(), 2), mpz_sizeinbase(f.B.get_mpz_t(), 2)));
  long double A = scaled_to_long_double(f.A, shift);
  long double B = scaled_to_long_double(f.B, shift);
  auto w = F.omega_embeddings();
  long double v0 = std::fabs(A + B * w[0].first);
  long double v1 = std::fabs(A + B * w[1].first);
  int big = v0 >= v1 ? 0 : 1;
  double log_big = static_cast<double>(std::log(big == 0 ? v0 : v1)) +
                   static_cast<double>(shift) * std::numbers::ln2 - log_abs(f.n);
  Archimedean out{};
  out[big] = log_big;
  out[1 - big] = log_norm - log_big;
  return out;
}

Archimedean abs_embed(const QuadraticField& F, const FieldElement& x) {
  Archimedean l = log_abs_embed(F, x);
  return {std::exp(l[0]), std::exp(l[1])};
}

}  // namespace arakelov
