#include "arakelov/numtheory.hpp"

#include <cmath>
#include <numbers>

#include "arakelov/error.hpp"

namespace arakelov {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error(Errc::Parse, "empty rational");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(Errc::Parse, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw Error(Errc::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double log_abs(const Integer& z) {
  if (z == 0) return -HUGE_VAL;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_abs(const Rational& q) {
  return log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den()));
}

long double scaled_to_long_double(const Integer& z, long shift) {
  if (z == 0) return 0.0L;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp - shift));
}

bool is_squarefree(long n) {
  if (n == 0) return false;
  unsigned long v = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  for (unsigned long d = 2; d * d <= v; ++d) {
    if (v % (d * d) == 0) return false;
    if (v % d == 0) v /= d;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

int kronecker(const Integer& a, const Integer& p) {
  return mpz_kronecker(a.get_mpz_t(), p.get_mpz_t());
}

std::vector<std::pair<Integer, int>> factor_integer(Integer n) {
  std::vector<std::pair<Integer, int>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  auto strip = [&](const Integer& d) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  };
  strip(2);
  for (Integer d = 3; d * d <= n; d += 2) {
    if (is_prime(n)) break;
    strip(d);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int valuation(Integer n, const Integer& p) {
  if (n == 0) throw Error(Errc::ZeroElement, "valuation of zero");
  int e = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++e;
  }
  return e;
}

Integer sqrt_mod(const Integer& a_in, const Integer& p) {
  Integer a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (p == 2) return a;
  // Tonelli-Shanks.
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (kronecker(z, p) != -1) ++z;
  Integer m(s), c, t, r, tmp;
  Integer e = (q + 1) / 2;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long mm = s;
  while (t != 1) {
    unsigned long i = 0;
    tmp = t;
    while (tmp != 1) {
      tmp = tmp * tmp % p;
      ++i;
      if (i == mm) throw Error(Errc::InvalidArgument, "sqrt_mod: not a residue");
    }
    Integer b = c;
    for (unsigned long j = 0; j + 1 < mm - i; ++j) b = b * b % p;
    mm = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace arakelov
