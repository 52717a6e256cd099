#include <cmath>
#include <numbers>

#include "arakelov/error.hpp"
#include "arakelov/minkowski.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace arakelov;

namespace {

FieldElement el(long a, long b) { return {Rational(a), Rational(b)}; }

FiniteDivisor one_prime(const QuadraticField& F, long p, int index, long c = 1) {
  return {{prime_ideal(F, p, index), Real(c)}};
}

long field_m_of_disc(long d) { return d % 4 == 0 ? d / 4 : d; }

}  // namespace

TEST_CASE("c_k matches the closed form") {
  CHECK(c_k(make_field(-1)).value == doctest::Approx(std::log(4 / std::numbers::pi)).epsilon(1e-14));
  CHECK(c_k(make_field(-1)).value == doctest::Approx(0.24156).epsilon(1e-4));
  CHECK(c_k(make_field(5)).value == doctest::Approx(std::log(std::sqrt(5.0))).epsilon(1e-14));
  CHECK(c_k(make_field(5)).value == doctest::Approx(0.80472).epsilon(1e-5));
  CHECK(c_k(make_field(-5)).value == doctest::Approx(std::log(2 / std::numbers::pi * std::sqrt(20.0))).epsilon(1e-14));
  CHECK(c_k(make_field(-5)).r2 == 1);
  CHECK(c_k(make_field(-5)).abs_disc == 20);
}

TEST_CASE("norm_within_minkowski is exact") {
  auto Fi = make_field(-1);
  CHECK(norm_within_minkowski(Fi, 1));
  CHECK_FALSE(norm_within_minkowski(Fi, 2));
  auto F5 = make_field(-5);
  CHECK(norm_within_minkowski(F5, 2));
  CHECK_FALSE(norm_within_minkowski(F5, 3));
  auto Fr = make_field(5);
  CHECK(norm_within_minkowski(Fr, 2));
  CHECK_FALSE(norm_within_minkowski(Fr, 3));
}

TEST_CASE("short_section examples") {
  auto Fi = make_field(-1);
  double CK = c_k(Fi).value;
  auto x = short_section(Fi, {{}, {CK, CK}});
  CHECK(std::abs(Fi.norm(x).get_d()) == 1.0);

  ArithmeticDivisor D{one_prime(Fi, 2, 0, -1), {CK + std::log(2.0), CK + std::log(2.0)}};
  auto y = short_section(Fi, D);
  CHECK(principal_ideal(Fi, y) == principal_ideal(Fi, el(1, 1)));
  CHECK(is_effective(div_add(D, principal(Fi, RRationalFunction::of(y)))));

  auto F5 = make_field(5);
  double C5 = c_k(F5).value;
  auto z = short_section(F5, {{}, {C5, C5}});
  CHECK(std::abs(F5.norm(z).get_d()) == 1.0);
  auto l = abs_embed(F5, z);
  CHECK(l[0] <= std::pow(5.0, 0.25) + 1e-12);
  CHECK(l[1] <= std::pow(5.0, 0.25) + 1e-12);
}

TEST_CASE("short_section on unbalanced real boxes uses the unit rebalancing") {
  auto F2 = make_field(2);
  double C = c_k(F2).value;
  ArithmeticDivisor D{{}, {C + 60.0, C - 60.0}};
  auto x = short_section(F2, D);
  CHECK(is_effective(div_add(D, principal(F2, RRationalFunction::of(x)))));
}

TEST_CASE("short_section with large degree shrinks the box") {
  auto F = make_field(-23);
  ArithmeticDivisor D{one_prime(F, 2, 0, 3), {40.0, 40.0}};
  auto x = short_section(F, D);
  CHECK(is_effective(div_add(D, principal(F, RRationalFunction::of(x)))));
}

TEST_CASE("short_section rejects fractional coefficients") {
  auto Fi = make_field(-1);
  ArithmeticDivisor D{{{prime_ideal(Fi, 2, 0), Real(Rational(1, 2))}}, {1.0, 1.0}};
  CHECK_THROWS_AS(short_section(Fi, D), Error);
}

TEST_CASE("enumerate_theta examples") {
  CHECK(enumerate_theta(make_field(-1)).size() == 1);
  auto T5 = enumerate_theta(make_field(-5));
  REQUIRE(T5.size() == 2);
  CHECK(T5[0].empty());
  CHECK(T5[1] == one_prime(make_field(-5), 2, 0));
  CHECK(enumerate_theta(make_field(5)).size() == 1);
  // Q(sqrt -23): C_K ~ 1.116, norms <= 3: 0, P2, P2', P3, P3'.
  CHECK(enumerate_theta(make_field(-23)).size() == 5);
}

TEST_CASE("property: theta members are effective with norm inside the Minkowski bound") {
  for (long m : {-1L, -5L, -23L, -47L, -71L, 10L, 79L, -163L, 2L}) {
    auto F = make_field(m);
    for (const auto& E : enumerate_theta(F)) {
      CHECK(is_effective(E));
      CHECK(deg_finite(E) <= c_k(F).value + 1e-12);
    }
  }
}

TEST_CASE("reduce_to_theta examples") {
  auto Fi = make_field(-1);
  auto [x0, E0] = reduce_to_theta(Fi, {});
  CHECK(E0.empty());
  CHECK(std::abs(Fi.norm(x0).get_d()) == 1.0);

  auto [x, E] = reduce_to_theta(Fi, one_prime(Fi, 5, 0));
  CHECK(E.empty());
  CHECK(finite_add(one_prime(Fi, 5, 0), ord_divisor(Fi, RRationalFunction::of(x))).empty());

  auto F5 = make_field(-5);
  auto [y, E2] = reduce_to_theta(F5, one_prime(F5, 2, 0));
  CHECK(E2 == one_prime(F5, 2, 0));
}

TEST_CASE("property: reduce_to_theta lands in Theta") {
  for (long m : {-5L, -23L, 10L, -14L}) {
    auto F = make_field(m);
    auto theta = enumerate_theta(F);
    auto primes = primes_up_to_norm(F, 40);
    for (int i = 0; i < 20; ++i) {
      FiniteDivisor D;
      for (int j = 0; j < 3; ++j) {
        const auto& P = primes[testutil::uniform_int(0, static_cast<long>(primes.size()) - 1)];
        D = finite_add(D, FiniteDivisor{{P, Real(testutil::uniform_int(-2, 2))}});
      }
      auto [x, E] = reduce_to_theta(F, D);
      CHECK(std::find(theta.begin(), theta.end(), E) != theta.end());
      CHECK(finite_add(D, ord_divisor(F, RRationalFunction::of(x))) == E);
    }
  }
}

TEST_CASE("principal_generator") {
  auto F5 = make_field(-5);
  CHECK_FALSE(principal_generator(F5, prime_ideal(F5, 2, 0).ideal).has_value());
  auto g = principal_generator(F5, ideal_pow(F5, prime_ideal(F5, 2, 0).ideal, 2));
  REQUIRE(g.has_value());
  CHECK(principal_ideal(F5, *g) == principal_ideal(F5, el(2, 0)));

  auto F10 = make_field(10);
  CHECK_FALSE(principal_generator(F10, prime_ideal(F10, 2, 0).ideal).has_value());
  auto F2 = make_field(2);
  auto h = principal_generator(F2, prime_ideal(F2, 7, 1).ideal);
  REQUIRE(h.has_value());
  CHECK(principal_ideal(F2, *h) == prime_ideal(F2, 7, 1).ideal);
  // Fractional ideals too.
  auto Fi = make_field(-1);
  auto inv = ideal_inverse(Fi, prime_ideal(Fi, 5, 1).ideal);
  auto k = principal_generator(Fi, inv);
  REQUIRE(k.has_value());
  CHECK(principal_ideal(Fi, *k) == inv);
}

TEST_CASE("class_group examples") {
  CHECK(class_group(make_field(-1)).h == 1);
  CHECK(class_group(make_field(-5)).h == 2);
  CHECK(class_group(make_field(-23)).h == 3);
  CHECK_THROWS_AS(class_group(make_field(-130)), Error);  // |d| = 520
  CHECK(class_group(make_field(-130), 1000).h == oracle::class_number_reduced_forms(-520));
}

TEST_CASE("class numbers of real quadratic fields") {
  // Standard table values.
  const std::vector<std::pair<long, long>> table{{2, 1}, {3, 1}, {5, 1}, {6, 1}, {10, 2}, {15, 2},
                                                 {26, 2}, {30, 2}, {34, 2}, {35, 2}, {79, 3}, {82, 4}};
  for (auto [m, h] : table) {
    INFO("m = " << m);
    CHECK(class_group(make_field(m)).h == h);
  }
}

TEST_CASE("class_group agrees with the reduced-forms oracle down to -200") {
  for (long d : oracle::imaginary_fundamental_discs(-200)) {
    INFO("d = " << d);
    CHECK(class_group(make_field(field_m_of_disc(d))).h == oracle::class_number_reduced_forms(d));
  }
}

TEST_CASE("property: lattice enumeration matches a naive coefficient scan") {
  for (long m : {-1L, -5L, -23L, 2L, 5L, 13L, 10L}) {
    auto F = make_field(m);
    for (int i = 0; i < 15; ++i) {
      auto I = ideal_from_generators(F, {testutil::random_element(9, 4), testutil::random_element(9, 4)});
      double r0 = testutil::uniform_real(0.2, 6.0);
      double r1 = F.is_real() ? testutil::uniform_real(0.2, 6.0) : r0;
      Archimedean R{r0, r1};
      std::set<std::pair<Rational, Rational>> fast;
      for (auto& x : lattice_points(F, I, R)) fast.emplace(x.a, x.b);
      CHECK(fast == oracle::naive_scan(F, I, R, SearchOptions{}.rel_tol));
    }
  }
}
