#include <cmath>

#include "arakelov/arithdiv.hpp"
#include "arakelov/error.hpp"
#include "arakelov/units.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace arakelov;

namespace {

FieldElement el(long a, long b) { return {Rational(a), Rational(b)}; }

// Brute-force Pell oracle: smallest unit > 1 written as (x + y sqrt m)/k,
// k = 2 when m = 1 mod 4, else k = 1; returned in omega coordinates.
FieldElement pell_oracle(long m) {
  bool half = m % 4 == 1;
  long target = half ? 4 : 1;
  for (long y = 1;; ++y) {
    long x0 = static_cast<long>(std::floor(y * std::sqrt(static_cast<double>(m))));
    for (long x = std::max(1L, x0 - 3); x <= x0 + 3; ++x) {
      long long v = static_cast<long long>(x) * x - static_cast<long long>(m) * y * y;
      if (v == target || v == -target) {
        if (half) return {Rational((x - y) / 2), Rational(y)};
        return {Rational(x), Rational(y)};
      }
    }
  }
}

Errc code_of(const QuadraticField& F, const Archimedean& xi) {
  try {
    dirichlet_realize(F, xi);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("unit_group examples") {
  auto Gi = unit_group(make_field(-1));
  CHECK(Gi.torsion_order == 4);
  CHECK_FALSE(Gi.fundamental.has_value());
  CHECK(unit_group(make_field(-3)).torsion_order == 6);
  CHECK(unit_group(make_field(-5)).torsion_order == 2);
  CHECK(unit_group(make_field(-23)).torsion_order == 2);

  CHECK(*unit_group(make_field(2)).fundamental == el(1, 1));
  CHECK(*unit_group(make_field(5)).fundamental == el(0, 1));
  CHECK(unit_group(make_field(2)).log_fundamental == doctest::Approx(std::log(1 + std::sqrt(2.0))));
}

TEST_CASE("fundamental unit agrees with brute-force Pell search for m < 100") {
  for (long m = 2; m < 100; ++m) {
    if (!is_squarefree(m)) continue;
    auto F = make_field(m);
    auto G = unit_group(F);
    INFO("m = " << m);
    CHECK(*G.fundamental == pell_oracle(m));
    auto n = F.norm(*G.fundamental);
    CHECK((n == 1 || n == -1));
    CHECK(G.log_fundamental > 0);
    CHECK(G.torsion_order == 2);
  }
}

TEST_CASE("dirichlet_realize examples and errors") {
  auto F2 = make_field(2);
  CHECK(dirichlet_realize(F2, {0.0, 0.0}).empty());
  double lam = std::log(1 + std::sqrt(2.0));
  auto r = dirichlet_realize(F2, {lam, -lam});
  REQUIRE(r.size() == 1);
  CHECK(r[0].first == el(1, 1));
  CHECK(r[0].second == doctest::Approx(1.0).epsilon(1e-14));

  auto Fi = make_field(-1);
  CHECK(dirichlet_realize(Fi, {0.0, 0.0}).empty());
  CHECK(code_of(Fi, {0.3, -0.3}) == Errc::NotConjugationInvariant);
  CHECK(code_of(F2, {0.3, 0.3}) == Errc::TraceNotZero);
}

TEST_CASE("property: dirichlet_realize round trip") {
  for (long m : {2L, 5L, 13L, 3L, 7L, 46L}) {
    auto F = make_field(m);
    for (int i = 0; i < 100; ++i) {
      double t = testutil::uniform_real(-20, 20);
      Archimedean xi{t, -t};
      auto r = dirichlet_realize(F, xi);
      ArithmeticDivisor sum{{}, xi};
      Archimedean rec{0, 0};
      for (auto& [u, a] : r) {
        auto l = log_abs_embed(F, u);
        rec[0] += a * l[0];
        rec[1] += a * l[1];
        sum = div_add(sum, div_scale(principal(F, RRationalFunction::of(u)), Real::approx(a / 2)));
      }
      CHECK(std::max(std::fabs(rec[0] - xi[0]), std::fabs(rec[1] - xi[1])) < 1e-10);
      CHECK(sum.coeffs.empty());
      CHECK(std::fabs(sum.green[0]) < 1e-10);
      CHECK(std::fabs(sum.green[1]) < 1e-10);
    }
  }
}

TEST_CASE("property: finitely many units in a log box") {
  const double B = 3.0;
  for (long m : {-1L, -3L, -5L, 2L, 3L, 5L, 13L, 6L}) {
    auto F = make_field(m);
    auto G = unit_group(F);
    long powers = 1;
    if (F.is_real()) powers = 2 * static_cast<long>(std::floor(B / G.log_fundamental)) + 1;
    INFO("m = " << m);
    CHECK(static_cast<long>(units_in_log_box(F, B).size()) == G.torsion_order * powers);
  }
}
