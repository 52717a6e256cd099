#include <cmath>
#include <numbers>

#include "arakelov/error.hpp"
#include "arakelov/wellposed.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace arakelov;
using testutil::uniform_real;

namespace {

// Beta integral: int_0^inf 2 r^{2k+1} (1+r^2)^{-n-2} dr = k!(n-k)!/(n+1)!.
double beta_oracle(int n, int k) {
  return std::exp(std::lgamma(k + 1.0) + std::lgamma(n - k + 1.0) - std::lgamma(n + 2.0));
}

double fs_sup_closed_form(int n, double k) {
  auto xlogx = [](double v) { return v > 0 ? v * std::log(v) : 0.0; };
  return std::exp(0.5 * (xlogx(k) + xlogx(n - k) - xlogx(n)));
}

GramSystem synthetic(int n, const Eigen::MatrixXd& M) {
  GramSystem G;
  G.n = n;
  G.gram = M;
  for (int k = 0; k < M.rows(); ++k) G.sigma.push_back(k);
  return G;
}

}  // namespace

TEST_CASE("models are normalized") {
  CHECK(total_mass(fubini_study()) == doctest::Approx(1).epsilon(1e-10));
  auto t = table_model({{0.5, 0.3}, {1.0, 0.9}, {2.0, 1.7}});
  CHECK(total_mass(t) == doctest::Approx(1).epsilon(1e-10));
}

TEST_CASE("Fubini-Study Gram entries") {
  auto fs = fubini_study();
  auto G2 = gram_matrix(fs, 2);
  CHECK(G2.gram(1, 1) == doctest::Approx(1.0 / 6).epsilon(1e-9));
  CHECK(std::fabs(G2.gram(0, 1)) < 1e-15);
  CHECK(gram_matrix(fs, 0).gram(0, 0) == doctest::Approx(1).epsilon(1e-10));
  CHECK(gram_matrix(table_model({{1.0, 0.5}}), 0).gram(0, 0) > 0);

  for (int n = 0; n <= 20; ++n) {
    auto G = gram_matrix(fs, n);
    double min_diag = G.gram.diagonal().minCoeff(), max_off = 0;
    for (int k = 0; k <= n; ++k) {
      CHECK(std::fabs(G.gram(k, k) / beta_oracle(n, k) - 1) < 1e-9);
      for (int l = 0; l <= n; ++l) {
        if (l != k) max_off = std::max(max_off, std::fabs(G.gram(k, l)));
      }
    }
    CHECK(max_off < 1e-10 * min_diag);
  }
  CHECK_THROWS_AS(gram_matrix(fubini_study(5), 6), Error);
}

TEST_CASE("orthogonality for a perturbed radial model") {
  // a(r) = log(1 + r^2) + 0.3 exp(-(log r)^2), a radial bump.
  std::vector<std::pair<double, double>> table;
  for (double t = -6; t <= 6; t += 0.05) {
    double r = std::exp(t);
    table.emplace_back(r, std::log1p(r * r) + 0.3 * std::exp(-t * t));
  }
  auto m = table_model(table);
  for (int n : {1, 5, 12, 20}) {
    auto G = gram_matrix(m, n);
    double max_off = 0;
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) {
        if (l != k) max_off = std::max(max_off, std::fabs(G.gram(k, l)));
      }
    }
    CHECK(max_off < 1e-10 * G.gram.diagonal().minCoeff());
    for (double s : sin_theta_profile(G)) CHECK(s == doctest::Approx(1).epsilon(1e-12));
  }
  auto rep = wellposed_report(m, 0, 20);
  CHECK(rep.condition1);
  CHECK(rep.condition2);
  CHECK(rep.condition3);
}

TEST_CASE("sin theta profile") {
  for (double s : sin_theta_profile(gram_matrix(fubini_study(), 6))) CHECK(s == doctest::Approx(1));
  Eigen::MatrixXd M(2, 2);
  M << 1, 0.5, 0.5, 1;
  for (double s : sin_theta_profile(synthetic(1, M))) CHECK(s == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  M << 1, 1, 1, 1;
  for (double s : sin_theta_profile(synthetic(1, M))) CHECK(s == 0.0);
  // Against explicit vectors: sin of the angle between a vector and the span of the rest.
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd V = Eigen::MatrixXd::Random(4, 3);
    auto prof = sin_theta_profile(synthetic(2, V.transpose() * V));
    for (int a = 0; a < 3; ++a) {
      Eigen::MatrixXd rest(4, 2);
      int c = 0;
      for (int j = 0; j < 3; ++j) {
        if (j != a) rest.col(c++) = V.col(j);
      }
      Eigen::VectorXd proj = rest * rest.colPivHouseholderQr().solve(V.col(a));
      double expect = (V.col(a) - proj).norm() / V.col(a).norm();
      CHECK(prof[a] == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("well-posedness report") {
  auto rep = wellposed_report(fubini_study(), 0, 20);
  CHECK(rep.condition1);
  CHECK(rep.condition2);
  CHECK(rep.condition3);
  CHECK(rep.rows.size() == 21);
  for (const auto& row : rep.rows) CHECK(row.root == doctest::Approx(1));
  CHECK(rep.label.find("evidence") != std::string::npos);

  // sin theta = e^{-cn}: condition (3) fails with liminf e^{-c}.
  const double c = 0.2;
  std::vector<GramSystem> grams;
  for (int n = 1; n <= 20; ++n) {
    double rho = std::sqrt(1 - std::exp(-2 * c * n));
    Eigen::MatrixXd M(2, 2);
    M << 1, rho, rho, 1;
    grams.push_back(synthetic(n, M));
  }
  auto bad = wellposed_report(grams);
  CHECK(bad.condition1);
  CHECK_FALSE(bad.condition3);
  CHECK(bad.liminf_estimate == doctest::Approx(std::exp(-c)).epsilon(1e-6));
}

TEST_CASE("fekete limits") {
  std::vector<double> pow2;
  for (int n = 1; n <= 20; ++n) pow2.push_back(std::pow(2.0, n));
  auto r = fekete_limit(pow2);
  CHECK(r.limit == doctest::Approx(2));
  CHECK(r.violations.empty());

  std::vector<double> sup;
  auto fs = fubini_study(40);
  for (int n = 1; n <= 40; ++n) sup.push_back(smallest_monomial_scan(fs, n).integer_norm);
  auto fr = fekete_limit(sup, 1e-9);
  CHECK(fr.violations.empty());
  // The minimum over k sits at k = n/2, so a_n = 2^{-n/2} for even n.
  CHECK(fr.limit == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-9));

  auto injected = pow2;
  injected[5] *= 100;  // a_6 > a_3 a_3
  auto fi = fekete_limit(injected);
  CHECK_FALSE(fi.violations.empty());
  CHECK(std::find(fi.violations.begin(), fi.violations.end(), std::make_pair(3, 3)) != fi.violations.end());
}

TEST_CASE("smallest monomial scan") {
  auto fs = fubini_study();
  auto s2 = smallest_monomial_scan(fs, 2);
  CHECK(s2.k_star == 1);
  CHECK(s2.integer_norm == doctest::Approx(0.5).epsilon(1e-12));
  auto s3 = smallest_monomial_scan(fs, 3);
  CHECK(s3.x_star == doctest::Approx(1.5).epsilon(1e-5));
  CHECK(s3.real_norm == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-9));
  CHECK(s3.real_norm <= s3.integer_norm);
  auto s0 = smallest_monomial_scan(fs, 0);
  CHECK(s0.k_star == 0);
  CHECK(s0.integer_norm == doctest::Approx(1));
}

TEST_CASE("sup norm closed form") {
  auto fs = fubini_study();
  for (int n = 1; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(std::fabs(monomial_sup_norm(fs, n, k) / fs_sup_closed_form(n, k) - 1) < 1e-9);
    }
  }
}

TEST_CASE("sup norm is continuous in the exponent") {
  auto fs = fubini_study();
  const int n = 6;
  double prev_modulus = HUGE_VAL;
  for (double delta : {0.1, 0.01, 0.001}) {
    double modulus = 0;
    for (int i = 0; i < 200; ++i) {
      double x = uniform_real(0, n - delta);
      modulus = std::max(modulus, std::fabs(monomial_sup_norm(fs, n, x + delta) - monomial_sup_norm(fs, n, x)));
    }
    CHECK(modulus < prev_modulus);
    prev_modulus = modulus;
  }
  CHECK(prev_modulus < 1e-2);
}

TEST_CASE("model JSON") {
  CHECK(parse_model(R"({"green":"fubini-study","nmax":7})").n_max == 7);
  auto m = parse_model(R"({"green":{"table":[[1,0.7],[2,1.6]]}})");
  CHECK(m.n_max == 20);
  CHECK(m.a_of_t(0.0) == doctest::Approx(0.7));
  CHECK_THROWS_AS(parse_model("{\"green\":\"flat\"}"), Error);
  CHECK_THROWS_AS(parse_model("not json"), Error);
}
