// Acceptance suite: one line per criterion, PASS or FAIL with the measured
// quantities next to the thresholds they are held to.
//
//   acceptance            run every criterion
//   acceptance 3 7        run criteria 3 and 7

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arakelov/capacity.hpp"
#include "arakelov/error.hpp"
#include "arakelov/linalg.hpp"
#include "arakelov/minkowski.hpp"
#include "arakelov/optimizer.hpp"
#include "arakelov/units.hpp"
#include "arakelov/wellposed.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace arakelov;
using testutil::uniform_int;
using testutil::uniform_real;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a sub-check; the criterion passes only if every sub-check does.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!ok) detail << " [failed: " << what << "]";
  }
};

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> body;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

long field_m_of_disc(long d) { return d % 4 == 0 ? d / 4 : d; }

void product_formula(Outcome& o) {
  auto t0 = Clock::now();
  double worst = 0;
  for (long m : {-1L, 2L, -5L}) {
    auto F = make_field(m);
    for (int i = 0; i < 200; ++i) worst = std::max(worst, std::fabs(deg_arith(principal(F, testutil::random_fn(3)))));
  }
  const double t = seconds_since(t0);
  o.detail << "max |deg| = " << worst << " (< 1e-9), " << t << " s (< 5 s)";
  o.check(worst < 1e-9, "degree");
  o.check(t < 5, "runtime");
}

void dirichlet_realization(Outcome& o) {
  double worst_rec = 0, worst_sum = 0;
  int cases = 0;
  for (long m : {2L, 5L, 13L}) {
    auto F = make_field(m);
    for (int i = 0; i < 100; ++i, ++cases) {
      const double t = uniform_real(-20, 20);
      Archimedean xi{t, -t};
      ArithmeticDivisor sum{{}, xi};
      Archimedean rec{0, 0};
      for (auto& [u, a] : dirichlet_realize(F, xi)) {
        auto l = log_abs_embed(F, u);
        rec[0] += a * l[0];
        rec[1] += a * l[1];
        sum = div_add(sum, div_scale(principal(F, RRationalFunction::of(u)), Real::approx(a / 2)));
      }
      worst_rec = std::max({worst_rec, std::fabs(rec[0] - xi[0]), std::fabs(rec[1] - xi[1])});
      worst_sum = std::max({worst_sum, std::fabs(sum.green[0]), std::fabs(sum.green[1])});
      for (const auto& [P, c] : sum.coeffs) worst_sum = std::max(worst_sum, std::fabs(c.value()));
    }
  }
  o.detail << cases << " cases, reconstruction " << worst_rec << ", divisor sum " << worst_sum << " (< 1e-10)";
  o.check(worst_rec < 1e-10, "reconstruction");
  o.check(worst_sum < 1e-10, "componentwise sum");
}

void degree_zero_optimum(Outcome& o) {
  auto t0 = Clock::now();
  double worst_dev = 0, lowest = HUGE_VAL;
  int cases = 0;
  for (long m : {-1L, 2L, -5L}) {
    auto F = make_field(m);
    auto primes = primes_up_to_norm(F, 20);
    for (int i = 0; i < 10; ++i, ++cases) {
      auto D = testutil::random_degree_zero(F, primes);
      auto r = smallest_section_pipeline(F, D);
      const double v = std::exp(r.solution.log_value);
      o.check(r.solution.certified, "LP certificate");
      worst_dev = std::max(worst_dev, std::fabs(v - 1));
      lowest = std::min(lowest, v);
    }
  }
  const double t = seconds_since(t0);
  o.detail << cases << " divisors, max |exp(t*) - 1| = " << worst_dev << " (< 1e-6), min exp(t*) = " << lowest
           << " (>= 1 - 1e-8), " << t << " s (< 60 s)";
  o.check(worst_dev < 1e-6, "optimum");
  o.check(lowest >= 1 - 1e-8, "lower bound");
  o.check(t < 60, "runtime");
}

void trichotomy(Outcome& o) {
  int cases = 0, wrong = 0, unverified = 0;
  for (long m : {-1L, 2L, -5L}) {
    auto F = make_field(m);
    auto primes = primes_up_to_norm(F, 12);
    for (int i = 0; i < 4; ++i) {
      auto base = testutil::random_degree_zero(F, primes);
      for (double target : {-0.5, 0.0, 0.5}) {
        ArithmeticDivisor D = base;
        D.green = {base.green[0] + target, base.green[1] + target};
        auto d = decide_pseudoeffective(F, D);
        ++cases;
        const bool expect = target >= 0;
        if (d.pseudo_effective != expect) ++wrong;
        if (d.pseudo_effective) {
          if (!d.witness || !is_effective(div_add(D, principal(F, d.witness->psi)), 1e-8)) ++unverified;
        }
      }
    }
  }
  o.detail << cases << " divisors, " << wrong << " misclassified, " << unverified << " witnesses failing re-verification";
  o.check(wrong == 0, "classification");
  o.check(unverified == 0, "witnesses");
}

void class_numbers(Outcome& o) {
  auto t0 = Clock::now();
  const long hi = class_group(make_field(-1)).h, h5 = class_group(make_field(-5)).h, h23 = class_group(make_field(-23)).h;
  o.check(hi == 1 && h5 == 2 && h23 == 3, "named class numbers");
  int discs = 0, disagree = 0;
  for (long d : oracle::imaginary_fundamental_discs(-200)) {
    ++discs;
    if (class_group(make_field(field_m_of_disc(d))).h != oracle::class_number_reduced_forms(d)) ++disagree;
  }
  const double t = seconds_since(t0);
  o.detail << "h = " << hi << ", " << h5 << ", " << h23 << "; " << discs << " discriminants, " << disagree
           << " disagreements, " << t << " s (< 30 s)";
  o.check(disagree == 0, "oracle agreement");
  o.check(t < 30, "runtime");
}

void minkowski_search(Outcome& o) {
  int boundary_bad = 0;
  const std::vector<long> fields{-1, 2, -5, 5, -23, 13};
  for (long m : fields) {
    auto F = make_field(m);
    const double ck = c_k(F).value;
    ArithmeticDivisor D{{}, {ck, ck}};
    FieldElement x = short_section(F, D);
    const Rational n = F.norm(x);
    if (!(n == 1 || n == -1) || !is_effective(div_add(D, principal(F, RRationalFunction::of(x))), 1e-9)) ++boundary_bad;
  }
  int ideals = 0, mismatched = 0;
  for (int i = 0; i < 50; ++i, ++ideals) {
    auto F = make_field(fields[i % fields.size()]);
    auto I = ideal_from_generators(F, {testutil::random_element(9, 4), testutil::random_element(9, 4)});
    const double r0 = uniform_real(0.2, 6.0);
    Archimedean R{r0, F.is_real() ? uniform_real(0.2, 6.0) : r0};
    std::set<std::pair<Rational, Rational>> fast;
    for (auto& x : lattice_points(F, I, R)) fast.emplace(x.a, x.b);
    if (fast != oracle::naive_scan(F, I, R, SearchOptions{}.rel_tol)) ++mismatched;
  }
  o.detail << fields.size() << " boundary instances, " << boundary_bad << " without a unit-norm section; " << ideals
           << " ideals, " << mismatched << " enumeration mismatches";
  o.check(boundary_bad == 0, "boundary instance");
  o.check(mismatched == 0, "enumeration");
}

void compactness(Outcome& o) {
  auto F = make_field(-5);
  auto primes = primes_up_to_norm(F, 12);
  primes.resize(3);
  const double tol = Tolerances{}.effectivity;
  int feasible = 0, feasible_outside = 0, outside = 0, outside_feasible = 0;
  while (feasible < 200 || outside < 200) {
    ArithmeticDivisor D;
    for (const auto& P : primes) D.coeffs.emplace(P, Real(uniform_int(0, 3)));
    const double g = uniform_real(0, 3);
    D.green = {g, g};
    auto box = compactness_bounds(D, primes);
    std::vector<double> a;
    for (const auto& iv : box) a.push_back(uniform_real(iv.lo - 1, iv.hi + 1));
    double dist = 0;
    for (std::size_t i = 0; i < a.size(); ++i) dist = std::max({dist, box[i].lo - a[i], a[i] - box[i].hi});
    const bool ok = perturbation_feasible(D, primes, a);
    if (ok && feasible < 200) {
      ++feasible;
      if (dist > tol) ++feasible_outside;
    }
    if (dist > 0 && outside < 200) {
      ++outside;
      if (ok && dist > tol) ++outside_feasible;
    }
  }
  o.detail << feasible << " feasible vectors, " << feasible_outside << " outside the box; " << outside
           << " outside points, " << outside_feasible << " feasible beyond tolerance";
  o.check(feasible_outside == 0, "feasible inside box");
  o.check(outside_feasible == 0, "outside infeasible");
}

void linalg_suite(Outcome& o) {
  double worst_rel = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(uniform_int(1, 8));
    const int dim = n + static_cast<int>(uniform_int(0, 2));
    GramInput G;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v(dim);
      for (int k = 0; k < dim; ++k) v(k) = uniform_real(-2, 2);
      G.vectors.push_back(v);
    }
    auto r = vol_ratio(G, static_cast<std::size_t>(uniform_int(0, n - 1)));
    worst_rel = std::max(worst_rel, std::fabs(r.vol - r.vol_rest * r.h) / r.vol);
  }
  int zariski_disagree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(uniform_int(2, 8));
    auto [Q, a] = testutil::random_zariski(n, trial % 2 == 0);
    auto z = zariski_classify(Q, a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    const double scale = 1 + Q.cwiseAbs().maxCoeff();
    const auto oracle = es.eigenvalues().maxCoeff() < -1e-7 * scale ? ZariskiKind::NegDefinite
                                                                     : ZariskiKind::NegSemidefiniteKernelE;
    if (z.kind != oracle || !z.eigen_agrees) ++zariski_disagree;
  }
  int nonzero_residual = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(uniform_int(2, 6));
    auto f = testutil::random_fiber(n);
    auto x = balance_fiber(f.M, f.a, f.rhs);
    for (int i = 0; i < n; ++i) {
      Rational s = 0;
      for (int j = 0; j < n; ++j) s += f.M[i][j] * x[j];
      if (s != -f.rhs[i] || x[i] <= 0) {
        ++nonzero_residual;
        break;
      }
    }
  }
  o.detail << "Gramian recursion max rel err " << worst_rel << " (< 1e-9, 500 cases); Zariski disagreements "
           << zariski_disagree << "/500; balance_fiber nonzero exact residuals " << nonzero_residual << "/200";
  o.check(worst_rel < 1e-9, "Gramian recursion");
  o.check(zariski_disagree == 0, "Zariski");
  o.check(nonzero_residual == 0, "balance_fiber");
}

void capacity_suite(Outcome& o) {
  auto t0 = Clock::now();
  std::vector<TorusFunction> fs;
  for (int i = 0; i < 16; ++i) fs.push_back(TorusFunction::sample(64, testutil::random_band_limited()));
  auto rep = pairing_properties_report(fs);
  const int n = 256;
  auto cosx = TorusFunction::sample(n, [](double x, double) { return std::cos(2 * std::numbers::pi * x); });
  const double cos_pair = pairing(cosx, cosx);
  auto constant = TorusFunction::sample(n, [](double, double) { return 3.0; });
  auto crep = pairing_properties_report({constant});
  const double t = seconds_since(t0);
  o.detail << "symmetry defect " << rep.max_symmetry_defect << " (< 1e-10), max I(f,f) " << rep.max_self_pairing
           << " (<= 1e-12), I(cos, cos) + pi/2 = " << cos_pair + std::numbers::pi / 2 << " (< 1e-6), constant: I = "
           << crep.max_self_pairing << " deviation " << crep.max_kernel_deviation << ", " << t << " s (< 10 s)";
  o.check(rep.max_symmetry_defect < 1e-10, "symmetry");
  o.check(rep.max_self_pairing <= 1e-12, "semidefinite");
  o.check(std::fabs(cos_pair + std::numbers::pi / 2) < 1e-6, "cos pair");
  o.check(rep.kernel_violations == 0 && crep.kernel_violations == 0 && crep.max_kernel_deviation < 1e-8 &&
              std::fabs(crep.max_self_pairing) <= 1e-12,
          "kernel diagnosis");
  o.check(t < 10, "runtime");
}

void wellposed_suite(Outcome& o) {
  auto fs = fubini_study(40);
  double diag_err = 0, off_rel = 0;
  for (int n = 0; n <= 12; ++n) {
    auto G = gram_matrix(fs, n);
    const double min_diag = G.gram.diagonal().minCoeff();
    for (int k = 0; k <= n; ++k) {
      const double beta = std::exp(std::lgamma(k + 1.0) + std::lgamma(n - k + 1.0) - std::lgamma(n + 2.0));
      diag_err = std::max(diag_err, std::fabs(G.gram(k, k) / beta - 1));
      for (int l = 0; l <= n; ++l) {
        if (l != k) off_rel = std::max(off_rel, std::fabs(G.gram(k, l)) / min_diag);
      }
    }
  }
  double sup_err = 0;
  auto xlogx = [](double v) { return v > 0 ? v * std::log(v) : 0.0; };
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double closed = std::exp(0.5 * (xlogx(k) + xlogx(n - k) - xlogx(n)));
      sup_err = std::max(sup_err, std::fabs(monomial_sup_norm(fs, n, k) / closed - 1));
    }
  }
  std::vector<double> seq;
  for (int n = 1; n <= 40; ++n) seq.push_back(smallest_monomial_scan(fs, n).integer_norm);
  auto fk = fekete_limit(seq, 1e-9);
  o.detail << "diagonal rel err " << diag_err << " (< 1e-9), off-diagonal rel " << off_rel << " (< 1e-10), sup-norm rel err "
           << sup_err << " (< 1e-9), Fekete limit " << fk.limit << " at n = " << fk.argmin << " (target 0.5 +- 2e-2), "
           << fk.violations.size() << " submultiplicativity violations";
  o.check(diag_err < 1e-9, "Gram diagonal");
  o.check(off_rel < 1e-10, "orthogonality");
  o.check(sup_err < 1e-9, "sup-norm closed form");
  o.check(std::fabs(fk.limit - 0.5) < 2e-2, "Fekete limit");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "product formula", product_formula},
      {2, "Dirichlet realization", dirichlet_realization},
      {3, "degree-zero optimum equals 1", degree_zero_optimum},
      {4, "pseudo-effectivity trichotomy", trichotomy},
      {5, "class numbers", class_numbers},
      {6, "Minkowski search", minkowski_search},
      {7, "compactness bounds", compactness},
      {8, "linalg suite", linalg_suite},
      {9, "capacity suite", capacity_suite},
      {10, "well-posed suite", wellposed_suite},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [threw: " << e.what() << "]";
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
