#include "arakelov/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "arakelov/error.hpp"
#include "arakelov/lp.hpp"
#include "arakelov/sunits.hpp"

namespace arakelov {

MinimaxProblem make_problem(const QuadraticField& F, const ArithmeticDivisor& Dbar,
                            const std::vector<RRationalFunction>& gens) {
  check_conjugation_invariant(F, Dbar.green);
  MinimaxProblem pb;
  pb.Dbar = Dbar;
  pb.gens = gens;
  std::vector<FiniteDivisor> ords;
  for (const auto& [P, c] : Dbar.coeffs) pb.primes.push_back(P);
  for (const auto& g : gens) {
    ords.push_back(ord_divisor(F, g));
    for (const auto& [P, c] : ords.back()) pb.primes.push_back(P);
    pb.L.push_back(log_abs_fn(F, g));
  }
  std::sort(pb.primes.begin(), pb.primes.end());
  pb.primes.erase(std::unique(pb.primes.begin(), pb.primes.end()), pb.primes.end());
  for (const auto& o : ords) {
    std::vector<double> row;
    for (const auto& P : pb.primes) {
      auto it = o.find(P);
      row.push_back(it == o.end() ? 0.0 : it->second.value());
    }
    pb.V.push_back(std::move(row));
  }
  return pb;
}

MinimaxSolution minimize_sup(const MinimaxProblem& pb, double tol) {
  const int l = static_cast<int>(pb.gens.size());
  const int np = static_cast<int>(pb.primes.size());
  // Variables (a_1..a_l, t). Rows: one per embedding, then one per prime.
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Zero(2 + np, l + 1);
  lp.b = Eigen::VectorXd::Zero(2 + np);
  lp.c = Eigen::VectorXd::Zero(l + 1);
  lp.c(l) = 1.0;
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < l; ++i) lp.A(s, i) = pb.L[i][s];
    lp.A(s, l) = -1.0;
    lp.b(s) = pb.Dbar.green[s] / 2;
  }
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < l; ++i) lp.A(2 + j, i) = -pb.V[i][j];
    auto it = pb.Dbar.coeffs.find(pb.primes[j]);
    lp.b(2 + j) = it == pb.Dbar.coeffs.end() ? 0.0 : it->second.value();
  }
  LpResult res = solve_lp(lp);

  MinimaxSolution sol;
  sol.a_star.assign(res.x.data(), res.x.data() + l);
  sol.log_value = res.x(l);
  sol.primal_residual = res.primal_residual;
  sol.dual_residual = res.dual_residual;
  sol.gap = std::max(res.gap, res.dual_sign);
  sol.certified = res.certified(tol);
  Eigen::VectorXd slack = lp.b - lp.A * res.x;
  for (int r = 0; r < 2 + np; ++r) {
    if (std::fabs(slack(r)) > tol) continue;
    sol.active_set.push_back(r < 2 ? "sigma" + std::to_string(r) : to_string(pb.primes[r - 2]));
  }
  for (int i = 0; i < l; ++i) sol.psi = fn_mul(sol.psi, fn_pow(pb.gens[i], Real::approx(sol.a_star[i])));
  return sol;
}

std::vector<Interval> compactness_bounds(const ArithmeticDivisor& Dbar, const std::vector<PrimeIdeal>& basis) {
  auto coeff = [&](const PrimeIdeal& P) {
    auto it = Dbar.coeffs.find(P);
    return it == Dbar.coeffs.end() ? 0.0 : it->second.value();
  };
  const double half_green = 0.5 * (Dbar.green[0] + Dbar.green[1]);
  std::vector<Interval> out;
  for (const auto& P : basis) {
    double num = half_green;
    for (const auto& Q : basis) {
      if (!(Q == P)) num += coeff(Q) * Q.log_norm();
    }
    out.push_back({-coeff(P), num / P.log_norm()});
  }
  return out;
}

bool perturbation_feasible(const ArithmeticDivisor& Dbar, const std::vector<PrimeIdeal>& basis,
                           const std::vector<double>& a, double tol) {
  ArithmeticDivisor E = Dbar;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    E = div_add(E, ArithmeticDivisor{{{basis[i], Real::approx(a[i])}},
                                     {-a[i] * basis[i].log_norm(), -a[i] * basis[i].log_norm()}});
  }
  return is_effective(E, tol);
}

PipelineResult smallest_section_pipeline(const QuadraticField& F, const ArithmeticDivisor& Dbar,
                                         const PipelineOptions& opts) {
  check_conjugation_invariant(F, Dbar.green);
  if (!Dbar.all_exact()) throw Error(Errc::InvalidArgument, "pipeline needs rational finite coefficients");
  if (std::fabs(deg_arith(Dbar)) > opts.tol) {
    throw Error(Errc::DegreeNotZero, "deg_arith = " + std::to_string(deg_arith(Dbar)));
  }
  PipelineResult out;
  Integer M = 1;
  for (const auto& [P, c] : Dbar.coeffs) M = lcm(M, Integer(c.exact().get_den()));
  out.scale = M.get_si();
  ArithmeticDivisor scaled = div_scale(Dbar, Real(Rational(M)));

  // Sections x_n of n*M*Dbar + (0, C_K) for n = 1..depth; searches are independent.
  const double CK = c_k(F).value;
  const auto policy = opts.threads > 1 ? std::launch::async : std::launch::deferred;
  std::vector<std::future<FieldElement>> jobs;
  for (int n = 1; n <= opts.depth; ++n) {
    jobs.push_back(std::async(policy, [&, n] {
      ArithmeticDivisor Dn = div_scale(scaled, Real(static_cast<long>(n)));
      Dn.green = {Dn.green[0] + CK, Dn.green[1] + CK};
      return short_section(F, Dn, opts.search);
    }));
  }
  std::vector<PrimeIdeal> sigma;
  for (const auto& [P, c] : Dbar.coeffs) sigma.push_back(P);
  for (auto& job : jobs) {
    out.sections.push_back(job.get());
    for (auto& [P, v] : factor_element(F, out.sections.back())) sigma.push_back(P);
  }
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  out.sigma = sigma;

  SUnitGroup S = s_unit_group(F, sigma);
  std::vector<RRationalFunction> gens;
  for (const auto& g : S.generators) gens.push_back(RRationalFunction::of(g));
  out.solution = minimize_sup(make_problem(F, Dbar, gens), opts.tol);
  out.psi = out.solution.psi;
  bool effective = is_effective(div_add(Dbar, principal(F, out.psi)), opts.tol);
  if (!out.solution.certified || out.solution.log_value > opts.tol || !effective) {
    throw Error(Errc::UndecidedAtDepth, "certificate did not close at depth " + std::to_string(opts.depth) +
                                            " (t* = " + std::to_string(out.solution.log_value) + ")");
  }
  return out;
}

Decision decide_pseudoeffective(const QuadraticField& F, const ArithmeticDivisor& Dbar, const PipelineOptions& opts) {
  Decision d;
  d.degree = deg_arith(Dbar);
  if (d.degree < -opts.tol) return d;
  // Shift the green part down by 2 deg/[K:Q] on each embedding to reach degree zero.
  ArithmeticDivisor shifted = Dbar;
  shifted.green = {Dbar.green[0] - d.degree, Dbar.green[1] - d.degree};
  d.witness = smallest_section_pipeline(F, shifted, opts);
  d.pseudo_effective = true;
  return d;
}

}  // namespace arakelov
