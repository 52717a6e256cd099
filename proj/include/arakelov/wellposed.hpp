#pragma once

// Monomial sections of O(n) on P^1 with a rotation-invariant metric: weighted
// Gram matrices, volume-ratio angles, well-posedness evidence, Fekete limits
// and smallest monomial sections.
//
// A model is written in t = log|z|: the Green function is g(z) = a(|z|), and
// the volume form is Omega = b(|z|) r dr dtheta with total mass 1.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace arakelov {

struct RadialModel {
  std::string name;
  std::function<double(double)> a_of_t;      // a(e^t)
  std::function<double(double)> log_b_of_t;  // log b(e^t)
  std::vector<double> breakpoints;           // values of t where a is not smooth
  int n_max = 20;
};

/// a = log(1 + r^2), b = (1/pi) (1 + r^2)^-2.
RadialModel fubini_study(int n_max = 20);

/// a = log(1 + r^2) + delta(r), delta interpolated linearly in log r from the
/// table points (r_i, a_i) and held constant beyond them. b is the
/// Fubini-Study density.
RadialModel table_model(const std::vector<std::pair<double, double>>& table, int n_max = 20);

/// {"green": "fubini-study" | {"table": [[r, a], ...]}, "nmax": 20}
RadialModel parse_model(const std::string& json_text);

/// Adaptive Gauss-Kronrod on t = log r over [-L, L], doubling L until the
/// value is stable to rel_tol. The interval is split at the given
/// breakpoints. Throws QuadratureFailure.
double radial_integral(const std::function<double(double)>& log_integrand,
                       const std::vector<double>& breakpoints = {}, double rel_tol = 1e-11);

/// int Omega; must be 1.
double total_mass(const RadialModel& model);

struct GramSystem {
  int n = 0;
  std::vector<int> sigma;  // exponents k of the basis z^k
  Eigen::MatrixXd gram;
};

/// <z^k, z^l>_n = int z^k conj(z^l) exp(-n g) Omega for 0 <= k, l <= n.
GramSystem gram_matrix(const RadialModel& model, int n, double rel_tol = 1e-11);

/// sin(theta_A) = vol(Sigma) / (|phi_A| vol(Sigma minus A)), by log-determinants.
/// 0 for every index when the Gram matrix is singular.
std::vector<double> sin_theta_profile(const GramSystem& G);

struct WellposedRow {
  int n = 0;
  bool basis = false;       // (1) Gram matrix nonsingular
  long quotient_index = 1;  // (2) index of the monomial lattice, exact
  double min_sin = 0.0;
  double root = 0.0;        // (3) min_A sin(theta_A)^(1/n)
  double running_inf = 0.0; // inf of root over this n and all later n in the window
};

struct WellposedReport {
  std::vector<WellposedRow> rows;
  bool condition1 = false;
  bool condition2 = false;
  bool condition3 = false;
  double liminf_estimate = 0.0;
  std::string label;
};

WellposedReport wellposed_report(const std::vector<GramSystem>& grams, double tol = 1e-9);
WellposedReport wellposed_report(const RadialModel& model, int n_lo, int n_hi, double tol = 1e-9,
                                 double quad_tol = 1e-11);

struct FeketeResult {
  double limit = 0.0;  // inf a_n^(1/n) over the window
  int argmin = 0;
  std::vector<std::pair<int, int>> violations;  // (n, n') with a_{n+n'} > a_n a_{n'}
};

/// seq[i] = a_{i+1}.
FeketeResult fekete_limit(const std::vector<double>& seq, double tol = 1e-12);

/// sup_z |z|^x exp(-n g(z) / 2).
double monomial_sup_norm(const RadialModel& model, int n, double x);

struct MonomialScan {
  int k_star = 0;
  double integer_norm = 1.0;
  double x_star = 0.0;
  double real_norm = 1.0;
};

MonomialScan smallest_monomial_scan(const RadialModel& model, int n);

}  // namespace arakelov
