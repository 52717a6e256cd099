#include "arakelov/wellposed.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>

#include "arakelov/error.hpp"

namespace arakelov {

namespace {

constexpr double kLogRadiusCap = 40.0;

// log(1 + e^{2t}) without overflow.
double log1p_exp2(double t) { return t > 0 ? 2 * t + std::log1p(std::exp(-2 * t)) : std::log1p(std::exp(2 * t)); }

double fs_log_b(double t) { return -std::log(std::numbers::pi) - 2 * log1p_exp2(t); }

// Exponent of |z|^x exp(-n a / 2) at |z| = e^t.
double log_weighted(const RadialModel& m, int n, double x, double t) { return x * t - 0.5 * n * m.a_of_t(t); }

}  // namespace

RadialModel fubini_study(int n_max) {
  RadialModel m;
  m.name = "fubini-study";
  m.a_of_t = log1p_exp2;
  m.log_b_of_t = fs_log_b;
  m.n_max = n_max;
  return m;
}

RadialModel table_model(const std::vector<std::pair<double, double>>& table, int n_max) {
  if (table.empty()) throw Error(Errc::InvalidArgument, "empty Green table");
  std::vector<std::pair<double, double>> pts;  // (t, delta)
  for (const auto& [r, a] : table) {
    if (!(r > 0)) throw Error(Errc::InvalidArgument, "table radii must be positive");
    const double t = std::log(r);
    pts.emplace_back(t, a - log1p_exp2(t));
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].first == pts[i - 1].first) throw Error(Errc::InvalidArgument, "duplicate table radius");
  }
  auto delta = [pts](double t) {
    if (t <= pts.front().first) return pts.front().second;
    if (t >= pts.back().first) return pts.back().second;
    auto hi = std::upper_bound(pts.begin(), pts.end(), std::make_pair(t, -HUGE_VAL));
    auto lo = hi - 1;
    const double w = (t - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  };
  RadialModel m;
  m.name = "table";
  m.a_of_t = [delta](double t) { return log1p_exp2(t) + delta(t); };
  m.log_b_of_t = fs_log_b;
  for (const auto& p : pts) m.breakpoints.push_back(p.first);
  m.n_max = n_max;
  return m;
}

RadialModel parse_model(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("model JSON: ") + e.what());
  }
  const int n_max = j.value("nmax", 20);
  if (!j.contains("green")) throw Error(Errc::Parse, "model JSON lacks \"green\"");
  const auto& g = j["green"];
  if (g.is_string()) {
    if (g.get<std::string>() != "fubini-study") throw Error(Errc::Parse, "unknown green model " + g.dump());
    return fubini_study(n_max);
  }
  if (g.is_object() && g.contains("table") && g["table"].is_array()) {
    std::vector<std::pair<double, double>> table;
    for (const auto& row : g["table"]) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        throw Error(Errc::Parse, "table rows must be [r, a(r)]");
      }
      table.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return table_model(table, n_max);
  }
  throw Error(Errc::Parse, "green must be \"fubini-study\" or {\"table\": [...]}");
}

double radial_integral(const std::function<double(double)>& log_integrand, const std::vector<double>& breakpoints,
                       double rel_tol) {
  // Locate the peak so the integrand can be rescaled away from under/overflow.
  double peak_t = 0, peak = -HUGE_VAL;
  for (double t = -kLogRadiusCap; t <= kLogRadiusCap; t += 0.25) {
    const double v = log_integrand(t);
    if (v > peak) {
      peak = v;
      peak_t = t;
    }
  }
  if (!std::isfinite(peak)) throw Error(Errc::QuadratureFailure, "integrand is not finite");
  auto f = [&](double t) { return std::exp(log_integrand(t) - peak); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (double L = 4.0; L <= 256.0; L *= 2) {
    // Unit-length pieces plus the model's breakpoints keep every piece smooth and short.
    std::vector<double> cuts;
    for (double c = peak_t - L; c < peak_t + L; c += 0.5) cuts.push_back(c);
    for (double b : breakpoints) {
      if (b > peak_t - L && b < peak_t + L) cuts.push_back(b);
    }
    cuts.push_back(peak_t + L);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double val = 0, err = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double e = 0;
      val += GK::integrate(f, cuts[i], cuts[i + 1], 4, 1e-13, &e);
      err += e;
    }
    if (val > 0 && std::fabs(val - prev) <= rel_tol * val && err <= rel_tol * val) return val * std::exp(peak);
    prev = val;
  }
  throw Error(Errc::QuadratureFailure, "radial integral did not stabilize");
}

double total_mass(const RadialModel& model) {
  // Omega = b r dr dtheta; in t, r dr = r^2 dt.
  return radial_integral([&](double t) { return std::log(2 * std::numbers::pi) + 2 * t + model.log_b_of_t(t); },
                         model.breakpoints);
}

GramSystem gram_matrix(const RadialModel& model, int n, double rel_tol) {
  if (n < 0 || n > model.n_max) throw Error(Errc::InvalidArgument, "degree outside [0, nmax]");
  GramSystem G;
  G.n = n;
  G.gram = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) G.sigma.push_back(k);
  // The angular factor int e^{i(k-l)theta} dtheta / 2pi, by the trapezoid rule on
  // 2(n+1) nodes, which is exact for |k - l| <= n.
  const int nodes = 2 * (n + 1);
  auto angular = [&](int d) {
    double re = 0;
    for (int j = 0; j < nodes; ++j) re += std::cos(2 * std::numbers::pi * d * j / nodes);
    return re / nodes;
  };
  std::vector<double> radial(2 * n + 1);
  for (int s = 0; s <= 2 * n; ++s) {
    radial[s] = radial_integral([&](double t) {
      return std::log(2 * std::numbers::pi) + (s + 2) * t - n * model.a_of_t(t) + model.log_b_of_t(t);
    }, model.breakpoints, rel_tol);
  }
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) {
      const double ang = k == l ? 1.0 : angular(k - l);
      G.gram(k, l) = ang * radial[k + l];
    }
  }
  return G;
}

std::vector<double> sin_theta_profile(const GramSystem& G) {
  const Eigen::Index m = G.gram.rows();
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  auto log_det = [](const Eigen::MatrixXd& M, double& value) {
    if (M.rows() == 0) {
      value = 0;
      return true;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::MatrixXd& L = llt.matrixLLT();
    value = 0;
    double hadamard = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      value += 2 * std::log(L(i, i));
      hadamard += std::log(M(i, i));
    }
    // Treat numerically singular matrices as singular.
    return value - hadamard > std::log(1e-14);
  };
  double full = 0;
  if (!log_det(G.gram, full)) return out;
  for (Eigen::Index a = 0; a < m; ++a) {
    Eigen::MatrixXd rest(m - 1, m - 1);
    for (Eigen::Index i = 0, ri = 0; i < m; ++i) {
      if (i == a) continue;
      for (Eigen::Index j = 0, rj = 0; j < m; ++j) {
        if (j == a) continue;
        rest(ri, rj++) = G.gram(i, j);
      }
      ++ri;
    }
    double partial = 0;
    log_det(rest, partial);
    const double log_sin = 0.5 * (full - partial - std::log(G.gram(a, a)));
    out[static_cast<std::size_t>(a)] = std::min(1.0, std::exp(log_sin));
  }
  return out;
}

WellposedReport wellposed_report(const std::vector<GramSystem>& grams, double tol) {
  WellposedReport r;
  r.label = "finite-n evidence over the window; not a verification of the limit conditions";
  r.condition1 = r.condition2 = true;
  for (const auto& G : grams) {
    WellposedRow row;
    row.n = G.n;
    row.basis = G.gram.rows() > 0 && Eigen::LLT<Eigen::MatrixXd>(G.gram).info() == Eigen::Success;
    auto sins = sin_theta_profile(G);
    row.min_sin = sins.empty() ? 0.0 : *std::min_element(sins.begin(), sins.end());
    if (row.min_sin == 0.0) row.basis = false;
    row.root = G.n == 0 ? row.min_sin : std::pow(row.min_sin, 1.0 / G.n);
    r.condition1 = r.condition1 && row.basis;
    r.condition2 = r.condition2 && row.quotient_index == 1;
    r.rows.push_back(row);
  }
  double running = HUGE_VAL;
  for (auto it = r.rows.rbegin(); it != r.rows.rend(); ++it) {
    if (it->n > 0) running = std::min(running, it->root);
    it->running_inf = running;
  }
  // The liminf is estimated by the infimum over the later half of the window.
  if (!r.rows.empty()) {
    r.liminf_estimate = r.rows[r.rows.size() / 2].running_inf;
    if (!std::isfinite(r.liminf_estimate)) r.liminf_estimate = r.rows.front().min_sin;
  }
  r.condition3 = r.condition1 && r.liminf_estimate >= 1.0 - tol;
  return r;
}

WellposedReport wellposed_report(const RadialModel& model, int n_lo, int n_hi, double tol, double quad_tol) {
  std::vector<GramSystem> grams;
  for (int n = n_lo; n <= n_hi; ++n) grams.push_back(gram_matrix(model, n, quad_tol));
  return wellposed_report(grams, tol);
}

FeketeResult fekete_limit(const std::vector<double>& seq, double tol) {
  FeketeResult out;
  out.limit = HUGE_VAL;
  const int N = static_cast<int>(seq.size());
  for (int n = 1; n <= N; ++n) {
    const double root = std::pow(seq[n - 1], 1.0 / n);
    if (root < out.limit) {
      out.limit = root;
      out.argmin = n;
    }
    for (int k = 1; k <= n && n + k <= N; ++k) {
      if (seq[n + k - 1] > seq[n - 1] * seq[k - 1] * (1 + tol)) out.violations.emplace_back(k, n);
    }
  }
  std::sort(out.violations.begin(), out.violations.end());
  return out;
}

double monomial_sup_norm(const RadialModel& model, int n, double x) {
  auto neg = [&](double t) { return -log_weighted(model, n, x, t); };
  double best_t = -kLogRadiusCap, best = neg(best_t);
  constexpr double step = 0.05;
  for (double t = -kLogRadiusCap; t <= kLogRadiusCap + 1e-12; t += step) {
    const double v = neg(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  const double lo = std::max(-kLogRadiusCap, best_t - step), hi = std::min(kLogRadiusCap, best_t + step);
  auto refined = boost::math::tools::brent_find_minima(neg, lo, hi, std::numeric_limits<double>::digits);
  return std::exp(-std::min(best, refined.second));
}

MonomialScan smallest_monomial_scan(const RadialModel& model, int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative degree");
  MonomialScan out;
  out.integer_norm = HUGE_VAL;
  for (int k = 0; k <= n; ++k) {
    const double v = monomial_sup_norm(model, n, k);
    if (v < out.integer_norm) {
      out.integer_norm = v;
      out.k_star = k;
    }
  }
  if (n == 0) {
    out.x_star = 0;
    out.real_norm = out.integer_norm;
    return out;
  }
  // log of the sup norm is convex in x, being a supremum of affine functions.
  auto f = [&](double x) { return std::log(monomial_sup_norm(model, n, x)); };
  auto res = boost::math::tools::brent_find_minima(f, 0.0, static_cast<double>(n), 40);
  out.x_star = res.first;
  out.real_norm = std::exp(res.second);
  if (out.real_norm > out.integer_norm) {
    out.real_norm = out.integer_norm;
    out.x_star = out.k_star;
  }
  return out;
}

}  // namespace arakelov
