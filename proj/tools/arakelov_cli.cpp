// Command-line front end. Every command prints one JSON report (or a plain
// table with --pretty) and re-checks its own certificate before exiting 0.
//
// Exit codes: 0 success, 1 parse error, 2 precondition violation,
// 3 undecided at the requested depth, 4 certificate re-check failed.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "arakelov/arithdiv.hpp"
#include "arakelov/capacity.hpp"
#include "arakelov/error.hpp"
#include "arakelov/linalg.hpp"
#include "arakelov/minkowski.hpp"
#include "arakelov/optimizer.hpp"
#include "arakelov/units.hpp"
#include "arakelov/wellposed.hpp"

using json = nlohmann::ordered_json;
using namespace arakelov;

namespace {

constexpr int kSchemaVersion = 1;

struct CertificateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool pretty = false;
  int threads = 1;
  std::string out;
  Tolerances tol;
};

// ---- input ------------------------------------------------------------------

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

// Strings are read as exact rationals or decimals; JSON numbers go through their
// shortest decimal spelling, so 0.5 is exactly 1/2.
Real real_of(const json& j) {
  if (j.is_string()) return Real::parse(j.get<std::string>());
  if (j.is_number()) return Real::parse(j.dump());
  throw Error(Errc::Parse, "expected a number or numeric string, got " + j.dump());
}

Rational exact_of(const json& j) {
  Real r = real_of(j);
  if (!r.is_exact()) throw Error(Errc::InvalidArgument, "exact rational required, got " + j.dump());
  return r.exact();
}

double double_of(const json& j) { return real_of(j).value(); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

QuadraticField field_from(const std::optional<long>& m, const std::string& path) {
  if (m) return QuadraticField::make(*m);
  if (path.empty()) throw Error(Errc::Parse, "a field is required: pass --m or --field");
  const json j = read_json_file(path);
  const json& mj = field(j, "m");
  if (!mj.is_number_integer()) throw Error(Errc::Parse, "\"m\" must be an integer");
  return QuadraticField::make(mj.get<long>());
}

FieldElement element_of(const json& j) { return {exact_of(field(j, "a")), exact_of(field(j, "b"))}; }

RRationalFunction function_of(const json& j) {
  RRationalFunction f;
  for (const auto& fac : field(j, "factors")) f.factors.push_back({element_of(fac), real_of(field(fac, "e"))});
  return f;
}

ArithmeticDivisor divisor_of(const QuadraticField& F, const json& j) {
  ArithmeticDivisor D;
  if (j.contains("coeffs")) {
    for (const auto& c : j.at("coeffs")) {
      const json& pj = field(c, "p");
      if (!pj.is_number_integer()) throw Error(Errc::Parse, "\"p\" must be an integer");
      PrimeIdeal P = prime_ideal(F, pj.get<long>(), c.value("index", 0));
      D.coeffs[P] = D.coeffs[P] + real_of(field(c, "c"));
    }
  }
  if (j.contains("green")) {
    const json& g = j.at("green");
    if (!g.is_array() || g.size() != 2) throw Error(Errc::Parse, "\"green\" must have one entry per embedding");
    D.green = {double_of(g[0]), double_of(g[1])};
  }
  check_conjugation_invariant(F, D.green);
  return D;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "bad number '" + item + "'");
    }
  }
  return out;
}

RatMatrix rat_matrix_of(const json& j) {
  RatMatrix M;
  for (const auto& row : j) {
    RatVector r;
    for (const auto& v : row) r.push_back(exact_of(v));
    M.push_back(r);
  }
  return M;
}

RatVector rat_vector_of(const json& j) {
  RatVector v;
  for (const auto& x : j) v.push_back(exact_of(x));
  return v;
}

Eigen::MatrixXd matrix_of(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) throw Error(Errc::Parse, "ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = double_of(j[i][k]);
  }
  return M;
}

Eigen::VectorXd vector_of(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = double_of(j[i]);
  return v;
}

bool all_exact(const json& j) {
  if (j.is_array()) {
    for (const auto& x : j) {
      if (!all_exact(x)) return false;
    }
    return true;
  }
  try {
    return real_of(j).is_exact();
  } catch (const Error&) {
    return false;
  }
}

// ---- output -----------------------------------------------------------------

json to_json(const Real& r) {
  if (r.is_exact()) return to_string(r.exact());
  return r.value();
}

json to_json(const FieldElement& x) { return {{"a", to_string(x.a)}, {"b", to_string(x.b)}}; }

json to_json(const PrimeIdeal& P) {
  return {{"p", P.p}, {"index", P.index}, {"kind", to_string(P.kind)}, {"norm", P.residue_norm}};
}

json to_json(const RRationalFunction& f) {
  json facs = json::array();
  for (const auto& fac : f.factors) {
    json e = to_json(fac.exponent);
    facs.push_back({{"a", to_string(fac.base.a)}, {"b", to_string(fac.base.b)}, {"e", e}});
  }
  return {{"factors", facs}};
}

json to_json(const FiniteDivisor& D) {
  json cs = json::array();
  for (const auto& [P, c] : D) cs.push_back({{"p", P.p}, {"index", P.index}, {"c", to_json(c)}});
  return cs;
}

json to_json(const ArithmeticDivisor& D) { return {{"coeffs", to_json(D.coeffs)}, {"green", {D.green[0], D.green[1]}}}; }

json to_json(const RatVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json field_summary(const QuadraticField& F) {
  return {{"m", F.m()}, {"disc", F.disc()}, {"r1", F.r1()}, {"r2", F.r2()}, {"omega", F.omega_descriptor()}};
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render(const json& report, bool pretty) {
  if (!pretty) return report.dump() + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CertificateFailure(what);
}

// ---- commands ---------------------------------------------------------------

json cmd_field(const QuadraticField& F) {
  json r = field_summary(F);
  auto ck = c_k(F);
  r["c_k"] = ck.value;
  auto U = unit_group(F);
  r["torsion_order"] = U.torsion_order;
  if (U.fundamental) {
    r["fundamental_unit"] = to_json(*U.fundamental);
    r["regulator"] = U.log_fundamental;
    require(F.norm(*U.fundamental) == 1 || F.norm(*U.fundamental) == -1, "fundamental unit has norm +-1");
  }
  return r;
}

json cmd_divisor(const QuadraticField& F, const ArithmeticDivisor& D, const std::optional<json>& fn, double tol) {
  json r{{"field", field_summary(F)}, {"divisor", to_json(D)}};
  r["deg_finite"] = deg_finite(D.coeffs);
  r["deg_arith"] = deg_arith(D);
  r["effective"] = is_effective(D, tol);
  if (fn) {
    RRationalFunction phi = function_of(*fn);
    ArithmeticDivisor pr = principal(F, phi);
    const double pdeg = deg_arith(pr);
    r["principal"] = to_json(pr);
    r["principal_deg_arith"] = pdeg;
    require(std::fabs(pdeg) < 1e-9, "product formula: deg_arith of a principal divisor vanishes");
    const bool member = gamma_member(F, phi, D.coeffs, tol);
    r["gamma_member"] = member;
    if (member) {
      r["sup_norm"] = sup_norm(F, phi, D, tol);
      r["gammahat_member"] = gammahat_member(F, phi, D, tol);
    }
  }
  return r;
}

json cmd_units_fundamental(const QuadraticField& F) {
  auto U = unit_group(F);
  json r{{"field", field_summary(F)}, {"torsion_order", U.torsion_order}};
  json tors = json::array();
  for (const auto& z : U.torsion) tors.push_back(to_json(z));
  r["torsion"] = tors;
  if (U.fundamental) {
    r["fundamental_unit"] = to_json(*U.fundamental);
    r["norm"] = to_string(F.norm(*U.fundamental));
    r["regulator"] = U.log_fundamental;
    const Rational n = F.norm(*U.fundamental);
    require(F.is_integral(*U.fundamental) && (n == 1 || n == -1), "fundamental unit is an integral unit");
  } else {
    r["fundamental_unit"] = nullptr;
  }
  return r;
}

json cmd_units_realize(const QuadraticField& F, const std::vector<double>& xi_list, double tol) {
  if (xi_list.size() != 2) throw Error(Errc::Parse, "--xi takes one value per embedding");
  Archimedean xi{xi_list[0], xi_list[1]};
  auto sol = dirichlet_realize(F, xi, tol);
  json r{{"field", field_summary(F)}};
  json terms = json::array();
  Archimedean rebuilt{0, 0};
  for (const auto& [u, a] : sol) {
    terms.push_back({{"unit", to_json(u)}, {"exponent", a}});
    auto la = log_abs_embed(F, u);
    rebuilt[0] += a * la[0];
    rebuilt[1] += a * la[1];
  }
  const double residual = std::max(std::fabs(rebuilt[0] - xi[0]), std::fabs(rebuilt[1] - xi[1]));
  r["terms"] = terms;
  r["residual"] = residual;
  require(residual < 1e-10 * (1 + std::fabs(xi[0]) + std::fabs(xi[1])), "realization residual");
  return r;
}

json cmd_classgroup(const QuadraticField& F, long disc_bound) {
  auto cg = class_group(F, disc_bound);
  json reps = json::array();
  for (const auto& D : cg.representatives) reps.push_back(to_json(D));
  require(static_cast<long>(cg.representatives.size()) == cg.h, "one representative per class");
  return {{"field", field_summary(F)}, {"h", cg.h}, {"representatives", reps}};
}

json cmd_theta(const QuadraticField& F) {
  auto theta = enumerate_theta(F);
  const double ck = c_k(F).value;
  json items = json::array();
  for (const auto& E : theta) {
    const double deg = deg_finite(E);
    require(deg <= ck + 1e-12, "Theta element within the Minkowski constant");
    items.push_back({{"coeffs", to_json(E)}, {"deg", deg}});
  }
  return {{"field", field_summary(F)}, {"c_k", ck}, {"count", theta.size()}, {"theta", items}};
}

json cmd_shortsec(const QuadraticField& F, const ArithmeticDivisor& D, double tol) {
  FieldElement x = short_section(F, D);
  ArithmeticDivisor E = div_add(D, principal(F, RRationalFunction::of(x)));
  require(is_effective(E, tol), "D + (x) is effective");
  return {{"field", field_summary(F)}, {"deg_arith", deg_arith(D)}, {"c_k", c_k(F).value}, {"section", to_json(x)},
          {"result", to_json(E)}};
}

json solution_json(const MinimaxSolution& s) {
  json a = json::array();
  for (double v : s.a_star) a.push_back(v);
  return {{"a_star", a},
          {"log_value", s.log_value},
          {"value", std::exp(s.log_value)},
          {"active_set", s.active_set},
          {"primal_residual", s.primal_residual},
          {"dual_residual", s.dual_residual},
          {"gap", s.gap},
          {"certified", s.certified},
          {"psi", to_json(s.psi)}};
}

void recheck_solution(const QuadraticField& F, const ArithmeticDivisor& D, const MinimaxSolution& s, const Tolerances& tol) {
  require(s.certified, "LP duality certificate");
  require(gamma_member(F, s.psi, D.coeffs, 1e-7), "D + (psi) is effective");
  const double direct = log_sup_norm_unchecked(F, s.psi, D.green);
  require(std::fabs(direct - s.log_value) <= 1e-7 + 10 * tol.lp_duality, "sup norm of psi matches the LP value");
}

json cmd_minimize(const QuadraticField& F, const ArithmeticDivisor& D, const json& gens_json, const Tolerances& tol) {
  const json& arr = gens_json.is_object() ? field(gens_json, "gens") : gens_json;
  if (!arr.is_array()) throw Error(Errc::Parse, "generators must be a list of functions");
  std::vector<RRationalFunction> gens;
  for (const auto& g : arr) gens.push_back(function_of(g));
  auto sol = minimize_sup(make_problem(F, D, gens), tol.lp_duality);
  recheck_solution(F, D, sol, tol);
  json r{{"field", field_summary(F)}};
  r.update(solution_json(sol));
  return r;
}

json pipeline_json(const QuadraticField& F, const ArithmeticDivisor& D, const PipelineResult& res, const Tolerances& tol) {
  recheck_solution(F, D, res.solution, tol);
  require(is_effective(div_add(D, principal(F, res.psi)), 1e-6), "D + (psi)^ is effective");
  json sigma = json::array();
  for (const auto& P : res.sigma) sigma.push_back(to_json(P));
  json secs = json::array();
  for (const auto& x : res.sections) secs.push_back(to_json(x));
  json r = solution_json(res.solution);
  r["sigma"] = sigma;
  r["sections"] = secs;
  r["scale"] = res.scale;
  return r;
}

json cmd_pipeline(const QuadraticField& F, const ArithmeticDivisor& D, const PipelineOptions& opts, const Tolerances& tol) {
  auto res = smallest_section_pipeline(F, D, opts);
  json r{{"field", field_summary(F)}, {"depth", opts.depth}};
  r.update(pipeline_json(F, D, res, tol));
  return r;
}

json cmd_decide(const QuadraticField& F, const ArithmeticDivisor& D, const PipelineOptions& opts, const Tolerances& tol) {
  auto d = decide_pseudoeffective(F, D, opts);
  json r{{"field", field_summary(F)}, {"degree", d.degree}};
  r["decision"] = d.pseudo_effective ? "PSEUDO_EFFECTIVE" : "NOT";
  if (d.witness) {
    // The witness lives in Gammahat of D itself: D + (psi)^ effective.
    require(is_effective(div_add(D, principal(F, d.witness->psi)), 1e-6), "witness makes D effective");
    r["witness"] = to_json(d.witness->psi);
    r["log_sup_norm"] = log_sup_norm_unchecked(F, d.witness->psi, D.green);
  } else {
    require(d.degree < -opts.tol, "negative degree");
  }
  return r;
}

json cmd_linalg_gram(const json& in) {
  const json& vs = field(in, "vectors");
  json r;
  GramInput G;
  for (const auto& v : vs) G.vectors.push_back(vector_of(v));
  if (in.contains("metric")) G.metric = matrix_of(in.at("metric"));
  r["vol"] = gramian_vol(G);
  if (all_exact(vs) && (!in.contains("metric") || all_exact(in.at("metric")))) {
    Rational det = gram_det_exact(rat_matrix_of(vs), in.contains("metric") ? rat_matrix_of(in.at("metric")) : RatMatrix{});
    r["gram_det_exact"] = to_string(det);
    require(std::fabs(std::sqrt(std::max(0.0, det.get_d())) - r["vol"].get<double>()) <= 1e-9 * (1 + det.get_d()),
            "exact and floating volumes agree");
  }
  if (in.contains("index")) {
    auto vr = vol_ratio(G, in.at("index").get<std::size_t>());
    r["h"] = vr.h;
    r["sin_theta"] = vr.sin_theta;
    r["vol_rest"] = vr.vol_rest;
    require(std::fabs(vr.vol - vr.vol_rest * vr.h) <= 1e-9 * (1 + vr.vol), "vol = vol_rest * h");
  }
  return r;
}

json cmd_linalg_zariski(const json& in, double tol) {
  auto z = zariski_classify(matrix_of(field(in, "q")), vector_of(field(in, "a")), tol);
  json r{{"kind", to_string(z.kind)}};
  if (z.kind == ZariskiKind::HypothesesViolated) {
    r["detail"] = z.detail;
    return r;
  }
  r["max_eigenvalue"] = z.max_eigenvalue;
  r["eigen_agrees"] = z.eigen_agrees;
  if (z.kernel.size()) r["kernel"] = to_json(z.kernel);
  require(z.eigen_agrees, "eigen-decomposition confirms the classification");
  return r;
}

json cmd_linalg_fiber(const json& in) {
  RatMatrix M = rat_matrix_of(field(in, "q"));
  auto k = fiber_kernel(M, rat_vector_of(field(in, "a")));
  json basis = json::array();
  for (const auto& v : k.kernel_basis) basis.push_back(to_json(v));
  return {{"kernel", basis}, {"image_normal", to_json(k.image_normal)}};
}

json cmd_linalg_balance(const json& in) {
  std::vector<FiberData> fibers;
  auto one = [](const json& f) { return FiberData{rat_matrix_of(field(f, "q")), rat_vector_of(field(f, "a")), rat_vector_of(field(f, "rhs"))}; };
  if (in.contains("fibers")) {
    for (const auto& f : in.at("fibers")) fibers.push_back(one(f));
  } else {
    fibers.push_back(one(in));
  }
  auto xs = balance_fibers(fibers);
  json out = json::array();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto& f = fibers[k];
    for (std::size_t i = 0; i < f.a.size(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < f.a.size(); ++j) s += f.M[i][j] * xs[k][j];
      require(s == -f.rhs[i], "M x = -rhs exactly");
      require(xs[k][i] > 0, "x is strictly positive");
    }
    out.push_back(to_json(xs[k]));
  }
  return {{"x", out}, {"residual", 0}};
}

json cmd_capacity_pair(int n, const std::string& fpath, const std::string& gpath) {
  auto f = read_grid_csv(fpath, n), g = read_grid_csv(gpath, n);
  const double v = pairing(f, g), vt = pairing(g, f), vs = pairing_spectral(f, g);
  const double scale = 1 + std::fabs(v);
  require(std::fabs(v - vt) < 1e-10 * scale, "symmetry I(f,g) = I(g,f)");
  require(std::fabs(v - vs) < 1e-9 * scale, "grid and spectral formulas agree");
  return {{"n", n}, {"value", v}, {"symmetry_defect", std::fabs(v - vt)}, {"spectral_value", vs}};
}

json cmd_wellposed_report(const RadialModel& m, int n, const Tolerances& tol) {
  require(std::fabs(total_mass(m) - 1) < 1e-10, "volume form has total mass 1");
  auto rep = wellposed_report(m, 0, n, 1e-9, tol.quadrature);
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back({{"n", row.n},
                    {"basis", row.basis},
                    {"quotient_index", row.quotient_index},
                    {"min_sin_theta", row.min_sin},
                    {"root", row.root},
                    {"running_inf", row.running_inf}});
  }
  return {{"model", m.name},
          {"label", rep.label},
          {"condition1_basis", rep.condition1},
          {"condition2_index", rep.condition2},
          {"condition3_volume_ratio", rep.condition3},
          {"liminf_estimate", rep.liminf_estimate},
          {"rows", rows}};
}

json cmd_wellposed_scan(const RadialModel& m, int n) {
  auto s = smallest_monomial_scan(m, n);
  require(s.real_norm <= s.integer_norm * (1 + 1e-12), "real-exponent optimum is at most the integer optimum");
  return {{"model", m.name}, {"n", n}, {"k_star", s.k_star}, {"integer_norm", s.integer_norm},
          {"x_star", s.x_star}, {"real_norm", s.real_norm}};
}

json cmd_wellposed_fekete(const RadialModel& m, int n) {
  std::vector<double> seq;
  for (int k = 1; k <= n; ++k) seq.push_back(smallest_monomial_scan(m, k).integer_norm);
  auto fr = fekete_limit(seq, 1e-9);
  json viol = json::array();
  for (const auto& [a, b] : fr.violations) viol.push_back({a, b});
  json vals = json::array();
  for (double v : seq) vals.push_back(v);
  return {{"model", m.name}, {"n", n}, {"limit", fr.limit}, {"argmin", fr.argmin}, {"violations", viol}, {"a_n", vals}};
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::Parse: return 1;
    case Errc::UndecidedAtDepth: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic divisors, Dirichlet units and Minkowski sections on quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("ARAKELOV_THREADS")) {
    try {
      g.threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed ARAKELOV_THREADS\n";
    }
  }
  app.add_flag("--pretty", g.pretty, "Print a plain table instead of JSON");
  app.add_option("--threads", g.threads, "Worker threads for the pipeline")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write the report to a file");
  app.add_option("--tol-effectivity", g.tol.effectivity)->check(CLI::PositiveNumber);
  app.add_option("--tol-lp", g.tol.lp_duality)->check(CLI::PositiveNumber);
  app.add_option("--tol-quadrature", g.tol.quadrature)->check(CLI::PositiveNumber);

  std::optional<long> m;
  std::string field_path, divisor_path, function_path, gens_path, input_path, xi_text, f_path, g_path, model_path;
  int depth = 8, grid_n = 256, degree_n = 20;
  long disc_bound = 500;

  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--m", m, "Squarefree integer m, K = Q(sqrt m)");
    sub->add_option("--field", field_path, "Field JSON {\"m\": ...}");
  };

  auto* field_cmd = app.add_subcommand("field", "Invariants of Q(sqrt m)");
  add_field(field_cmd);

  auto* divisor_cmd = app.add_subcommand("divisor", "Degree and effectivity of a divisor");
  add_field(divisor_cmd);
  divisor_cmd->add_option("--divisor", divisor_path)->required();
  divisor_cmd->add_option("--function", function_path, "Optional R-rational function");

  auto* units_cmd = app.add_subcommand("units", "Unit group and Dirichlet realization");
  units_cmd->require_subcommand(1);
  auto* units_fund = units_cmd->add_subcommand("fundamental", "Roots of unity and the fundamental unit");
  add_field(units_fund);
  auto* units_real = units_cmd->add_subcommand("realize", "Write xi as a combination of log|u|");
  add_field(units_real);
  units_real->add_option("--xi", xi_text, "Comma-separated xi_sigma")->required();

  auto* class_cmd = app.add_subcommand("classgroup", "Class number and representatives");
  add_field(class_cmd);
  class_cmd->add_option("--disc-bound", disc_bound);

  auto* theta_cmd = app.add_subcommand("theta", "Effective integral divisors of degree at most C_K");
  add_field(theta_cmd);

  auto* short_cmd = app.add_subcommand("shortsec", "Small section of a divisor of degree at least C_K");
  add_field(short_cmd);
  short_cmd->add_option("--divisor", divisor_path)->required();

  auto* min_cmd = app.add_subcommand("minimize", "Minimize the sup norm over real exponents");
  add_field(min_cmd);
  min_cmd->add_option("--divisor", divisor_path)->required();
  min_cmd->add_option("--gens", gens_path)->required();

  auto* pipe_cmd = app.add_subcommand("pipeline", "Smallest section of a degree-zero divisor");
  add_field(pipe_cmd);
  pipe_cmd->add_option("--divisor", divisor_path)->required();
  pipe_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);

  auto* decide_cmd = app.add_subcommand("decide", "Pseudo-effectivity with a witness");
  add_field(decide_cmd);
  decide_cmd->add_option("--divisor", divisor_path)->required();
  decide_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);

  auto* linalg_cmd = app.add_subcommand("linalg", "Gramians, Zariski's lemma and fibers");
  linalg_cmd->require_subcommand(1);
  std::map<std::string, CLI::App*> linalg_subs;
  for (const char* name : {"gram", "zariski", "fiber", "balance"}) {
    auto* s = linalg_cmd->add_subcommand(name);
    s->add_option("--input", input_path)->required();
    linalg_subs[name] = s;
  }

  auto* cap_cmd = app.add_subcommand("capacity", "Pairing on the flat torus");
  cap_cmd->require_subcommand(1);
  auto* cap_pair = cap_cmd->add_subcommand("pair", "I(f, g) for CSV grids");
  cap_pair->add_option("--n", grid_n)->check(CLI::PositiveNumber);
  cap_pair->add_option("--f", f_path)->required();
  cap_pair->add_option("--g", g_path)->required();

  auto* wp_cmd = app.add_subcommand("wellposed", "Monomial sections on P^1");
  wp_cmd->require_subcommand(1);
  std::map<std::string, CLI::App*> wp_subs;
  for (const char* name : {"report", "scan", "fekete"}) {
    auto* s = wp_cmd->add_subcommand(name);
    s->add_option("--model", model_path)->required();
    s->add_option("--n", degree_n)->check(CLI::NonNegativeNumber);
    wp_subs[name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  json report{{"schema_version", kSchemaVersion}};
  try {
    auto F = [&] { return field_from(m, field_path); };
    auto D = [&](const QuadraticField& K) { return divisor_of(K, read_json_file(divisor_path)); };
    PipelineOptions popts;
    popts.depth = depth;
    popts.threads = g.threads;
    popts.tol = g.tol.lp_duality;
    json body;
    std::string name;

    if (*field_cmd) {
      name = "field";
      body = cmd_field(F());
    } else if (*divisor_cmd) {
      name = "divisor";
      auto K = F();
      std::optional<json> fn;
      if (!function_path.empty()) fn = read_json_file(function_path);
      body = cmd_divisor(K, D(K), fn, g.tol.effectivity);
    } else if (*units_fund) {
      name = "units fundamental";
      body = cmd_units_fundamental(F());
    } else if (*units_real) {
      name = "units realize";
      body = cmd_units_realize(F(), parse_list(xi_text), g.tol.effectivity);
    } else if (*class_cmd) {
      name = "classgroup";
      body = cmd_classgroup(F(), disc_bound);
    } else if (*theta_cmd) {
      name = "theta";
      body = cmd_theta(F());
    } else if (*short_cmd) {
      name = "shortsec";
      auto K = F();
      body = cmd_shortsec(K, D(K), g.tol.effectivity);
    } else if (*min_cmd) {
      name = "minimize";
      auto K = F();
      body = cmd_minimize(K, D(K), read_json_file(gens_path), g.tol);
    } else if (*pipe_cmd) {
      name = "pipeline";
      auto K = F();
      body = cmd_pipeline(K, D(K), popts, g.tol);
    } else if (*decide_cmd) {
      name = "decide";
      auto K = F();
      body = cmd_decide(K, D(K), popts, g.tol);
    } else if (*linalg_cmd) {
      const json in = read_json_file(input_path);
      if (*linalg_subs["gram"]) {
        name = "linalg gram";
        body = cmd_linalg_gram(in);
      } else if (*linalg_subs["zariski"]) {
        name = "linalg zariski";
        body = cmd_linalg_zariski(in, g.tol.effectivity);
      } else if (*linalg_subs["fiber"]) {
        name = "linalg fiber";
        body = cmd_linalg_fiber(in);
      } else {
        name = "linalg balance";
        body = cmd_linalg_balance(in);
      }
    } else if (*cap_pair) {
      name = "capacity pair";
      body = cmd_capacity_pair(grid_n, f_path, g_path);
    } else if (*wp_cmd) {
      std::ifstream in(model_path);
      if (!in) throw Error(Errc::InvalidArgument, "cannot open " + model_path);
      std::stringstream text;
      text << in.rdbuf();
      RadialModel model = parse_model(text.str());
      if (degree_n > model.n_max) model.n_max = degree_n;
      if (*wp_subs["report"]) {
        name = "wellposed report";
        body = cmd_wellposed_report(model, degree_n, g.tol);
      } else if (*wp_subs["scan"]) {
        name = "wellposed scan";
        body = cmd_wellposed_scan(model, degree_n);
      } else {
        name = "wellposed fekete";
        body = cmd_wellposed_fekete(model, degree_n);
      }
    }
    report["command"] = name;
    report.update(body);
  } catch (const Error& e) {
    report["error"] = std::string(errc_name(e.code()));
    report["message"] = e.what();
    std::cout << render(report, g.pretty);
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const CertificateFailure& e) {
    report["error"] = "CertificateFailure";
    report["message"] = e.what();
    std::cout << render(report, g.pretty);
    std::cerr << "certificate re-check failed: " << e.what() << "\n";
    return 4;
  }

  const std::string text = render(report, g.pretty);
  if (!g.out.empty()) {
    std::ofstream out(g.out);
    if (!out) {
      std::cerr << "cannot write " << g.out << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return 0;
}
