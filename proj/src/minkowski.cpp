#include "arakelov/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "arakelov/error.hpp"
#include "arakelov/units.hpp"

namespace arakelov {

namespace {

// Rational enclosure of pi, good to 20 digits.
const Rational& pi_lower() {
  static const Rational q("314159265358979323846/100000000000000000000");
  return q;
}
const Rational& pi_upper() {
  static const Rational q("314159265358979323847/100000000000000000000");
  return q;
}

Integer divisor_norm(const FiniteDivisor& E) {
  Integer n = 1;
  for (const auto& [P, c] : E) {
    Integer pn;
    mpz_pow_ui(pn.get_mpz_t(), Integer(P.residue_norm).get_mpz_t(), c.exact().get_num().get_ui());
    n *= pn;
  }
  return n;
}

bool divisor_less(const FiniteDivisor& x, const FiniteDivisor& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return l.second.value() > r.second.value();
  });
}

// max_sigma (log|x|_sigma - log R_sigma): how far x sits inside the box.
double relative_size(const QuadraticField& F, const FieldElement& x, const Archimedean& logR) {
  auto l = log_abs_embed(F, x);
  return std::max(l[0] - logR[0], l[1] - logR[1]);
}

// Deterministic order on candidates: most interior first, then larger coordinates.
void sort_candidates(const QuadraticField& F, std::vector<FieldElement>& pts, const Archimedean& logR) {
  std::vector<std::pair<double, FieldElement>> keyed;
  keyed.reserve(pts.size());
  for (auto& x : pts) keyed.emplace_back(relative_size(F, x, logR), x);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) {
    if (std::fabs(l.first - r.first) > 1e-12) return l.first < r.first;
    if (l.second.a != r.second.a) return l.second.a > r.second.a;
    return l.second.b > r.second.b;
  });
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = keyed[i].second;
}

FiniteDivisor negate(const FiniteDivisor& D) {
  FiniteDivisor out;
  for (const auto& [P, c] : D) out.emplace(P, -c);
  return out;
}

}  // namespace

MinkowskiConstant c_k(const QuadraticField& F) {
  MinkowskiConstant C;
  C.r2 = F.r2();
  C.abs_disc = std::labs(F.disc());
  C.value = C.r2 * std::log(2.0 / std::numbers::pi) + 0.5 * std::log(static_cast<double>(C.abs_disc));
  return C;
}

bool norm_within_minkowski(const QuadraticField& F, const Integer& N) {
  Integer d = std::labs(F.disc());
  if (F.r2() == 0) return N * N <= d;
  // pi^2 N^2 <= 4|d|; equality is impossible, so the enclosure always decides.
  Rational lhs_hi = pi_upper() * pi_upper() * Rational(N * N);
  Rational lhs_lo = pi_lower() * pi_lower() * Rational(N * N);
  Rational rhs(4 * d);
  if (lhs_hi <= rhs) return true;
  if (lhs_lo > rhs) return false;
  throw Error(Errc::InvalidArgument, "pi enclosure too coarse for this norm");
}

namespace {

// Exact positive definite rational form used for reduction: Tr(x^2) on real
// fields, N(x) on imaginary ones (both equal sum_sigma |x_sigma|^2 up to scale).
Rational reduction_form(const QuadraticField& F, const FieldElement& x) {
  return F.is_real() ? F.trace(F.mul(x, x)) : F.norm(x);
}

Rational reduction_inner(const QuadraticField& F, const FieldElement& x, const FieldElement& y) {
  return (reduction_form(F, x + y) - reduction_form(F, x) - reduction_form(F, y)) / 2;
}

Integer round_rational(const Rational& q) {
  Rational shifted = q + Rational(1, 2);
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return out;
}

// Lagrange-Gauss reduction of a rank-2 lattice basis, in exact arithmetic.
std::array<FieldElement, 2> lagrange_reduce(const QuadraticField& F, std::array<FieldElement, 2> v) {
  if (reduction_form(F, v[0]) > reduction_form(F, v[1])) std::swap(v[0], v[1]);
  for (;;) {
    Integer mu = round_rational(reduction_inner(F, v[0], v[1]) / reduction_form(F, v[0]));
    Rational q(mu);
    v[1] = v[1] - FieldElement{v[0].a * q, v[0].b * q};
    if (reduction_form(F, v[1]) >= reduction_form(F, v[0])) return v;
    std::swap(v[0], v[1]);
  }
}

}  // namespace

std::vector<FieldElement> lattice_points(const QuadraticField& F, const FractionalIdeal& I, const Archimedean& R,
                                         const SearchOptions& opts) {
  if (!(R[0] > 0 && R[1] > 0)) return {};
  if (!F.is_real() && std::fabs(R[0] - R[1]) > 1e-12 * std::max(R[0], R[1])) {
    throw Error(Errc::NotConjugationInvariant, "disk radii differ at conjugate embeddings");
  }
  using LD = long double;
  const auto w = F.omega_embeddings();
  const auto u = lagrange_reduce(F, ideal_basis(I));
  const LD slack = 1 + opts.rel_tol;
  const LD R0 = R[0] * slack, R1 = R[1] * slack;
  const Archimedean logR{std::log(R[0]), std::log(R[1])};

  // Real coordinates of the reduced basis: (x_0, x_1) for real fields,
  // (Re x_0, Im x_0) for imaginary ones.
  LD M[2][2];
  for (int j = 0; j < 2; ++j) {
    LD a = u[j].a.get_d(), b = u[j].b.get_d();
    if (F.is_real()) {
      M[0][j] = a + b * w[0].first;
      M[1][j] = a + b * w[1].first;
    } else {
      M[0][j] = a + b * w[0].first;
      M[1][j] = b * w[0].second;
    }
  }
  const LD det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  // Row of M^{-1} giving t: (-M[1][0], M[0][0]) / det.
  LD tmax;
  if (F.is_real()) {
    tmax = (std::fabs(M[1][0]) * R0 + std::fabs(M[0][0]) * R1) / std::fabs(det);
  } else {
    tmax = R0 * std::hypot(M[1][0], M[0][0]) / std::fabs(det);
  }
  const long T = static_cast<long>(std::floor(tmax * (1 + 1e-9L))) + 1;

  std::vector<FieldElement> out;
  long visited = 0;
  for (long t = -T; t <= T; ++t) {
    LD lo = -HUGE_VALL, hi = HUGE_VALL;
    if (F.is_real()) {
      const LD Rs[2] = {R0, R1};
      bool empty = false;
      for (int sg = 0; sg < 2; ++sg) {
        LD p = M[sg][0], q = t * M[sg][1];
        if (std::fabs(p) < 1e-300L) {
          if (std::fabs(q) > Rs[sg]) empty = true;
          continue;
        }
        LD e1 = (-Rs[sg] - q) / p, e2 = (Rs[sg] - q) / p;
        lo = std::max(lo, std::min(e1, e2));
        hi = std::min(hi, std::max(e1, e2));
      }
      if (empty) continue;
    } else {
      // |s p + t q|^2 <= R^2 with p, q the complex basis embeddings.
      LD pr = M[0][0], pi = M[1][0], qr = t * M[0][1], qi = t * M[1][1];
      LD pp = pr * pr + pi * pi;
      LD pq = pr * qr + pi * qi;
      LD disc = pq * pq - pp * (qr * qr + qi * qi - R0 * R0);
      if (disc < 0) continue;
      LD root = std::sqrt(disc);
      lo = (-pq - root) / pp;
      hi = (-pq + root) / pp;
    }
    if (lo > hi) continue;
    long s_lo = static_cast<long>(std::ceil(lo - 1e-9L * (1 + std::fabs(lo))));
    long s_hi = static_cast<long>(std::floor(hi + 1e-9L * (1 + std::fabs(hi))));
    for (long s = s_lo; s <= s_hi; ++s) {
      if (s == 0 && t == 0) continue;
      if (++visited > opts.max_points) throw Error(Errc::SearchExhausted, "lattice enumeration bound reached");
      FieldElement x{u[0].a * s + u[1].a * t, u[0].b * s + u[1].b * t};
      auto l = log_abs_embed(F, x);
      if (l[0] <= logR[0] + opts.rel_tol && l[1] <= logR[1] + opts.rel_tol) out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& x, const FieldElement& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return out;
}

bool is_integral_divisor(const FiniteDivisor& D) {
  return std::all_of(D.begin(), D.end(),
                     [](const auto& kv) { return kv.second.is_exact() && kv.second.exact().get_den() == 1; });
}

FractionalIdeal ideal_of(const QuadraticField& F, const FiniteDivisor& D) {
  if (!is_integral_divisor(D)) throw Error(Errc::InvalidArgument, "divisor coefficients must be exact integers");
  FractionalIdeal I = unit_ideal();
  for (const auto& [P, c] : D) I = ideal_mul(F, I, ideal_pow(F, P.ideal, c.exact().get_num().get_si()));
  return I;
}

FieldElement short_section(const QuadraticField& F, const ArithmeticDivisor& Dbar, const SearchOptions& opts) {
  check_conjugation_invariant(F, Dbar.green);
  if (!is_integral_divisor(Dbar.coeffs)) {
    throw Error(Errc::InvalidArgument, "short_section needs integer coefficients");
  }
  const double CK = c_k(F).value;
  Archimedean xi = Dbar.green;
  // Any point of a smaller box is still a section; shrinking to degree just
  // above C_K keeps the enumeration small when deg_arith is large.
  constexpr double kMargin = 1e-6;
  double excess = deg_arith(Dbar) - CK - kMargin;
  if (excess > 0) {
    xi[0] -= excess;
    xi[1] -= excess;
  }
  // Real fields: rebalance with a unit power so the box is roughly square.
  long k = 0;
  std::optional<FieldElement> eps;
  if (F.is_real()) {
    UnitGroup G = unit_group(F);
    eps = G.fundamental;
    k = std::lround((xi[0] - xi[1]) / (4 * G.log_fundamental));
    xi[0] -= 2 * k * G.log_fundamental;
    xi[1] += 2 * k * G.log_fundamental;
  }
  FractionalIdeal I = ideal_of(F, negate(Dbar.coeffs));
  Archimedean R{std::exp(xi[0] / 2), std::exp(xi[1] / 2)};
  auto pts = lattice_points(F, I, R, opts);
  sort_candidates(F, pts, {xi[0] / 2, xi[1] / 2});
  for (const auto& xp : pts) {
    FieldElement x = k != 0 ? F.mul(xp, F.pow(*eps, k)) : xp;
    if (is_effective(div_add(Dbar, principal(F, RRationalFunction::of(x))))) return x;
  }
  throw Error(Errc::SearchExhausted, "no section found in the Minkowski box");
}

std::vector<FiniteDivisor> enumerate_theta(const QuadraticField& F) {
  long nmax = 1;
  while (norm_within_minkowski(F, Integer(nmax + 1))) ++nmax;
  std::vector<PrimeIdeal> primes = primes_up_to_norm(F, nmax);
  std::vector<FiniteDivisor> out;
  FiniteDivisor current;
  auto dfs = [&](auto&& self, std::size_t start, long norm) -> void {
    out.push_back(current);
    for (std::size_t j = start; j < primes.size(); ++j) {
      if (norm * primes[j].residue_norm > nmax) continue;
      auto it = current.find(primes[j]);
      if (it == current.end()) {
        current.emplace(primes[j], Real(1L));
      } else {
        it->second += Real(1L);
      }
      self(self, j, norm * primes[j].residue_norm);
      it = current.find(primes[j]);
      if (it->second.exact() == 1) {
        current.erase(it);
      } else {
        it->second += Real(-1L);
      }
    }
  };
  dfs(dfs, 0, 1);
  std::stable_sort(out.begin(), out.end(), [](const FiniteDivisor& x, const FiniteDivisor& y) {
    Integer nx = divisor_norm(x), ny = divisor_norm(y);
    if (nx != ny) return nx < ny;
    return divisor_less(x, y);
  });
  return out;
}

std::pair<FieldElement, FiniteDivisor> reduce_to_theta(const QuadraticField& F, const FiniteDivisor& D,
                                                       const SearchOptions& opts) {
  if (!is_integral_divisor(D)) throw Error(Errc::InvalidArgument, "reduce_to_theta needs an integral divisor");
  // Green value 2(C_K - deg D)/[K:Q] on each embedding gives degree exactly C_K.
  const double g = c_k(F).value - deg_finite(D);
  FractionalIdeal I = ideal_of(F, negate(D));
  Archimedean R{std::exp(g / 2), std::exp(g / 2)};
  auto pts = lattice_points(F, I, R, opts);
  sort_candidates(F, pts, {g / 2, g / 2});
  for (const auto& x : pts) {
    FiniteDivisor E = finite_add(D, ord_divisor(F, RRationalFunction::of(x)));
    if (!is_effective(E)) continue;
    if (norm_within_minkowski(F, divisor_norm(E))) return {x, E};
  }
  throw Error(Errc::SearchExhausted, "no reduction into Theta found");
}

std::optional<FieldElement> principal_generator(const QuadraticField& F, const FractionalIdeal& I) {
  // Look for x = (A + B*omega)/den in I with |N(x)| = N(I). Writing B = t*c,
  // N(A + B*omega) = +-ac is a quadratic in A with discriminant B^2 d +- 4ac.
  const Integer n = I.a * I.c;
  const Integer d(F.disc());
  const long tr = F.trace_omega();
  double log_radius = 0.5 * log_abs(n);  // sqrt(N(I)) * den
  if (F.is_real()) log_radius += 0.5 * unit_group(F).log_fundamental;
  const double tmax = 2 * std::exp(log_radius) / (I.c.get_d() * std::sqrt(std::fabs(static_cast<double>(F.disc()))));
  const long T = static_cast<long>(std::floor(tmax * (1 + 1e-9))) + 1;
  const std::vector<int> signs = F.is_real() ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (long k = 0; k <= 2 * T; ++k) {
    long t = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    Integer B = Integer(t) * I.c;
    for (int sign : signs) {
      Integer disc = B * B * d + 4 * sign * n;
      if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
      Integer r;
      mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
      for (const Integer& num : {Integer(-B * tr + r), Integer(-B * tr - r)}) {
        if (!mpz_even_p(num.get_mpz_t())) continue;
        Integer A = num / 2;
        Integer rest = A - Integer(t) * I.b;
        if (!mpz_divisible_p(rest.get_mpz_t(), I.a.get_mpz_t())) continue;
        FieldElement x{Rational(A, I.den), Rational(B, I.den)};
        x.a.canonicalize();
        x.b.canonicalize();
        return x;
      }
    }
  }
  return std::nullopt;
}

ClassGroup class_group(const QuadraticField& F, long disc_bound) {
  if (std::labs(F.disc()) > disc_bound) {
    throw Error(Errc::BoundExceeded, "|disc| = " + std::to_string(std::labs(F.disc())) + " exceeds the bound " +
                                         std::to_string(disc_bound));
  }
  ClassGroup out;
  std::vector<FractionalIdeal> inverses;
  for (const auto& E : enumerate_theta(F)) {
    FractionalIdeal J = ideal_of(F, E);
    bool found = false;
    for (const auto& inv : inverses) {
      if (principal_generator(F, ideal_mul(F, J, inv))) {
        found = true;
        break;
      }
    }
    if (!found) {
      out.representatives.push_back(E);
      inverses.push_back(ideal_inverse(F, J));
    }
  }
  out.h = static_cast<long>(out.representatives.size());
  return out;
}

}  // namespace arakelov
