#include "arakelov/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arakelov/error.hpp"

namespace arakelov {

namespace {

Eigen::MatrixXd metric_or_identity(const GramInput& G, Eigen::Index dim) {
  if (G.metric.size() == 0) return Eigen::MatrixXd::Identity(dim, dim);
  if (G.metric.rows() != dim || G.metric.cols() != dim) throw Error(Errc::InvalidArgument, "metric size mismatch");
  if ((G.metric - G.metric.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + G.metric.cwiseAbs().maxCoeff())) {
    throw Error(Errc::InvalidArgument, "metric is not symmetric");
  }
  if (G.metric.llt().info() != Eigen::Success) throw Error(Errc::InvalidArgument, "metric is not positive definite");
  return G.metric;
}

Eigen::MatrixXd gram(const std::vector<Eigen::VectorXd>& vs, const Eigen::MatrixXd& metric) {
  const auto r = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd out(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i; j < r; ++j) out(i, j) = out(j, i) = vs[i].dot(metric * vs[j]);
  }
  return out;
}

double vol_of(const std::vector<Eigen::VectorXd>& vs, const Eigen::MatrixXd& metric) {
  if (vs.empty()) return 1.0;
  double d = gram(vs, metric).partialPivLu().determinant();
  return std::sqrt(std::max(0.0, d));
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& A) {
  std::vector<std::size_t> pivots;
  if (A.empty()) return pivots;
  const std::size_t rows = A.size(), cols = A[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    Rational inv = 1 / A[r][c];
    for (auto& v : A[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c];
      for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RatVector mat_vec(const RatMatrix& M, const RatVector& x) {
  RatVector out(M.size(), Rational(0));
  for (std::size_t i = 0; i < M.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += M[i][j] * x[j];
  }
  return out;
}

void check_square(const RatMatrix& M, std::size_t n) {
  if (M.size() != n) throw Error(Errc::InvalidArgument, "matrix size mismatch");
  for (const auto& row : M) {
    if (row.size() != n) throw Error(Errc::InvalidArgument, "matrix is not square");
  }
}

}  // namespace

double gramian_vol(const GramInput& G) {
  if (G.vectors.empty()) return 1.0;
  const auto dim = G.vectors[0].size();
  for (const auto& v : G.vectors) {
    if (v.size() != dim) throw Error(Errc::InvalidArgument, "vectors of different dimension");
  }
  return vol_of(G.vectors, metric_or_identity(G, dim));
}

Rational det_exact(RatMatrix M) {
  const std::size_t n = M.size();
  if (n == 0) return 1;
  check_square(M, n);
  // Bareiss: every division below is exact.
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && M[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(M[p], M[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

Rational gram_det_exact(const RatMatrix& vectors, const RatMatrix& metric) {
  const std::size_t r = vectors.size();
  if (r == 0) return 1;
  const std::size_t dim = vectors[0].size();
  RatMatrix G(r, RatVector(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    RatVector mv = metric.empty() ? vectors[i] : mat_vec(metric, vectors[i]);
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < dim; ++k) G[j][i] += vectors[j][k] * mv[k];
    }
  }
  return det_exact(G);
}

VolRatio vol_ratio(const GramInput& G, std::size_t index) {
  if (index >= G.vectors.size()) throw Error(Errc::InvalidArgument, "index out of range");
  const auto dim = G.vectors[0].size();
  const Eigen::MatrixXd metric = metric_or_identity(G, dim);
  const Eigen::VectorXd& x = G.vectors[index];
  std::vector<Eigen::VectorXd> rest;
  for (std::size_t i = 0; i < G.vectors.size(); ++i) {
    if (i != index) rest.push_back(G.vectors[i]);
  }
  VolRatio out;
  out.vol = vol_of(G.vectors, metric);
  out.vol_rest = vol_of(rest, metric);
  // Distance to the span of the rest, by orthogonal projection in the metric.
  Eigen::VectorXd residual = x;
  if (!rest.empty()) {
    Eigen::MatrixXd B(dim, static_cast<Eigen::Index>(rest.size()));
    for (std::size_t j = 0; j < rest.size(); ++j) B.col(static_cast<Eigen::Index>(j)) = rest[j];
    Eigen::MatrixXd L = metric.llt().matrixU();  // metric = L^T L
    Eigen::MatrixXd LB = L * B;
    Eigen::VectorXd Lx = L * x;
    Eigen::VectorXd coef = LB.completeOrthogonalDecomposition().solve(Lx);
    residual = x - B * coef;
  }
  out.h = std::sqrt(std::max(0.0, residual.dot(metric * residual)));
  const double xnorm = std::sqrt(x.dot(metric * x));
  if (xnorm == 0.0) throw Error(Errc::DegenerateForSin, "distinguished vector is zero");
  if (out.vol_rest <= 1e-14 * std::pow(1.0 + xnorm, static_cast<double>(rest.size()))) {
    throw Error(Errc::DegenerateForSin, "remaining vectors are dependent");
  }
  out.sin_theta = out.vol / (xnorm * out.vol_rest);
  return out;
}

NsdCheck nsd_kernel_check(const Eigen::MatrixXd& Q, const Eigen::VectorXd& x, double tol) {
  if (Q.rows() != Q.cols() || Q.rows() != x.size()) throw Error(Errc::InvalidArgument, "size mismatch");
  const double scale = 1.0 + Q.cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, Eigen::EigenvaluesOnly);
  if (Q.rows() > 0 && es.eigenvalues().maxCoeff() > tol * scale) {
    throw Error(Errc::NotNSD, "matrix has a positive eigenvalue");
  }
  const double xx = 1.0 + x.squaredNorm();
  NsdCheck out;
  out.isotropic = std::fabs(x.dot(Q * x)) <= tol * scale * xx;
  out.in_kernel = (Q * x).norm() <= std::sqrt(tol) * scale * std::sqrt(xx);
  if (out.isotropic != out.in_kernel) {
    throw Error(Errc::InvalidArgument, "isotropy and kernel membership disagree beyond tolerance");
  }
  return out;
}

std::string to_string(ZariskiKind kind) {
  switch (kind) {
    case ZariskiKind::NegDefinite: return "NEG_DEFINITE";
    case ZariskiKind::NegSemidefiniteKernelE: return "NEG_SEMIDEFINITE_KERNEL_e";
    case ZariskiKind::HypothesesViolated: return "HYPOTHESES_VIOLATED";
  }
  return "?";
}

double zariski_identity(const Eigen::MatrixXd& Q, const Eigen::VectorXd& a, const Eigen::VectorXd& y) {
  const Eigen::Index n = Q.rows();
  const Eigen::VectorXd Qe = Q * a;  // Q(e_i, e)
  double out = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double zi = y(i) / a(i);
    out += zi * zi * a(i) * Qe(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d = zi - y(j) / a(j);
      out -= d * d * a(i) * a(j) * Q(i, j);
    }
  }
  return out;
}

ZariskiResult zariski_classify(const Eigen::MatrixXd& Q, const Eigen::VectorXd& a, double tol) {
  ZariskiResult out;
  const Eigen::Index n = Q.rows();
  if (Q.cols() != n || a.size() != n || n == 0) {
    out.detail = "size mismatch";
    return out;
  }
  const double scale = 1.0 + Q.cwiseAbs().maxCoeff() * (1.0 + a.cwiseAbs().maxCoeff());
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    out.detail = "Q is not symmetric";
    return out;
  }
  if ((a.array() <= 0).any()) {
    out.detail = "coefficients a_i must be positive";
    return out;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && Q(i, j) < -tol * scale) {
        out.detail = "off-diagonal sign: Q(e_" + std::to_string(i + 1) + ", e_" + std::to_string(j + 1) + ") < 0";
        return out;
      }
    }
  }
  const Eigen::VectorXd Qe = Q * a;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (Qe(i) > tol * scale) {
      out.detail = "Q(e, e_" + std::to_string(i + 1) + ") > 0";
      return out;
    }
  }
  // Connectivity of S = {(i, j) : Q(e_i, e_j) > 0}.
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (Q(i, j) > tol * scale) parent[find(i)] = find(j);
    }
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (find(i) != find(0)) {
      out.detail = "graph S is not connected";
      return out;
    }
  }
  // By the identity, Q(x,x) = 0 forces all z_i equal along S, hence x in span(e),
  // and then every term z^2 Q(a_i e_i, e) must vanish.
  bool strict = (Qe.array() < -tol * scale).any();
  out.kind = strict ? ZariskiKind::NegDefinite : ZariskiKind::NegSemidefiniteKernelE;
  if (!strict) out.kernel = a;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  const auto& ev = es.eigenvalues();
  out.max_eigenvalue = ev.maxCoeff();
  const double etol = 1e-7 * scale;
  if (strict) {
    out.eigen_agrees = out.max_eigenvalue < -etol;
  } else {
    int near_zero = 0;
    for (Eigen::Index i = 0; i < n; ++i) near_zero += std::fabs(ev(i)) <= etol ? 1 : 0;
    Eigen::VectorXd v = es.eigenvectors().col(n - 1);
    double cosang = std::fabs(v.dot(a)) / (v.norm() * a.norm());
    out.eigen_agrees = out.max_eigenvalue <= etol && near_zero == 1 && std::fabs(cosang - 1) < 1e-6;
  }
  return out;
}

FiberKernel fiber_kernel(const RatMatrix& M, const RatVector& a) {
  const std::size_t n = a.size();
  check_square(M, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (M[i][j] != M[j][i]) throw Error(Errc::FiberRelationViolated, "intersection matrix is not symmetric");
    }
  }
  for (const auto& v : mat_vec(M, a)) {
    if (v != 0) throw Error(Errc::FiberRelationViolated, "M a != 0");
  }
  RatMatrix R = M;
  auto pivots = rref(R);
  FiberKernel out;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    RatVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -R[r][f];
    out.kernel_basis.push_back(v);
  }
  if (out.kernel_basis.size() != 1) {
    throw Error(Errc::FiberRelationViolated, "kernel has dimension " + std::to_string(out.kernel_basis.size()));
  }
  // Normalize the kernel vector to a.
  const RatVector& k = out.kernel_basis[0];
  std::size_t i0 = 0;
  while (a[i0] == 0) ++i0;
  Rational ratio = k[i0] / a[i0];
  for (std::size_t i = 0; i < n; ++i) {
    if (k[i] != ratio * a[i]) throw Error(Errc::FiberRelationViolated, "kernel is not spanned by a");
  }
  out.kernel_basis[0] = a;
  out.image_normal = a;
  return out;
}

RatVector solve_exact(const RatMatrix& M, const RatVector& y) {
  const std::size_t n = M.empty() ? 0 : M[0].size();
  RatMatrix aug = M;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(y[i]);
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) throw Error(Errc::NotSolvable, "system is inconsistent");
  RatVector x(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][n];
  return x;
}

RatVector balance_fiber(const RatMatrix& M, const RatVector& a, const RatVector& rhs) {
  const std::size_t n = a.size();
  check_square(M, n);
  if (rhs.size() != n) throw Error(Errc::InvalidArgument, "rhs size mismatch");
  Rational pairing = 0;
  for (std::size_t j = 0; j < n; ++j) pairing += a[j] * rhs[j];
  if (pairing != 0) throw Error(Errc::NotSolvable, "sum_j a_j rhs_j != 0");
  for (const auto& ai : a) {
    if (ai <= 0) throw Error(Errc::InvalidArgument, "multiplicities must be positive");
  }
  RatVector neg(n);
  for (std::size_t j = 0; j < n; ++j) neg[j] = -rhs[j];
  RatVector x = solve_exact(M, neg);
  // Least integer t with x_i + t a_i > 0 for all i.
  Integer t;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    Rational q = -x[i] / a[i];
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Integer need = fl + 1;
    if (first || need > t) t = need;
    first = false;
  }
  for (std::size_t i = 0; i < n; ++i) x[i] += Rational(t) * a[i];
  return x;
}

std::vector<RatVector> balance_fibers(const std::vector<FiberData>& fibers) {
  std::vector<RatVector> out;
  out.reserve(fibers.size());
  for (const auto& f : fibers) out.push_back(balance_fiber(f.M, f.a, f.rhs));
  return out;
}

}  // namespace arakelov
