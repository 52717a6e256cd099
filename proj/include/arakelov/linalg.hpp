#pragma once

// Gramian volumes, the volume-ratio lemma, negative semidefinite kernels,
// Zariski's lemma for quadratic forms, and fiber intersection matrices.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "arakelov/numtheory.hpp"

namespace arakelov {

using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

struct GramInput {
  std::vector<Eigen::VectorXd> vectors;
  Eigen::MatrixXd metric;  // empty means the identity
};

/// sqrt det of the Gram matrix; 1 for the empty set.
double gramian_vol(const GramInput& G);

/// Exact Gram determinant by fraction-free (Bareiss) elimination.
Rational gram_det_exact(const RatMatrix& vectors, const RatMatrix& metric = {});
Rational det_exact(RatMatrix M);

struct VolRatio {
  double h = 0.0;          // distance from x to the span of the others
  double vol = 0.0;        // vol(Sigma)
  double vol_rest = 0.0;   // vol(Sigma minus x)
  double sin_theta = 0.0;  // vol / (|x| vol_rest)
};

/// x = G.vectors[index]. Throws DegenerateForSin if x = 0 or the rest is dependent.
VolRatio vol_ratio(const GramInput& G, std::size_t index);

struct NsdCheck {
  bool isotropic = false;  // x^T Q x = 0
  bool in_kernel = false;  // Q x = 0
};

/// Throws NotNSD when Q has a positive eigenvalue beyond tol.
NsdCheck nsd_kernel_check(const Eigen::MatrixXd& Q, const Eigen::VectorXd& x, double tol = 1e-9);

enum class ZariskiKind { NegDefinite, NegSemidefiniteKernelE, HypothesesViolated };
std::string to_string(ZariskiKind kind);

struct ZariskiResult {
  ZariskiKind kind = ZariskiKind::HypothesesViolated;
  std::string detail;
  Eigen::VectorXd kernel;       // a, when the kernel is spanned by e
  double max_eigenvalue = 0.0;
  bool eigen_agrees = false;    // eigen-decomposition confirms the classification
};

ZariskiResult zariski_classify(const Eigen::MatrixXd& Q, const Eigen::VectorXd& a, double tol = 1e-9);

/// Right-hand side of the identity
///   Q(x,x) = sum_i z_i^2 Q(a_i e_i, e) - sum_{i<j} (z_i - z_j)^2 a_i a_j Q(e_i, e_j),  z_i = y_i / a_i.
double zariski_identity(const Eigen::MatrixXd& Q, const Eigen::VectorXd& a, const Eigen::VectorXd& y);

struct FiberKernel {
  RatMatrix kernel_basis;  // exact null space of M
  RatVector image_normal;  // image = { y : image_normal . y = 0 }
};

/// Throws FiberRelationViolated unless M is symmetric with M a = 0 and the
/// kernel is exactly span(a).
FiberKernel fiber_kernel(const RatMatrix& M, const RatVector& a);

/// A solution of M x = y (free variables zero), or NotSolvable.
RatVector solve_exact(const RatMatrix& M, const RatVector& y);

/// Strictly positive x with M x = -rhs, shifted by the least integer multiple
/// of a. Throws NotSolvable when a . rhs != 0.
RatVector balance_fiber(const RatMatrix& M, const RatVector& a, const RatVector& rhs);

struct FiberData {
  RatMatrix M;    // deg_H(Gamma_i . Gamma_j)
  RatVector a;    // multiplicities
  RatVector rhs;  // deg_H(D . Gamma_j)
};

/// Fibers are independent; the output is one coefficient vector per fiber.
std::vector<RatVector> balance_fibers(const std::vector<FiberData>& fibers);

}  // namespace arakelov
