#pragma once

// The pairing I(f, g) = int f dd^c g on the flat torus R^2 / Z^2, computed
// spectrally. Here dd^c g = (1/4pi) Laplacian(g) dx ^ dy.

#include <functional>
#include <string>
#include <vector>

namespace arakelov {

/// Samples f(j/N, i/N) stored row-major at index i*N + j (rows are y).
struct TorusFunction {
  int n = 0;
  std::vector<double> samples;

  static TorusFunction sample(int n, const std::function<double(double, double)>& f);
  double mean() const;
};

/// Spectral Laplacian on the N x N grid.
TorusFunction laplacian(const TorusFunction& f);

/// (1/4pi) (1/N^2) sum f * Laplacian(g). Throws GridMismatch.
double pairing(const TorusFunction& f, const TorusFunction& g);

/// The same pairing from Fourier coefficients: -(1/4pi) N^-4 sum |2pi k|^2 Re(fhat conj(ghat)).
double pairing_spectral(const TorusFunction& f, const TorusFunction& g);

struct PairingReport {
  std::size_t samples = 0;
  double max_symmetry_defect = 0.0;
  double max_self_pairing = 0.0;      // largest I(f,f); should be <= 0
  double max_variance_ratio = 0.0;    // max Var(f) / (-I(f,f)/pi); at most 1
  double max_kernel_deviation = 0.0;  // sup |f - mean| over f with I(f,f) > -eps
  std::size_t kernel_violations = 0;
};

/// Near-kernel diagnosis uses Var(f) <= -I(f,f)/pi, which holds because every
/// nonzero lattice frequency has |k| >= 1.
PairingReport pairing_properties_report(const std::vector<TorusFunction>& fs, double eps = 1e-12);

/// Row-major CSV grid; throws GridMismatch unless it is n x n.
TorusFunction read_grid_csv(const std::string& path, int n);

}  // namespace arakelov
