#include "arakelov/capacity.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "arakelov/error.hpp"

namespace arakelov {

namespace {

// The FFTW planner is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_grid(const TorusFunction& f) {
  const int n = f.n;
  if (n <= 0 || (n & (n - 1)) != 0) throw Error(Errc::InvalidArgument, "grid size must be a power of two");
  if (f.samples.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(Errc::GridMismatch, "sample count does not match grid size");
  }
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in, int n, int sign) {
  std::vector<std::complex<double>> out(in.size());
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(n, n, src, dst, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<std::complex<double>> forward(const TorusFunction& f) {
  std::vector<std::complex<double>> in(f.samples.begin(), f.samples.end());
  return transform(in, f.n, FFTW_FORWARD);
}

// Signed frequency of DFT index i.
int freq(int i, int n) { return i < n / 2 ? i : i - n; }

double wave_sq(int i, int j, int n) {
  const double ky = freq(i, n), kx = freq(j, n);
  return 4.0 * std::numbers::pi * std::numbers::pi * (kx * kx + ky * ky);
}

}  // namespace

TorusFunction TorusFunction::sample(int n, const std::function<double(double, double)>& f) {
  TorusFunction out;
  out.n = n;
  out.samples.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.samples[static_cast<std::size_t>(i) * n + j] = f(double(j) / n, double(i) / n);
  }
  return out;
}

double TorusFunction::mean() const {
  double s = 0.0;
  for (double v : samples) s += v;
  return samples.empty() ? 0.0 : s / static_cast<double>(samples.size());
}

TorusFunction laplacian(const TorusFunction& f) {
  check_grid(f);
  const int n = f.n;
  auto hat = forward(f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hat[static_cast<std::size_t>(i) * n + j] *= -wave_sq(i, j, n);
  }
  auto back = transform(hat, n, FFTW_BACKWARD);
  TorusFunction out;
  out.n = n;
  out.samples.resize(back.size());
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t k = 0; k < back.size(); ++k) out.samples[k] = back[k].real() * scale;
  return out;
}

double pairing(const TorusFunction& f, const TorusFunction& g) {
  check_grid(f);
  check_grid(g);
  if (f.n != g.n) throw Error(Errc::GridMismatch, "grids differ in size");
  const TorusFunction lg = laplacian(g);
  double s = 0.0;
  for (std::size_t k = 0; k < f.samples.size(); ++k) s += f.samples[k] * lg.samples[k];
  const double n2 = static_cast<double>(f.n) * f.n;
  return s / (4.0 * std::numbers::pi * n2);
}

double pairing_spectral(const TorusFunction& f, const TorusFunction& g) {
  check_grid(f);
  check_grid(g);
  if (f.n != g.n) throw Error(Errc::GridMismatch, "grids differ in size");
  const int n = f.n;
  auto fh = forward(f), gh = forward(g);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      s += wave_sq(i, j, n) * (fh[k] * std::conj(gh[k])).real();
    }
  }
  const double n4 = std::pow(static_cast<double>(n), 4);
  return -s / (4.0 * std::numbers::pi * n4);
}

PairingReport pairing_properties_report(const std::vector<TorusFunction>& fs, double eps) {
  PairingReport r;
  r.samples = fs.size();
  r.max_self_pairing = fs.empty() ? 0.0 : -HUGE_VAL;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      r.max_symmetry_defect = std::max(r.max_symmetry_defect, std::fabs(pairing(fs[i], fs[j]) - pairing(fs[j], fs[i])));
    }
    const double self = pairing(fs[i], fs[i]);
    r.max_self_pairing = std::max(r.max_self_pairing, self);
    const double mu = fs[i].mean();
    double var = 0.0, dev = 0.0;
    for (double v : fs[i].samples) {
      var += (v - mu) * (v - mu);
      dev = std::max(dev, std::fabs(v - mu));
    }
    var /= static_cast<double>(fs[i].samples.size());
    const double bound = std::max(-self, 0.0) / std::numbers::pi;
    if (bound > 0) r.max_variance_ratio = std::max(r.max_variance_ratio, var / bound);
    if (self > -eps) {
      r.max_kernel_deviation = std::max(r.max_kernel_deviation, dev);
      if (var > eps / std::numbers::pi + 1e-15) ++r.kernel_violations;
    }
  }
  return r;
}

TorusFunction read_grid_csv(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  TorusFunction f;
  f.n = n;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        f.samples.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(Errc::Parse, "bad number '" + cell + "' in " + path);
      }
      ++cols;
    }
    if (cols != n) throw Error(Errc::GridMismatch, path + ": row " + std::to_string(rows + 1) + " has " + std::to_string(cols) + " entries");
    ++rows;
  }
  if (rows != n) throw Error(Errc::GridMismatch, path + ": expected " + std::to_string(n) + " rows, found " + std::to_string(rows));
  check_grid(f);
  return f;
}

}  // namespace arakelov
