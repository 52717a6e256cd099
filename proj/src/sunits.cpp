#include "arakelov/sunits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "arakelov/error.hpp"

namespace arakelov {

std::vector<std::vector<long>> hnf_rows(std::vector<std::vector<long>> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    // Euclid on column col among rows r.. until one nonzero entry remains.
    for (;;) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][col] != 0 && (piv == rows.size() || std::labs(rows[i][col]) < std::labs(rows[piv][col]))) piv = i;
      }
      if (piv == rows.size()) break;
      std::swap(rows[r], rows[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        long q = rows[i][col] / rows[r][col];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0) {
      for (auto& v : rows[r]) v = -v;
    }
    for (std::size_t i = 0; i < r; ++i) {
      long q = rows[i][col] / rows[r][col];
      if (rows[i][col] - q * rows[r][col] < 0) --q;
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

SUnitGroup s_unit_group(const QuadraticField& F, std::vector<PrimeIdeal> sigma, long disc_bound) {
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  SUnitGroup S;
  S.sigma = sigma;
  S.units = unit_group(F);
  for (const auto& z : S.units.torsion) {
    FieldElement y = z;
    int order = 1;
    while (!(y == FieldElement::from_int(1))) {
      y = F.mul(y, z);
      ++order;
    }
    if (order == S.units.torsion_order) {
      S.generators.push_back(z);
      break;
    }
  }
  if (S.units.fundamental) S.generators.push_back(*S.units.fundamental);
  S.unit_count = S.generators.size();
  if (sigma.empty()) return S;

  const long h = class_group(F, disc_bound).h;
  const std::size_t k = sigma.size();
  double boxes = std::pow(static_cast<double>(h), static_cast<double>(k));
  if (boxes > 1e5) throw Error(Errc::BoundExceeded, "S-unit candidate box too large");
  // The image lattice contains h*Z^k; the residues {0..h-1}^k cover the rest.
  std::vector<std::vector<long>> candidates;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<long> v(k, 0);
    v[i] = h;
    candidates.push_back(v);
  }
  std::vector<long> v(k, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < k && ++v[i] == h) v[i++] = 0;
    if (i == k) break;
    FractionalIdeal I = unit_ideal();
    for (std::size_t j = 0; j < k; ++j) I = ideal_mul(F, I, ideal_pow(F, sigma[j].ideal, v[j]));
    if (principal_generator(F, I)) candidates.push_back(v);
  }
  S.ord_matrix = hnf_rows(candidates);
  for (const auto& row : S.ord_matrix) {
    FractionalIdeal I = unit_ideal();
    for (std::size_t j = 0; j < k; ++j) I = ideal_mul(F, I, ideal_pow(F, sigma[j].ideal, row[j]));
    auto g = principal_generator(F, I);
    if (!g) throw Error(Errc::InvalidArgument, "lattice vector lost principality");
    S.generators.push_back(*g);
  }
  return S;
}

}  // namespace arakelov
