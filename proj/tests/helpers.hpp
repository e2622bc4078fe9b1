#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <corrdyn/types.hpp>

namespace testutil {

using corrdyn::Complex;

// Multiset match within tol: every point of a pairs with a distinct point of b.
inline bool same_set(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Complex& x : a) {
    std::size_t best = b.size();
    double best_d = tol;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double d = std::abs(x - b[i]);
      if (d <= best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == b.size()) return false;
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return true;
}

inline double min_dist(const std::vector<Complex>& cloud, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& w : cloud) d = std::min(d, std::abs(w - z));
  return d;
}

}  // namespace testutil
