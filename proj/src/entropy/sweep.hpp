#pragma once

#include <vector>

#include "tailent/interval_map.hpp"

namespace tailent::detail {

inline double iterate_point(const IntervalMap& f, double y, int k) {
  for (int i = 0; i < k; ++i) y = f.eval(y);
  return y;
}

inline void orbit(const IntervalMap& f, double y, int n, double* out) {
  for (int i = 0; i < n; ++i) {
    out[i] = y;
    y = f.eval(y);
  }
}

// True when max_{i<n} |f^i y - o[i]| < eps.
inline bool within(const IntervalMap& f, const double* o, double y, int n, double eps) {
  for (int i = 0; i < n; ++i) {
    if (!(std::fabs(y - o[i]) < eps)) return false;
    if (i + 1 < n) y = f.eval(y);
  }
  return true;
}

// Greedy (n,eps) cover of [lo,hi] with continuous centres. Each f^i, i < n,
// must be monotone on [lo,hi]; then the sweep is optimal.
long long sweep_count(const IntervalMap& f, double lo, double hi, int n, double eps);

}  // namespace tailent::detail
