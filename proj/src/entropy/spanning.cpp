#include <algorithm>
#include <cmath>

#include "sweep.hpp"
#include "tailent/entropy.hpp"
#include "tailent/error.hpp"
#include "tailent/numeric.hpp"
#include "tailent/parallel.hpp"

namespace tailent {

namespace detail {

long long sweep_count(const IntervalMap& f, double lo, double hi, int n, double eps) {
  std::vector<double> oa(n), oc(n);
  long long count = 0;
  double a = lo;
  while (true) {
    ++count;
    orbit(f, a, n, oa.data());
    if (within(f, oa.data(), hi, n, eps)) return count;
    double l = a, h = hi;
    for (int it = 0; it < 64; ++it) {
      double mid = 0.5 * (l + h);
      if (mid <= l || mid >= h) break;
      if (within(f, oa.data(), mid, n, eps)) l = mid;
      else h = mid;
    }
    const double c = l;
    orbit(f, c, n, oc.data());
    if (within(f, oc.data(), hi, n, eps)) return count;
    l = c;
    h = hi;
    for (int it = 0; it < 64; ++it) {
      double mid = 0.5 * (l + h);
      if (mid <= l || mid >= h) break;
      if (within(f, oc.data(), mid, n, eps)) l = mid;
      else h = mid;
    }
    a = h;
  }
}

}  // namespace detail

std::string to_string(Bias b) { return b == Bias::kUpper ? "upper" : "lower"; }

std::vector<double> uniform_grid(std::size_t N) {
  std::vector<double> g(N);
  for (std::size_t i = 0; i < N; ++i) g[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
  return g;
}

namespace {

void check_args(int n, double eps) {
  if (n < 1) fail(ErrorKind::kArgument, "n must be at least 1");
  if (!(eps > 0)) fail(ErrorKind::kArgument, "eps must be positive");
}

double dist(const double* a, const double* b, int n) {
  double d = 0.0;
  for (int i = 0; i < n; ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace

SpanningCount spanning_count(const IntervalMap& f, int n, double eps, std::span<const double> points) {
  check_args(n, eps);
  if (points.empty()) fail(ErrorKind::kArgument, "empty point set");
  std::vector<double> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  double gap = std::max(pts.front(), 1.0 - pts.back()) * 2.0;
  for (std::size_t i = 1; i < pts.size(); ++i) gap = std::max(gap, pts[i] - pts[i - 1]);
  if (8.0 * gap > eps) fail(ErrorKind::kResolution, "point set has fewer than 8 points per eps");

  const std::size_t N = pts.size();
  std::vector<double> orb(N * n);
  std::vector<int> itin(N * std::max(1, n - 1));
  parallel_for(N, [&](std::size_t j) {
    double y = pts[j];
    for (int i = 0; i < n; ++i) {
      orb[j * n + i] = y;
      if (i + 1 < n) itin[j * (n - 1) + i] = f.branch_index(y);
      y = f.eval(y);
    }
  });
  auto row = [&](std::size_t j) { return orb.data() + j * n; };

  // Consecutive points with a common itinerary up to time n-2 share a lap of
  // f^{n-1}.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = 0;
  for (std::size_t j = 1; j <= N; ++j) {
    bool same = j < N && std::equal(itin.begin() + (j - 1) * (n - 1), itin.begin() + j * (n - 1),
                                    itin.begin() + j * (n - 1));
    if (n == 1) same = j < N;
    if (!same) {
      groups.emplace_back(start, j - 1);
      start = j;
    }
  }

  std::vector<long long> per_group(groups.size());
  parallel_for(groups.size(), [&](std::size_t gi) {
    auto [s, e] = groups[gi];
    std::vector<double> oc(n);
    long long count = 0;
    std::size_t idx = s;
    while (idx <= e) {
      ++count;
      const double* oa = row(idx);
      const double* oe = row(e);
      if (dist(oa, oe, n) < eps) break;
      double l = pts[idx], h = pts[e];
      for (int it = 0; it < 64; ++it) {
        double mid = 0.5 * (l + h);
        if (mid <= l || mid >= h) break;
        if (detail::within(f, oa, mid, n, eps)) l = mid;
        else h = mid;
      }
      detail::orbit(f, l, n, oc.data());
      // First point right of idx not covered by the centre.
      std::size_t lo = idx, hi = e + 1;
      while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (dist(oc.data(), row(mid), n) < eps) lo = mid;
        else hi = mid;
      }
      idx = hi;
    }
    per_group[gi] = count;
  });

  SpanningCount out;
  for (long long c : per_group) out.spanning += c;

  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < N; ++j) {
    auto first = std::lower_bound(chosen.begin(), chosen.end(), j,
                                  [&](std::size_t s, std::size_t) { return pts[s] <= pts[j] - eps; });
    bool ok = true;
    for (auto it = first; it != chosen.end() && ok; ++it)
      if (dist(row(*it), row(j), n) < eps) ok = false;
    if (ok) chosen.push_back(j);
  }
  out.separated = static_cast<long long>(chosen.size());
  return out;
}

SpanningCount spanning_count(const IntervalMap& f, int n, double eps, int grid_bits) {
  if (grid_bits < 1 || grid_bits > 26) fail(ErrorKind::kArgument, "grid_bits must lie in 1..26");
  auto g = uniform_grid(std::size_t{1} << grid_bits);
  return spanning_count(f, n, eps, g);
}

long long lap_sweep_count(const IntervalMap& f, int n, double eps) {
  check_args(n, eps);
  std::vector<Interval> laps = n == 1 ? std::vector<Interval>{{0.0, 1.0}} : laps_of_iterate(f, n - 1);
  std::vector<long long> c(laps.size());
  parallel_for(laps.size(), [&](std::size_t i) { c[i] = detail::sweep_count(f, laps[i].lo, laps[i].hi, n, eps); });
  long long total = 0;
  for (long long v : c) total += v;
  return total;
}

namespace {

void fit_estimate(EntropyEstimate& e, std::size_t from) {
  if (e.n.empty()) return;
  e.rate = std::log(e.counts.back()) / e.n.back();
  e.fit_from = e.n[std::min(from, e.n.size() - 1)];
  if (e.n.size() - from < 2) {
    e.slope = std::max(0.0, e.rate);
    return;
  }
  std::vector<double> x, y;
  for (std::size_t i = from; i < e.n.size(); ++i) {
    x.push_back(e.n[i]);
    y.push_back(std::log(e.counts[i]));
  }
  e.slope = std::max(0.0, fit_line(x, y).slope);
}

}  // namespace

EpsEntropyResult eps_entropy(const IntervalMap& f, double eps, const EntropyOptions& opts) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "eps_entropy needs 0 < eps < 1");
  if (opts.lap_n_max < 2 || opts.grid_n_max < 2) fail(ErrorKind::kArgument, "n range needs at least two values");
  EpsEntropyResult r;
  r.upper.method = "lap-sweep";
  r.upper.direction = Bias::kUpper;
  r.upper.eps = eps;
  for (int n = 1; n <= opts.lap_n_max; ++n) {
    r.upper.n.push_back(n);
    r.upper.counts.push_back(static_cast<double>(lap_sweep_count(f, n, eps)));
  }
  fit_estimate(r.upper, static_cast<std::size_t>(opts.lap_n_max / 2));

  r.lower.method = "grid-separated";
  r.lower.direction = Bias::kLower;
  r.lower.eps = eps;
  const auto grid = uniform_grid(std::size_t{1} << opts.grid_bits);
  const double cap = static_cast<double>(grid.size()) / 8.0;
  for (int n = 1; n <= opts.grid_n_max; ++n) {
    double c = static_cast<double>(spanning_count(f, n, eps, grid).separated);
    if (c >= cap) break;
    r.lower.n.push_back(n);
    r.lower.counts.push_back(c);
  }
  fit_estimate(r.lower, r.lower.n.size() / 2);
  return r;
}

}  // namespace tailent
