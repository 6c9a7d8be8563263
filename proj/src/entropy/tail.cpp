#include <algorithm>
#include <cmath>

#include "sweep.hpp"
#include "tailent/entropy.hpp"
#include "tailent/error.hpp"
#include "tailent/numeric.hpp"
#include "tailent/parallel.hpp"

namespace tailent {

namespace {

using detail::iterate_point;

// counts[d][n-1] = r_n(f, B_n(f,x,eps), deltas[d]).
std::vector<std::vector<double>> ball_counts(const IntervalMap& f, double x, double eps,
                                             const std::vector<double>& deltas, int n_max, std::size_t piece_limit) {
  std::vector<double> ox(n_max);
  detail::orbit(f, x, n_max, ox.data());
  const auto& crit = f.critical_points();
  std::vector<std::vector<double>> counts(deltas.size(), std::vector<double>(n_max, 0.0));
  std::vector<Interval> pieces{{std::max(0.0, x - eps), std::min(1.0, x + eps)}};
  for (int n = 1; n <= n_max; ++n) {
    // Each piece meets every constraint i < n and f^{n-1} is monotone on it.
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      double c = 0.0;
      for (const auto& p : pieces) c += static_cast<double>(detail::sweep_count(f, p.lo, p.hi, n, deltas[d]));
      counts[d][n - 1] = c;
    }
    if (n == n_max) break;
    std::vector<Interval> next;
    for (const auto& p : pieces) {
      double vlo = iterate_point(f, p.lo, n - 1), vhi = iterate_point(f, p.hi, n - 1);
      const bool up = vhi >= vlo;
      std::vector<double> cuts;
      for (double c : crit) {
        if (!(c > std::min(vlo, vhi) && c < std::max(vlo, vhi))) continue;
        double l = p.lo, h = p.hi;
        for (int it = 0; it < 64; ++it) {
          double mid = 0.5 * (l + h);
          if (mid <= l || mid >= h) break;
          if ((iterate_point(f, mid, n - 1) < c) == up) l = mid;
          else h = mid;
        }
        cuts.push_back(0.5 * (l + h));
      }
      std::sort(cuts.begin(), cuts.end());
      double lo = p.lo;
      cuts.push_back(p.hi);
      for (double hi : cuts) {
        // Trim to |f^n y - f^n x| < eps; f^n is monotone on [lo, hi].
        auto g = [&](double y) { return iterate_point(f, y, n) - ox[n]; };
        double glo = g(lo), ghi = g(hi);
        const bool inc = ghi >= glo;
        double a = lo, b = hi;
        double ga = inc ? glo : ghi, gb = inc ? ghi : glo;  // values at the low-value and high-value ends
        if (ga >= eps || gb <= -eps) {
          lo = hi;
          continue;
        }
        // In value order: the end with value <= -eps moves inward, likewise >= eps.
        auto solve = [&](double target, bool from_low_value) {
          double l = lo, h = hi;
          for (int it = 0; it < 64; ++it) {
            double mid = 0.5 * (l + h);
            if (mid <= l || mid >= h) break;
            bool below = g(mid) < target;
            if (below == inc) l = mid;
            else h = mid;
          }
          return from_low_value == inc ? h : l;
        };
        if (ga <= -eps) {
          double y = solve(-eps, true);
          if (inc) a = y;
          else b = y;
        }
        if (gb >= eps) {
          double y = solve(eps, false);
          if (inc) b = y;
          else a = y;
        }
        if (b > a) next.push_back({a, b});
        lo = hi;
      }
      if (next.size() > piece_limit) fail(ErrorKind::kResource, "dynamical ball splits into too many pieces");
    }
    if (next.empty()) fail(ErrorKind::kResolution, "dynamical ball vanished below double resolution");
    pieces = std::move(next);
  }
  return counts;
}

EntropyEstimate make_estimate(double eps, double delta, const std::vector<double>& counts) {
  EntropyEstimate e;
  e.method = "tail-ball";
  e.direction = Bias::kUpper;
  e.eps = eps;
  e.delta = delta;
  const int n_max = static_cast<int>(counts.size());
  for (int n = 1; n <= n_max; ++n) {
    e.n.push_back(n);
    e.counts.push_back(counts[n - 1]);
  }
  e.rate = std::log(counts.back()) / n_max;
  const int from = n_max / 2 + 1;
  e.fit_from = from;
  std::vector<double> x, y;
  for (int n = from; n <= n_max; ++n) {
    x.push_back(n);
    y.push_back(std::log(counts[n - 1]));
  }
  e.slope = x.size() >= 2 ? std::max(0.0, fit_line(x, y).slope) : std::max(0.0, e.rate);
  return e;
}

std::vector<double> centres(const IntervalMap& f, double eps, const TailOptions& opts) {
  const double offset = 0.6180339887498949;
  std::vector<double> xs(opts.x_count);
  for (std::size_t i = 0; i < opts.x_count; ++i)
    xs[i] = (static_cast<double>(i) + offset) / static_cast<double>(opts.x_count);
  int q = opts.period_max >= 0 ? opts.period_max : static_cast<int>(std::ceil(-std::log2(eps))) + 3;
  auto per = folding_periodic_points(f, q, eps);
  xs.insert(xs.end(), per.begin(), per.end());
  return xs;
}

std::vector<std::vector<double>> sup_counts(const IntervalMap& f, double eps, const std::vector<double>& deltas,
                                            int n_max, std::span<const double> xs, std::size_t piece_limit,
                                            std::size_t* arg) {
  std::vector<std::vector<std::vector<double>>> all(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { all[i] = ball_counts(f, xs[i], eps, deltas, n_max, piece_limit); });
  std::vector<std::vector<double>> sup(deltas.size(), std::vector<double>(n_max, 0.0));
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t d = 0; d < deltas.size(); ++d)
      for (int n = 0; n < n_max; ++n) sup[d][n] = std::max(sup[d][n], all[i][d][n]);
    if (all[i].back().back() > all[best].back().back()) best = i;
  }
  if (arg) *arg = best;
  return sup;
}

}  // namespace

std::vector<double> folding_periodic_points(const IntervalMap& f, int q_max, double eps) {
  std::vector<double> out;
  const auto& crit = f.critical_points();
  if (crit.empty()) return out;
  for (int q = 1; q <= q_max; ++q) {
    auto laps = laps_of_iterate(f, q);
    std::vector<std::vector<double>> found(laps.size());
    parallel_for(laps.size(), [&](std::size_t i) {
      auto h = [&](double y) { return iterate_point(f, y, q) - y; };
      double l = laps[i].lo, r = laps[i].hi;
      double hl = h(l), hr = h(r);
      if (hl == 0.0) r = l;
      else if (hr == 0.0) l = r;
      else if ((hl > 0) == (hr > 0)) return;
      for (int it = 0; it < 64; ++it) {
        double mid = 0.5 * (l + r);
        if (mid <= l || mid >= r) break;
        if ((h(mid) > 0) == (hl > 0)) l = mid;
        else r = mid;
      }
      double x = 0.5 * (l + r), y = x;
      for (int k = 0; k < q; ++k) {
        for (double c : crit)
          if (std::fabs(y - c) < eps) {
            found[i].push_back(x);
            return;
          }
        y = f.eval(y);
      }
    });
    for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> tail_counts(const IntervalMap& f, double eps, double delta, int n_max,
                                std::span<const double> xs, std::size_t piece_limit, double* argmax) {
  if (!(delta > 0 && delta < eps)) fail(ErrorKind::kArgument, "tail counts need 0 < delta < eps");
  if (n_max < 1 || xs.empty()) fail(ErrorKind::kArgument, "tail counts need n_max >= 1 and centres");
  std::size_t arg = 0;
  auto s = sup_counts(f, eps, {delta}, n_max, xs, piece_limit, &arg);
  if (argmax) *argmax = xs[arg];
  return s[0];
}

TailEstimate tail_entropy_estimate(const IntervalMap& f, double eps, const TailOptions& opts) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "tail estimate needs 0 < eps < 1");
  if (opts.n_max < 3) fail(ErrorKind::kArgument, "tail estimate needs n_max >= 3");
  if (opts.delta_levels < 1 || opts.x_count < 1) fail(ErrorKind::kArgument, "bad tail options");
  std::vector<double> deltas;
  for (int j = 1; j <= opts.delta_levels; ++j) deltas.push_back(std::ldexp(eps, -j));
  auto xs = centres(f, eps, opts);
  std::size_t arg = 0;
  auto sup = sup_counts(f, eps, deltas, opts.n_max, xs, opts.piece_limit, &arg);
  TailEstimate t;
  t.argmax_x = xs[arg];
  std::vector<double> dx, sy;
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    t.per_delta.push_back(make_estimate(eps, deltas[d], sup[d]));
    dx.push_back(deltas[d]);
    sy.push_back(t.per_delta.back().slope);
  }
  if (deltas.size() >= 2) {
    LineFit fit = fit_line(dx, sy);
    t.rate = std::max(0.0, fit.intercept);
    t.residual = fit.rms;
  } else {
    t.rate = sy[0];
  }
  return t;
}

PowerCheck power_bound_check(const IntervalMap& f, double eps, int p, const TailOptions& opts, double tolerance) {
  if (p < 2) fail(ErrorKind::kArgument, "power check needs p >= 2");
  PowerCheck c;
  c.p = p;
  c.tolerance = tolerance;
  c.est_f = tail_entropy_estimate(f, eps, opts).rate;
  TailOptions o = opts;
  o.n_max = std::max(3, opts.n_max / p);
  int q = opts.period_max >= 0 ? opts.period_max : static_cast<int>(std::ceil(-std::log2(eps))) + 3;
  o.period_max = (q + p - 1) / p;
  c.est_fp = tail_entropy_estimate(IntervalMap::iterate(f, p), eps, o).rate;
  c.holds = c.est_f <= c.est_fp / p + tolerance;
  return c;
}

}  // namespace tailent
