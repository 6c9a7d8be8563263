#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailent/error.hpp"
#include "tailent/interval_map.hpp"

namespace tailent {

namespace {

// s(u) = 35u^4 - 84u^5 + 70u^6 - 20u^7 and its derivatives.
double smoothstep(double u, int k) {
  static const double c[8] = {0, 0, 0, 0, 35, -84, 70, -20};
  double acc = 0.0;
  for (int i = 7; i >= k; --i) {
    double f = c[i];
    for (int t = 0; t < k; ++t) f *= i - t;
    acc = acc * u + f;
  }
  return acc;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double bump(double t, int k) {
  if (t <= -1.0 || t >= 2.0) return 0.0;
  if (t < 0.0) return smoothstep(t + 1.0, k);
  if (t > 1.0) return (k % 2 ? -1.0 : 1.0) * smoothstep(2.0 - t, k);
  return k == 0 ? 1.0 : 0.0;
}

double Snake::norm_bound_exponent(int r) const {
  return -params.lambda / params.rate(params.eps) + 2.0 * r - 1.0;
}

double Snake::norm_bound(int r, double c_r) const {
  return c_r * std::exp(-norm_bound_exponent(r) * std::log(params.eps));
}

bool Snake::vacuous(int r) const { return params.rate(params.eps) >= params.lambda / (2.0 * r - 1.0); }

double Snake::sampled_sup(int k) const {
  const double w = params.d - params.c;
  const double lo = std::max(0.0, params.c - w), hi = std::min(1.0, params.d + w);
  const long long n = 600 * params.N + 1000;
  double best = 0.0;
  for (long long i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    best = std::max(best, std::fabs(map.derivative(x, k)));
  }
  return best;
}

long long Snake::oscillation_count() const {
  const long long n = 100 * params.N;
  const double w = params.d - params.c;
  long long changes = 0;
  int last = 0;
  for (long long i = 0; i < n; ++i) {
    double t = (static_cast<double>(i) - 0.5) / static_cast<double>(n);
    double v = map.eval(params.c + w * t) - params.R;
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes;
}

Snake build_snake(const RateFunction& a, double eps, double lambda, double c_bound) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "snake needs 0 < eps < 1");
  if (!(lambda > 0)) fail(ErrorKind::kArgument, "snake needs lambda > 0");
  const double aeps = a(eps);
  if (!(aeps > 0)) fail(ErrorKind::kArgument, "rate must be positive at eps");
  if (!(eps < c_bound)) fail(ErrorKind::kArgument, "snake needs eps < C");
  SnakeParams p;
  p.eps = eps;
  p.rate = a;
  p.lambda = lambda;
  p.c_bound = c_bound;
  p.P = -std::log(eps) / aeps;
  const double inv = 1.0 / eps;
  const double near = std::llround(inv);
  p.N = std::fabs(inv - near) <= 1e-9 * inv ? static_cast<long long>(near) : static_cast<long long>(std::ceil(inv));
  p.M = eps * std::exp(-lambda * p.P);
  p.R = std::min(2.0 * eps, 0.5 * (eps + c_bound)) * std::exp(-lambda * p.P);
  // d_n - c_n = 1/(4n(4n+1)) decreases in n; pick the n closest to eps.
  int best = 1;
  double gap = std::fabs(1.0 / 20.0 - eps);
  for (int n = 2; n < 1 << 20; ++n) {
    double g = std::fabs(1.0 / (4.0 * n * (4.0 * n + 1.0)) - eps);
    if (g < gap) {
      gap = g;
      best = n;
    } else {
      break;
    }
  }
  p.window_index = best;
  p.c = 1.0 / (4.0 * best + 1.0);
  p.d = 1.0 / (4.0 * best);

  const double c = p.c, w = p.d - p.c, R = p.R, M = p.M;
  const double omega = std::numbers::pi * static_cast<double>(p.N);
  auto jet = [c, w, R, M, omega](double x, int k) {
    double u = (x - c) / w;
    if (u <= -1.0 || u >= 2.0) return 0.0;
    double g = 0.0;
    double om = 1.0;
    for (int m = 0; m <= k; ++m) {
      double h = M * om * std::sin(omega * u + m * std::numbers::pi / 2);
      if (m == 0) h += R;
      g += binom(k, m) * bump(u, k - m) * h;
      om *= omega;
    }
    return g / std::pow(w, k);
  };
  // Critical points: sign changes of f' on a grid with 400 points per zero of
  // the sine across the support.
  const double lo = std::max(0.0, c - w), hi = std::min(1.0, p.d + w);
  const long long n = 1200 * p.N + 4000;
  std::vector<double> crit;
  double last_x = lo, last = jet(lo, 1);
  for (long long i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    double v = jet(x, 1);
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0) != (last > 0)) {
      double l = last_x, r = x;
      bool lpos = last > 0;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (l + r);
        if (mid <= l || mid >= r) break;
        if ((jet(mid, 1) > 0) == lpos) l = mid;
        else r = mid;
      }
      crit.push_back(0.5 * (l + r));
    }
    last = v;
    last_x = x;
  }
  IntervalMap f = IntervalMap::closed_form(jet, 3, true, "snake", std::move(crit), true);
  return Snake{p, f};
}

}  // namespace tailent
