#include <algorithm>
#include <cmath>
#include <limits>

#include "tailent/entropy.hpp"
#include "tailent/error.hpp"
#include "tailent/numeric.hpp"
#include "tailent/parallel.hpp"

namespace tailent {

double branch_product_bound(const IntervalMap& f, double x, double eps, int n) {
  if (n < 1) fail(ErrorKind::kArgument, "branch_product_bound needs n >= 1");
  double s = 0.0, y = x;
  for (int k = 0; k < n; ++k) {
    s += std::log(static_cast<double>(f.branch_count_in_ball(y, eps)));
    y = f.eval(y);
  }
  return s / n;
}

double bound_quasionedim(const IntervalMap& f, double eps, int l) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "bound needs 0 < eps < 1");
  if (l < 0) l = f.branch_count();
  double norm = 0.0;
  for (int k = 1; k <= l; ++k) norm = std::max(norm, f.derivative_sup(k).value);
  return log_plus(norm) / std::fabs(std::log(eps));
}

double bound_wmulti(const IntervalMap& f, double eps) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "bound needs 0 < eps < 1");
  if (eps >= f.min_branch_length()) fail(ErrorKind::kScale, "eps must be below the shortest branch length");
  double w = f.modulus_of_continuity(eps);
  double den = w > 0 ? log_plus(1.0 / w) : std::numeric_limits<double>::infinity();
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(2.0) * log_plus(f.derivative_sup(1).value) / den;
}

double growth_rate_R(const IntervalMap& f, int n_max, int grid_bits) {
  if (n_max < 2) fail(ErrorKind::kArgument, "growth_rate_R needs n_max >= 2");
  if (!f.is_c1() && f.kind() != MapKind::kPiecewiseAffine) fail(ErrorKind::kNotC1, "growth_rate_R needs a C1 map");
  const std::size_t N = (std::size_t{1} << grid_bits) + 1;
  std::vector<std::vector<double>> L(N, std::vector<double>(n_max));
  parallel_for(N, [&](std::size_t i) {
    double y = static_cast<double>(i) / static_cast<double>(N - 1);
    double s = 0.0;
    for (int k = 0; k < n_max; ++k) {
      s += std::log(std::fabs(f.derivative(y, 1)));
      L[i][k] = s;
      y = f.eval(y);
    }
  });
  std::vector<double> sup(n_max, -std::numeric_limits<double>::infinity());
  for (const auto& row : L)
    for (int k = 0; k < n_max; ++k) sup[k] = std::max(sup[k], row[k]);
  std::vector<double> x, y;
  for (int n = n_max / 2 + 1; n <= n_max; ++n) {
    x.push_back(n);
    y.push_back(std::max(0.0, sup[n - 1]));
  }
  return std::max(0.0, fit_line(x, y).slope);
}

int least_p(const IntervalMap& f, double eps, const std::function<double(double)>& hloc, const ModulusOptions& opts,
            bool* found) {
  const double h = eps_entropy(f, eps / 4, opts.entropy).upper.slope;
  const double target = hloc(eps);
  for (int p = 1; p <= opts.p_cap; ++p) {
    double r = static_cast<double>(spanning_count(f, p, eps / 4, opts.grid_bits).spanning);
    if (std::log(r) / p - h <= target) {
      if (found) *found = true;
      return p;
    }
  }
  if (found) *found = false;
  return opts.p_cap;
}

ContinuityModulus continuity_modulus(const IntervalMap& f, double eps, double M0,
                                     const std::function<double(double)>& hloc, const ModulusOptions& opts) {
  if (!(eps > 0 && eps < opts.eta_max)) fail(ErrorKind::kArgument, "continuity_modulus needs 0 < eps < eta_max");
  if (!(M0 >= 2)) fail(ErrorKind::kArgument, "continuity_modulus needs M0 >= 2");
  double prev = hloc(eps);
  for (int j = 1; j <= 60; ++j) {
    double v = hloc(std::ldexp(eps, -j));
    if (!(v <= prev + 1e-15)) fail(ErrorKind::kArgument, "hloc must be nondecreasing near 0");
    prev = v;
  }
  ContinuityModulus out;
  out.p_eps = least_p(f, eps, hloc, opts, &out.p_found);
  out.h_est = eps_entropy(f, eps, opts.entropy).upper.slope;

  auto G = [&](double eta) {
    bool ok = false;
    int p = least_p(f, eta, hloc, opts, &ok);
    return ok ? eta / 4 * std::pow(M0, -p) : 0.0;
  };
  // Scan for the first bracket where G reaches eps, then bisect.
  const int steps = 32;
  double lo = eps, hi = eps;
  bool bracket = false;
  for (int k = 1; k <= steps; ++k) {
    double eta = eps * std::pow(opts.eta_max / eps, static_cast<double>(k) / steps);
    if (G(eta) >= eps) {
      hi = eta;
      bracket = true;
      break;
    }
    lo = eta;
  }
  if (!bracket) return out;
  for (int it = 0; it < 30; ++it) {
    double mid = 0.5 * (lo + hi);
    if (G(mid) >= eps) hi = mid;
    else lo = mid;
  }
  out.N = hi;
  out.N_found = true;
  out.bound = out.h_est + 2 * hloc(out.N);
  return out;
}

}  // namespace tailent
