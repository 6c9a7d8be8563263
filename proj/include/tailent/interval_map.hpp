#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tailent/polynomial.hpp"
#include "tailent/rate_function.hpp"

namespace tailent {

enum class MapKind { kPolynomial, kPiecewiseAffine, kClosedForm };

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

struct SupEstimate {
  double value = 0.0;
  std::size_t grid_size = 0;  // 0 when exact
};

// Self-map of [0,1] with derivatives and its monotone structure. Immutable and
// cheap to copy.
class IntervalMap {
 public:
  // f^(k)(x) for 0 <= k <= k_max.
  using Jet = std::function<double(double, int)>;

  static IntervalMap polynomial(const QPoly& p, std::string name);
  static IntervalMap polynomial(const DPoly& p, std::string name);
  // Continuous piecewise-affine map through (x_i, y_i), x_0 = 0, x_last = 1.
  static IntervalMap piecewise_affine(std::vector<std::pair<double, double>> nodes, std::string name);
  // Critical points are found from sign changes of f' on a 2^16 grid unless
  // given.
  static IntervalMap closed_form(Jet jet, int k_max, bool c1, std::string name,
                                 std::vector<double> critical = {}, bool critical_given = false);
  // f^p; first derivative by the chain rule; monotone partition by pulling back
  // the critical points of f.
  static IntervalMap iterate(const IntervalMap& f, int p, std::size_t lap_limit = 1u << 22);

  const std::string& name() const;
  MapKind kind() const;
  int k_max() const;
  bool is_c1() const;

  double operator()(double x) const;  // checked
  double eval(double x) const;        // unchecked, clamped to [0,1]
  double derivative(double x, int k) const;
  SupEstimate derivative_sup(int k, double a = 0.0, double b = 1.0) const;

  const std::vector<double>& critical_points() const;
  const std::vector<Interval>& branches() const;
  int branch_count() const;
  double min_branch_length() const;
  // Index of the branch containing x; points on a boundary go right.
  int branch_index(double x) const;

  double modulus_of_continuity(double eps) const;
  int branch_count_in_ball(double x, double eps) const;

  // Exact coefficients for polynomial maps, empty otherwise.
  const QPoly& exact_polynomial() const;
  const IntervalMap* base() const;  // for iterates
  int power() const;                // 1 unless built by iterate

  struct Impl;

 private:
  explicit IntervalMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Laps (maximal monotone intervals) of f^p obtained by pulling back the
// critical points of f.
std::vector<Interval> laps_of_iterate(const IntervalMap& f, int p, std::size_t lap_limit = 1u << 22);

struct BranchLengthResult {
  int p = 0;
  bool saturated = false;
  std::vector<double> min_lengths;  // L(f^k), k = 1..
};

BranchLengthResult min_branch_length_iterate(const IntervalMap& f, double eps, int p_cap,
                                             std::size_t lap_limit = 1u << 22);

// Degree-n least squares fit of g on [0,1], rescaled affinely so that the
// image of [0,1] is exactly [0,1].
IntervalMap fit_polynomial_map(const std::function<double(double)>& g, int degree, std::string name,
                               std::size_t samples = 4001);

IntervalMap quadratic_map(double a = 4.0);
IntervalMap tent_map();
IntervalMap identity_map();

// "quadratic:4.0", "tent", "identity", "poly:[c0,c1,...]",
// "snake:eps=..,lambda=..,rate=..[,C=..]", "sin2fit:<branches>" (degree 2l+2 fit of sin^2(l pi x/2)), "power:<p>:<spec>".
IntervalMap parse_map(const std::string& spec);

// Bump-window snake term of the rate-a example.
struct SnakeParams {
  double eps = 0.0;
  RateFunction rate;
  double lambda = 1.0;
  double c_bound = 1.0;
  double P = 0.0;
  long long N = 0;
  double M = 0.0;
  double R = 0.0;
  int window_index = 1;  // n with [c_n, d_n] = [1/(4n+1), 1/(4n)]
  double c = 0.0;
  double d = 0.0;
};

struct Snake {
  SnakeParams params;
  IntervalMap map;
  // Exponent -lambda/a(eps) + 2r - 1 of the analytic bound C_r (1/eps)^{...}.
  double norm_bound_exponent(int r) const;
  double norm_bound(int r, double c_r = 1.0) const;
  // a(eps) >= lambda / (2r - 1): the decay bound says nothing.
  bool vacuous(int r) const;
  // Sampled sup |f^(k)| over the bump support with at least 200 points per
  // oscillation.
  double sampled_sup(int k) const;
  // Sign changes of f - R on a 100 N point grid across [c_n, d_n].
  long long oscillation_count() const;
};

Snake build_snake(const RateFunction& a, double eps, double lambda, double c_bound = 1.0);

// The degree-7 smoothstep bump: 1 on [0,1], 0 outside (-1,2), C^3.
double bump(double t, int k);

}  // namespace tailent
