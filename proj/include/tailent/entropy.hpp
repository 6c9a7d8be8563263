#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tailent/interval_map.hpp"

namespace tailent {

enum class Bias { kUpper, kLower };
std::string to_string(Bias b);

struct EntropyEstimate {
  std::string method;
  Bias direction = Bias::kUpper;
  double eps = 0.0;
  double delta = 0.0;
  std::vector<int> n;
  std::vector<double> counts;
  double rate = 0.0;   // log(count)/n at the last n
  double slope = 0.0;  // least squares slope of log count over the fit range, floored at 0
  int fit_from = 0;    // first n used by the fit
};

// Midpoints (i + 0.5)/N.
std::vector<double> uniform_grid(std::size_t N);

struct SpanningCount {
  long long spanning = 0;   // greedy cover, centres anywhere in [0,1]
  long long separated = 0;  // greedy maximal (n,eps)-separated subset of the points
};

// Counts over a finite point set. Orbit segments are compared in the sup
// metric with strict inequality.
SpanningCount spanning_count(const IntervalMap& f, int n, double eps, std::span<const double> points);
SpanningCount spanning_count(const IntervalMap& f, int n, double eps, int grid_bits = 14);

// Greedy spanning count of all of [0,1]: the sweep runs over each lap of
// f^{n-1} with continuous centres. Optimal on each lap.
long long lap_sweep_count(const IntervalMap& f, int n, double eps);

struct EntropyOptions {
  int lap_n_max = 12;   // upper-bias lap sweep runs n = 1..lap_n_max
  int grid_n_max = 24;  // lower-bias grid count runs n = 1..grid_n_max
  int grid_bits = 14;
};

struct EpsEntropyResult {
  EntropyEstimate upper;
  EntropyEstimate lower;  // fit uses only n with count below an eighth of the grid
};

EpsEntropyResult eps_entropy(const IntervalMap& f, double eps, const EntropyOptions& opts = {});

struct TailOptions {
  int n_max = 24;
  int delta_levels = 4;        // delta = eps / 2^j, j = 1..delta_levels
  std::size_t x_count = 256;   // centres (i + 0.618...)/x_count
  // Periodic points of period <= period_max whose orbit passes within eps of a
  // critical point are added as centres; -1 means ceil(log2(1/eps)) + 3.
  int period_max = -1;
  std::size_t piece_limit = 1u << 16;
};

struct TailEstimate {
  std::vector<EntropyEstimate> per_delta;
  double rate = 0.0;      // slopes extrapolated linearly in delta to delta = 0, floored at 0
  double residual = 0.0;  // rms of that extrapolation
  double argmax_x = 0.0;  // centre attaining the sup at the last n, finest delta
};

// sup over centres x of r_n(f, B_n(f,x,eps), delta). The ball is kept as a
// union of intervals on which f^{n-1} is monotone and each is swept exactly.
TailEstimate tail_entropy_estimate(const IntervalMap& f, double eps, const TailOptions& opts = {});

// Periodic points of f with period 1..q_max whose orbits come within eps of a
// critical point of f.
std::vector<double> folding_periodic_points(const IntervalMap& f, int q_max, double eps);

// Counts sup_x r_n(f, B_n(f,x,eps), delta) for n = 1..n_max (index n-1).
std::vector<double> tail_counts(const IntervalMap& f, double eps, double delta, int n_max,
                                std::span<const double> centres, std::size_t piece_limit = 1u << 16,
                                double* argmax = nullptr);

// (1/n) sum_{k<n} log M_{f^k x, eps}.
double branch_product_bound(const IntervalMap& f, double x, double eps, int n);

// log+ max_{k<=l} |f^(k)|_inf / |log eps|; l defaults to the branch count.
double bound_quasionedim(const IntervalMap& f, double eps, int l = -1);

// log 2 log+ |f'|_inf / log+(1/w(f',eps)); +inf when the denominator is 0.
double bound_wmulti(const IntervalMap& f, double eps);

// Slope of log+ sup_x |(f^n)'(x)| over n in the last half of 1..n_max, from
// chain-rule sums along 2^grid_bits + 1 grid orbits including both endpoints.
double growth_rate_R(const IntervalMap& f, int n_max = 24, int grid_bits = 14);

struct PowerCheck {
  int p = 0;
  double est_f = 0.0;
  double est_fp = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

// est(f) <= est(f^p)/p + tolerance, both from tail_entropy_estimate. f^p runs
// n_max/p steps so that both see the same number of iterates of f.
PowerCheck power_bound_check(const IntervalMap& f, double eps, int p, const TailOptions& opts = {},
                             double tolerance = 0.02);

struct ModulusOptions {
  int p_cap = 24;
  int grid_bits = 12;
  double eta_max = 2.0;  // search range for N; eta/4 = 1/2 is already the whole interval
  EntropyOptions entropy;
};

struct ContinuityModulus {
  int p_eps = 0;
  bool p_found = false;
  double N = std::numeric_limits<double>::infinity();
  bool N_found = false;
  double h_est = 0.0;
  double bound = std::numeric_limits<double>::infinity();
};

// p_eps is the least p with (1/p) log r_p(f,eps/4) - h(f,eps/4) <= hloc(eps).
int least_p(const IntervalMap& f, double eps, const std::function<double(double)>& hloc, const ModulusOptions& opts,
            bool* found = nullptr);

// N(eps) is the least eta in (eps, eta_max] with (eta/4) M0^{-p_eta} = eps; the
// bound is h(f) + 2 hloc(N(eps)), +inf when no such eta exists. hloc must be
// nondecreasing on (0, eps].
ContinuityModulus continuity_modulus(const IntervalMap& f, double eps, double M0,
                                     const std::function<double(double)>& hloc, const ModulusOptions& opts = {});

}  // namespace tailent
