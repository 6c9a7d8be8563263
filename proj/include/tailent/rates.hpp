#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tailent/rate_function.hpp"

namespace tailent {

// Weight (M_k)_{k>=0} carried as k -> log M_k. Values for k <= 200 are cached
// in extended precision.
class WeightSequence {
 public:
  using LogGenerator = std::function<long double(int)>;

  WeightSequence(std::string name, LogGenerator log_m, bool superexponential);

  const std::string& name() const { return name_; }
  bool superexponential() const { return superexponential_; }
  long double log_m(int k) const;
  long double log_m0() const { return log_m(0); }
  // a_k = log+(M_k / M_0) / k, a_0 = 0.
  long double a(int k) const;

 private:
  std::string name_;
  LogGenerator gen_;
  bool superexponential_;
  std::shared_ptr<const std::vector<long double>> cache_;
};

WeightSequence weight_kpow2();              // e k^{k^2}
WeightSequence weight_analytic();           // e k^k
WeightSequence weight_const(double M0);     // M_k = M0
WeightSequence weight_exp_square(double M0);  // M0 e^{k^2}, a_k = k
// Finite list of log M_k; log_m beyond the list is an argument error.
WeightSequence weight_from_logs(std::string name, std::vector<long double> logs);

// 2 log M_k <= log M_{k+1} + log M_{k-1} + 1e-12 |log M_k| for 1 <= k < k_max.
bool is_log_convex(const WeightSequence& w, int k_max);

// Largest l <= cap with a_l <= x. Throws a degenerate-weight error when
// a_cap <= x, since unboundedness of (a_k) cannot be certified.
long long g_inverse(const WeightSequence& w, long double x, long long cap = 1000000);

// Upper bound for the chart count C_{k,l,m}.
using ChartBound = std::function<double(int k, int l, int m)>;
// m^3 k^8 for l = 1; unsupported for l >= 2.
double chart_surrogate(int k, int l, int m);

bool is_admissible(const WeightSequence& w, int l, int m, double D, int k_max = 50, const ChartBound& c = {});
// Least D (to relative 1e-9) for which is_admissible holds; +inf if none below D_hi.
double least_admissible_D(const WeightSequence& w, int l, int m, int k_max = 50, const ChartBound& c = {},
                          double D_hi = 1e9);

struct RateBound {
  double value = 0.0;
  long long G = 0;
  bool admissible = false;
  bool surrogate = true;  // chart counts came from chart_surrogate
};

// (2D+1) l log M0 / G_M(|log eps|/2); with h_star the dimension m replaces l.
RateBound rate_bound_gen(const WeightSequence& w, int l, int m, double D, double eps, bool h_star = false,
                         const ChartBound& c = {});

// (l/r)(log+ |Df^p| + 2 log B_r) + log(2^{l+2m} C_{r,l,m}).
double iterate_bound_main(double norm_Dfp, int r, int l, int m, const ChartBound& c = {});

// dim R / r.
double cr_bound_buzzi(double R, int r, int dim);

struct ProofParameters {
  int r = 0;
  long long p = 0;
};

// r = ceil(l/gamma), p = ceil(r log(C~ r^{2l}) / (D l log M0)) with
// C~ = 2^{l+2m} C_{r,l,m}. Diagnostic only.
ProofParameters proof_parameters(double gamma, int l, int m, double D, double log_M0, const ChartBound& c = {});

// log(1/a^{-1}(y)) with a^{-1}(y) = sup{t : a(t) <= y}, by bisection in
// s = -log t.
double log_inverse_rate(const RateFunction& a, double y);

struct FromRateOptions {
  double B = 1.0;
  double D = 1.0;
  bool check_concavity = true;
};

struct WeightFromRate {
  WeightSequence weight;
  WeightSequence companion;  // (2BDk)^{7k} M_k^2 / M0
  bool concave = true;       // s -> 1/a(e^{-s}) passed the concavity check
};

// log M_k = logDT + k log(1/a^{-1}(logDT/k)), M0 = exp(logDT).
WeightFromRate weight_from_rate(const RateFunction& a, double logDT, const FromRateOptions& opts = {});

// "kpow2", "analytic", "const:<M0>", "expsq:<M0>", "fromrate:a=<rate>,logDT=<x>[,check=0]".
WeightSequence parse_weight(const std::string& spec);

}  // namespace tailent
