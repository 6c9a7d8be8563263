#pragma once

#include <functional>
#include <string>

namespace tailent {

// A nondecreasing rate a: (0,1) -> (0,inf), carried in two forms so that
// scales like exp(-1e6) never underflow: a(eps) and a_log(s) = a(exp(-s)).
struct RateFunction {
  std::string name;
  std::function<double(double)> a;
  std::function<double(double)> a_log;

  double operator()(double eps) const { return a(eps); }
};

RateFunction rate_inv_sqrt_log();           // |log eps|^{-1/2}
RateFunction rate_inv_log();                // |log eps|^{-1}
RateFunction rate_power(double exponent);   // eps^exponent

// "invsqrtlog", "invlog", "pow:<s>" with s a decimal or p/q.
RateFunction parse_rate(const std::string& spec);

}  // namespace tailent
