#include "tailent/rate_function.hpp"

#include <cmath>

#include "tailent/error.hpp"

namespace tailent {

RateFunction rate_inv_sqrt_log() {
  return {"invsqrtlog", [](double eps) { return 1.0 / std::sqrt(std::fabs(std::log(eps))); },
          [](double s) { return 1.0 / std::sqrt(s); }};
}

RateFunction rate_inv_log() {
  return {"invlog", [](double eps) { return 1.0 / std::fabs(std::log(eps)); },
          [](double s) { return 1.0 / s; }};
}

RateFunction rate_power(double exponent) {
  return {"pow:" + std::to_string(exponent), [exponent](double eps) { return std::pow(eps, exponent); },
          [exponent](double s) { return std::exp(-exponent * s); }};
}

RateFunction parse_rate(const std::string& spec) {
  if (spec == "invsqrtlog") return rate_inv_sqrt_log();
  if (spec == "invlog") return rate_inv_log();
  if (spec.rfind("pow:", 0) == 0) {
    try {
      const std::string body = spec.substr(4);
      const auto slash = body.find('/');
      std::size_t used = 0, used_den = 0;
      double s = std::stod(body.substr(0, slash), &used);
      if (slash != std::string::npos) {
        s /= std::stod(body.substr(slash + 1), &used_den);
        used += 1 + used_den;
      }
      if (used == body.size() && s > 0) {
        RateFunction r = rate_power(s);
        r.name = spec;
        return r;
      }
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::kConfig, "unknown rate spec '" + spec + "'");
}

}  // namespace tailent
