#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "tailent/error.hpp"
#include "tailent/interval_map.hpp"

namespace tailent {

namespace {

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::kConfig, "bad number '" + s + "' in " + what);
  }
}

}  // namespace

IntervalMap parse_map(const std::string& spec) {
  if (spec == "tent") return tent_map();
  if (spec == "identity") return identity_map();
  if (spec == "quadratic") return quadratic_map(4.0);
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorKind::kConfig, "unknown map '" + spec + "'");
  const std::string head = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (head == "quadratic") return quadratic_map(parse_number(rest, spec));
  if (head == "poly") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      fail(ErrorKind::kConfig, "poly map needs [c0,c1,...]");
    std::vector<mpq_class> c;
    std::stringstream ss(rest.substr(1, rest.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        mpq_class q(tok);
        q.canonicalize();
        c.push_back(q);
      } catch (const std::invalid_argument&) {
        c.emplace_back(parse_number(tok, spec));
      }
    }
    return IntervalMap::polynomial(QPoly(std::move(c)), spec);
  }
  if (head == "sin2fit") {
    int l = static_cast<int>(parse_number(rest, spec));
    if (l < 1 || l > 8) fail(ErrorKind::kConfig, "sin2fit branch count must lie in 1..8");
    auto g = [l](double x) {
      double s = std::sin(l * std::numbers::pi * x / 2);
      return s * s;
    };
    return fit_polynomial_map(g, 2 * l + 2, spec);
  }
  if (head == "power") {
    auto c2 = rest.find(':');
    if (c2 == std::string::npos) fail(ErrorKind::kConfig, "power map needs power:<p>:<spec>");
    int p = static_cast<int>(parse_number(rest.substr(0, c2), spec));
    if (p < 1) fail(ErrorKind::kConfig, "power must be at least 1");
    return IntervalMap::iterate(parse_map(rest.substr(c2 + 1)), p);
  }
  if (head == "snake") {
    std::map<std::string, std::string> kv;
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) fail(ErrorKind::kConfig, "snake option '" + tok + "' needs key=value");
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const auto& [k, v] : kv)
      if (k != "eps" && k != "lambda" && k != "rate" && k != "C") fail(ErrorKind::kConfig, "unknown snake option '" + k + "'");
    if (!kv.count("eps")) fail(ErrorKind::kConfig, "snake needs eps=");
    double eps = parse_number(kv["eps"], spec);
    double lambda = kv.count("lambda") ? parse_number(kv["lambda"], spec) : 1.0;
    double C = kv.count("C") ? parse_number(kv["C"], spec) : 1.0;
    RateFunction a = parse_rate(kv.count("rate") ? kv["rate"] : "invsqrtlog");
    return build_snake(a, eps, lambda, C).map;
  }
  fail(ErrorKind::kConfig, "unknown map '" + spec + "'");
}

}  // namespace tailent
