#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "tailent/combinatorics.hpp"
#include "tailent/error.hpp"
#include "tailent/numeric.hpp"
#include "tailent/rates.hpp"

namespace tailent {

namespace {
constexpr int kCached = 200;
}

WeightSequence::WeightSequence(std::string name, LogGenerator log_m, bool superexponential)
    : name_(std::move(name)), gen_(std::move(log_m)), superexponential_(superexponential) {
  auto c = std::make_shared<std::vector<long double>>();
  for (int k = 0; k <= kCached; ++k) {
    long double v;
    try {
      v = gen_(k);
    } catch (const Error&) {
      break;
    }
    c->push_back(v);
  }
  if (c->empty()) fail(ErrorKind::kArgument, "weight has no M_0");
  if ((*c)[0] < 0) fail(ErrorKind::kArgument, "weight needs M_0 >= 1");
  cache_ = std::move(c);
}

long double WeightSequence::log_m(int k) const {
  if (k < 0) fail(ErrorKind::kArgument, "weight index must be nonnegative");
  if (k < static_cast<int>(cache_->size())) return (*cache_)[k];
  return gen_(k);
}

long double WeightSequence::a(int k) const {
  if (k == 0) return 0.0L;
  long double d = log_m(k) - log_m0();
  return d > 0 ? d / k : 0.0L;
}

WeightSequence weight_kpow2() {
  return WeightSequence("kpow2", [](int k) {
    long double kk = k;
    return k == 0 ? 1.0L : 1.0L + kk * kk * std::log(kk);
  }, true);
}

WeightSequence weight_analytic() {
  return WeightSequence("analytic", [](int k) {
    long double kk = k;
    return k == 0 ? 1.0L : 1.0L + kk * std::log(kk);
  }, false);
}

WeightSequence weight_const(double M0) {
  if (!(M0 >= 1)) fail(ErrorKind::kArgument, "weight needs M_0 >= 1");
  long double l = std::log(static_cast<long double>(M0));
  return WeightSequence("const:" + std::to_string(M0), [l](int) { return l; }, false);
}

WeightSequence weight_exp_square(double M0) {
  if (!(M0 >= 1)) fail(ErrorKind::kArgument, "weight needs M_0 >= 1");
  long double l = std::log(static_cast<long double>(M0));
  return WeightSequence("expsq:" + std::to_string(M0), [l](int k) {
    long double kk = k;
    return l + kk * kk;
  }, true);
}

WeightSequence weight_from_logs(std::string name, std::vector<long double> logs) {
  auto v = std::make_shared<const std::vector<long double>>(std::move(logs));
  return WeightSequence(std::move(name), [v](int k) {
    if (k >= static_cast<int>(v->size())) fail(ErrorKind::kArgument, "weight list too short");
    return (*v)[k];
  }, false);
}

bool is_log_convex(const WeightSequence& w, int k_max) {
  if (k_max < 2) fail(ErrorKind::kArgument, "is_log_convex needs k_max >= 2");
  for (int k = 1; k < k_max; ++k) {
    long double lk = w.log_m(k);
    if (2 * lk > w.log_m(k + 1) + w.log_m(k - 1) + 1e-12L * std::max(1.0L, std::fabs(lk))) return false;
  }
  return true;
}

long long g_inverse(const WeightSequence& w, long double x, long long cap) {
  if (!(x >= 0)) fail(ErrorKind::kArgument, "g_inverse needs x >= 0");
  if (cap < 1 || cap > (1LL << 40)) fail(ErrorKind::kArgument, "g_inverse cap out of range");
  auto a = [&](long long k) { return w.a(static_cast<int>(k)); };
  const long double X = x;
  if (a(cap) <= X)
    fail(ErrorKind::kDegenerateWeight, "a_k stays below " + std::to_string(static_cast<double>(x)) + " up to the search cap");
  // Log-convex weights have nondecreasing a_k; search by doubling then
  // bisection. Otherwise scan.
  if (is_log_convex(w, std::min<long long>(cap, kCached))) {
    long long lo = 0, hi = 1;
    while (hi < cap && a(hi) <= X) {
      lo = hi;
      hi = std::min(cap, hi * 2);
    }
    while (hi - lo > 1) {
      long long mid = lo + (hi - lo) / 2;
      if (a(mid) <= X) lo = mid;
      else hi = mid;
    }
    return lo;
  }
  long long best = 0;
  for (long long k = 1; k < cap; ++k)
    if (a(k) <= X) best = k;
  return best;
}

double chart_surrogate(int k, int l, int m) {
  if (l != 1) fail(ErrorKind::kUnsupported, "no proved chart bound for l >= 2; supply one");
  double kk = k;
  return static_cast<double>(m) * m * m * std::pow(kk, 8);
}

namespace {

double chart(const ChartBound& c, int k, int l, int m) { return c ? c(k, l, m) : chart_surrogate(k, l, m); }

}  // namespace

bool is_admissible(const WeightSequence& w, int l, int m, double D, int k_max, const ChartBound& c) {
  if (l < 1 || m < l || !(D > 0)) fail(ErrorKind::kArgument, "admissibility needs 1 <= l <= m and D > 0");
  if (w.log_m0() < 1.0L - 1e-15L) return false;
  for (int k = 1; k <= k_max; ++k) {
    long double lhs = (w.log_m(k) - w.log_m0()) / k;
    double inner = std::log(std::ldexp(chart(c, k, l, m), 2 * m + l)) + 2.0 * l * std::log(static_cast<double>(k));
    long double rhs = std::log(static_cast<long double>(k)) + 2.0L * k * inner / (D * l);
    if (lhs < rhs) return false;
  }
  return true;
}

double least_admissible_D(const WeightSequence& w, int l, int m, int k_max, const ChartBound& c, double D_hi) {
  if (!is_admissible(w, l, m, D_hi, k_max, c)) return std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = D_hi;
  while (hi - lo > 1e-9 * hi) {
    double mid = 0.5 * (lo + hi);
    if (is_admissible(w, l, m, mid, k_max, c)) hi = mid;
    else lo = mid;
  }
  return hi;
}

RateBound rate_bound_gen(const WeightSequence& w, int l, int m, double D, double eps, bool h_star, const ChartBound& c) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "rate bound needs 0 < eps < 1");
  RateBound b;
  b.surrogate = !c;
  b.admissible = is_admissible(w, l, m, D, 50, c);
  b.G = g_inverse(w, std::fabs(std::log(eps)) / 2);
  if (b.G == 0) fail(ErrorKind::kScale, "G_M vanishes at |log eps|/2; eps too large");
  const int dim = h_star ? m : l;
  b.value = (2 * D + 1) * dim * static_cast<double>(w.log_m0()) / static_cast<double>(b.G);
  return b;
}

double iterate_bound_main(double norm_Dfp, int r, int l, int m, const ChartBound& c) {
  if (r < 2) fail(ErrorKind::kArgument, "iterate bound needs r >= 2");
  if (l < 1 || m < l) fail(ErrorKind::kArgument, "iterate bound needs 1 <= l <= m");
  double log_bell = std::log(bell_number(r).get_d());
  double log_c = std::log(std::ldexp(chart(c, r, l, m), l + 2 * m));
  return static_cast<double>(l) / r * (log_plus(norm_Dfp) + 2 * log_bell) + log_c;
}

double cr_bound_buzzi(double R, int r, int dim) {
  if (r < 1 || dim < 1 || !(R >= 0)) fail(ErrorKind::kArgument, "Buzzi bound needs r >= 1, dim >= 1, R >= 0");
  return dim * R / r;
}

ProofParameters proof_parameters(double gamma, int l, int m, double D, double log_M0, const ChartBound& c) {
  if (!(gamma > 0) || !(D > 0) || !(log_M0 > 0)) fail(ErrorKind::kArgument, "proof parameters need positive gamma, D, log M0");
  ProofParameters p;
  p.r = static_cast<int>(std::ceil(l / gamma));
  double ct = std::ldexp(chart(c, p.r, l, m), l + 2 * m);
  p.p = static_cast<long long>(std::ceil(p.r * std::log(ct * std::pow(p.r, 2 * l)) / (D * l * log_M0)));
  return p;
}

double log_inverse_rate(const RateFunction& a, double y) {
  if (!(y > 0)) fail(ErrorKind::kArgument, "inverse rate needs y > 0");
  if (a.a_log(0.0) <= y) return 0.0;
  double hi = 1.0;
  while (!(a.a_log(hi) <= y)) {
    hi *= 2;
    if (hi > 1e300) fail(ErrorKind::kDegenerateWeight, "rate never drops to " + std::to_string(y));
  }
  double lo = hi / 2 > 0 && a.a_log(hi / 2) > y ? hi / 2 : 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (a.a_log(mid) <= y) hi = mid;
    else lo = mid;
  }
  return hi;
}

WeightFromRate weight_from_rate(const RateFunction& a, double logDT, const FromRateOptions& opts) {
  if (!(logDT > 0)) fail(ErrorKind::kArgument, "weight_from_rate needs logDT > 0");
  // Concavity of s -> 1/a(e^{-s}) by second differences on a grid.
  bool concave = true;
  {
    const int n = 400;
    const double s0 = 0.5, s1 = 60.0, h = (s1 - s0) / n;
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = 1.0 / a.a_log(s0 + i * h);
    for (int i = 1; i < n; ++i) {
      double d2 = g[i + 1] - 2 * g[i] + g[i - 1];
      double scale = std::max({std::fabs(g[i + 1]), std::fabs(g[i]), std::fabs(g[i - 1]), 1.0});
      if (d2 > 1e-9 * scale) concave = false;
    }
  }
  if (!concave && opts.check_concavity)
    fail(ErrorKind::kHypothesisUnmet, "1/a(exp(-s)) is not concave for rate " + a.name);
  const std::string tag = "fromrate:a=" + a.name + ",logDT=" + std::to_string(logDT);
  auto log_m = [a, logDT](int k) -> long double {
    if (k == 0) return logDT;
    return static_cast<long double>(logDT) + static_cast<long double>(k) * log_inverse_rate(a, logDT / k);
  };
  WeightSequence w(tag, log_m, true);
  const double B = opts.B, D = opts.D;
  auto log_c = [w, B, D](int k) -> long double {
    if (k == 0) return w.log_m0();
    long double kk = k;
    return 7 * kk * std::log(2.0L * B * D * kk) + 2 * w.log_m(k) - w.log_m0();
  };
  WeightSequence comp(tag + ":companion", log_c, true);
  return {w, comp, concave};
}

WeightSequence parse_weight(const std::string& spec) {
  if (spec == "kpow2") return weight_kpow2();
  if (spec == "analytic") return weight_analytic();
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::kConfig, "bad number '" + s + "' in weight spec '" + spec + "'");
  };
  if (spec.rfind("const:", 0) == 0) return weight_const(num(spec.substr(6)));
  if (spec.rfind("expsq:", 0) == 0) return weight_exp_square(num(spec.substr(6)));
  if (spec.rfind("fromrate:", 0) == 0) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(spec.substr(9));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) fail(ErrorKind::kConfig, "weight option '" + tok + "' needs key=value");
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const auto& [k, v] : kv)
      if (k != "a" && k != "logDT" && k != "check") fail(ErrorKind::kConfig, "unknown weight option '" + k + "'");
    if (!kv.count("a") || !kv.count("logDT")) fail(ErrorKind::kConfig, "fromrate needs a= and logDT=");
    FromRateOptions o;
    o.check_concavity = !kv.count("check") || kv["check"] != "0";
    return weight_from_rate(parse_rate(kv["a"]), num(kv["logDT"]), o).weight;
  }
  fail(ErrorKind::kConfig, "unknown weight spec '" + spec + "'");
}

}  // namespace tailent
