#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include "oracles.hpp"
#include "tailent/combinatorics.hpp"
#include "tailent/entropy.hpp"
#include "tailent/error.hpp"
#include "tailent/experiment.hpp"
#include "tailent/interval_map.hpp"
#include "tailent/numeric.hpp"
#include "tailent/parallel.hpp"
#include "tailent/qpoly.hpp"
#include "tailent/rates.hpp"
#include "tailent/reparam.hpp"
#include "tailent/symbolic.hpp"
#include "tailent/verify.hpp"

namespace tailent {

namespace {

struct Outcome {
  bool pass = true;
  std::string measured;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note("FAIL " + what);
    }
  }
  void note(const std::string& s) {
    if (!measured.empty()) measured += "; ";
    measured += s;
  }
};

const double kLn2 = std::numbers::ln2;

Outcome bell_exactness() {
  Outcome o;
  for (int r = 1; r <= 12; ++r)
    o.check(bell_number(r) == oracle::set_partitions(r), fmt::format("B_{} != set partitions", r));
  std::vector<mpz_class> facts;
  for (int i = 1; i <= 12; ++i) facts.push_back(factorial(i));
  int identities = 0;
  for (int k = 1; k <= 12; ++k)
    for (int l = 1; l <= k; ++l) {
      mpz_class v = bell_table().partial_bell(k, l, std::span<const mpz_class>(facts.data(), k - l + 1));
      o.check(v == oracle::lah_number(k, l), fmt::format("B_{{{},{}}}(1!,2!,..) mismatch", k, l));
      ++identities;
    }
  for (int r = 1; r <= 15; ++r) {
    mpz_class rr;
    mpz_ui_pow_ui(rr.get_mpz_t(), r, r);
    o.check(bell_number(r) <= rr, fmt::format("B_{} > {}^{}", r, r, r));
  }
  o.note(fmt::format("B_12={} (oracle {}), {} partial Bell identities, B_15={}", bell_number(12).get_str(),
                     oracle::set_partitions(12).get_str(), identities, bell_number(15).get_str()));
  return o;
}

Outcome q_pipeline() {
  Outcome o;
  const QPoly S = s_polynomial();
  double worst_ratio = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  int r_violations = 0, r_pairs = 0;
  for (int r = 1; r <= 12; ++r) {
    auto [Q, b] = q_polynomial(r);
    o.check(Q(mpq_class(0)) == 0 && Q(mpq_class(1)) == 1, fmt::format("Q_{} endpoints", r));
    for (int k = 1; k <= r - 1; ++k) {
      QPoly d = Q.derivative(k);
      o.check(d(mpq_class(0)) == 0 && d(mpq_class(1)) == 0, fmt::format("Q_{}^({}) not flat", r, k));
    }
    QPoly one_minus_x({mpq_class(1), mpq_class(-1)});
    QPoly lhs = QPoly::constant(1) - Q.compose(one_minus_x);
    o.check(lhs == Q, fmt::format("Q_{} functional equation", r));
    int below = 0, below_corrected = 0;
    for (int i = 0; i <= 1000; ++i) {
      mpq_class x(i, 1000);
      mpq_class xr = 1, yr = 1;
      for (int t = 0; t < r; ++t) {
        xr *= x;
        yr *= 1 - x;
      }
      mpq_class diff = Q(x) - mpq_class(b) * xr * yr;
      below += diff < 0;
      // x^r (1-x)^(r-1), the bound that the integral representation gives.
      if (x < 1) below_corrected += Q(x) < xr * yr / (1 - x);
      if (i > 0 && i < 1000) min_margin = std::min(min_margin, diff.get_d());
    }
    o.check(below == 0, fmt::format("Q_{} < b_r x^r(1-x)^r at {} of 1001 grid points", r, below));
    o.check(below_corrected == 0, fmt::format("Q_{} < x^r(1-x)^(r-1) at {} grid points", r, below_corrected));
    for (int i = 0; i <= r - 1; ++i) {
      DPoly R = to_double(q_derivative_factorization(r, i));
      ++r_pairs;
      double sup = 0.0;
      for (int g = 0; g <= 1000; ++g) sup = std::max(sup, std::fabs(R(g / 1000.0)));
      double cap = std::pow(r / 2.0, i) * std::tgamma(i + 1.0);
      if (sup > cap * (1 + 1e-12)) ++r_violations;
      worst_ratio = std::max(worst_ratio, sup / cap);
    }
    // Q_r^(i+1) = b_r S^(r-1-i) R_i where R_i follows the recursion with r-1.
    if (r >= 2)
      for (int i = 0; i <= r - 2; ++i) {
        QPoly Sp = QPoly::constant(1);
        for (int t = 0; t < r - 1 - i; ++t) Sp = Sp * S;
        QPoly rhs = Sp * q_derivative_factorization(r - 1, i) * mpq_class(b);
        o.check(Q.derivative(i + 1) == rhs, fmt::format("Q_{}^({}) factorization", r, i + 1));
      }
  }
  o.check(r_violations == 0, fmt::format("||R_i|| > (r/2)^i i! for {} of {} pairs (r,i)", r_violations, r_pairs));
  o.note(fmt::format("r<=12: max ||R_i||/((r/2)^i i!) = {:.4g}; min of Q_r - b_r x^r(1-x)^r = {:.3g}",
                     worst_ratio, min_margin));
  return o;
}

std::vector<QPoly> random_system(std::mt19937_64& rng, int m, int r) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<QPoly> polys;
  for (int j = 0; j < m; ++j) {
    std::vector<double> c(r + 1);
    for (auto& v : c) v = u(rng);
    polys.push_back(to_rational(DPoly(std::move(c))));
  }
  return polys;
}

Outcome reparam_suite() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  double worst_p = 0.0, worst_phi = 0.0;
  std::size_t defects = 0, nonempty = 0;
  for (int i = 0; i < 100; ++i) {
    const int m = 1 + i % 3, r = 1 + (i / 3) % 8;
    Atlas a = reparametrize_1d(random_system(rng, m, r), r);
    AtlasReport rep = verify_atlas(a, 10000);
    defects += rep.coverage_defect;
    nonempty += rep.grid_points_inside > 0;
    worst_p = std::max(worst_p, rep.max_norm_p);
    worst_phi = std::max(worst_phi, rep.max_norm_phi);
  }
  o.check(defects == 0, fmt::format("coverage defect {}", defects));
  o.check(worst_p <= 1 + 1e-6, fmt::format("max ||P o phi||_r = {}", worst_p));
  o.check(worst_phi <= 1 + 1e-6, fmt::format("max ||phi||_r = {}", worst_phi));
  o.note(fmt::format("100 systems ({} nonempty): defect {}, max||P o phi||_r {:.6f}, max||phi||_r {:.6f}", nonempty,
                     defects, worst_p, worst_phi));
  // Largest chart count over seeded systems, per (m, r).
  const int seeds = 8;
  for (int m = 1; m <= 3; ++m) {
    std::vector<double> lr, lc;
    for (int r = 2; r <= 10; ++r) {
      std::size_t best = 0;
      for (int s = 0; s < seeds; ++s) {
        std::mt19937_64 g(7919ULL * m + 104729ULL * r + s);
        best = std::max(best, reparametrize_1d(random_system(g, m, r), r).charts.size());
      }
      if (best > 0) {
        lr.push_back(std::log(static_cast<double>(r)));
        lc.push_back(std::log(static_cast<double>(best)));
      }
    }
    double slope = lr.size() >= 2 ? fit_line(lr, lc).slope : std::numeric_limits<double>::quiet_NaN();
    o.check(slope <= 8.5, fmt::format("chart-count slope {} for m={}", slope, m));
    o.note(fmt::format("m={} slope {:.3f}", m, slope));
  }
  return o;
}

Outcome sft_suite() {
  Outcome o;
  Sft full = sft_from_forbidden_words(2, {});
  double hf = sft_entropy(full);
  o.check(std::fabs(hf - kLn2) <= 1e-12, fmt::format("full shift {}", hf));
  Sft golden = sft_from_forbidden_words(2, {parse_word("11")});
  double hg = sft_entropy(golden);
  double ref = std::log(oracle::perron_root({{1, 1}, {1, 0}}));
  o.check(std::fabs(hg - ref) <= 1e-6, fmt::format("golden mean {} vs {}", hg, ref));
  o.note(fmt::format("full {:.15f}, golden {:.12f} (eig {:.12f})", hf, hg, ref));
  double worst = 0.0;
  for (int p = 3; p <= 12; ++p) {
    Sft y = build_Yp(p);
    double h = sft_entropy(y), r = std::log(std::ldexp(1.0, p) - 1) / p;
    o.check(std::fabs(h - r) <= std::ldexp(1.0, 1 - p), fmt::format("Y_{} entropy {} vs {}", p, h, r));
    o.check(h < kLn2, fmt::format("Y_{} entropy not below log 2", p));
    worst = std::max(worst, std::fabs(h - r) / std::ldexp(1.0, 1 - p));
    if (p <= 6) {
      // Word counts against brute-force enumeration of avoiding words.
      Word f(p, 0);
      f[1] = 1;
      auto wc = word_counts(y, 14);
      long long bf = oracle::count_avoiding(2, {f}, 14);
      o.check(static_cast<long long>(std::llround(wc.back())) == bf, fmt::format("Y_{} word count {} vs {}", p, wc.back(), bf));
    }
  }
  o.note(fmt::format("Y_3..Y_12 worst |h - ref|/2^(1-p) = {:.3f}", worst));
  double worst_pow = 0.0;
  Sft y3 = build_Yp(3);
  for (const Sft* s : {&full, &golden, &y3})
    for (int p = 1; p <= 4; ++p) {
      double hp = power_word_count_entropy(*s, p);
      double h = sft_entropy(*s);
      o.check(std::fabs(hp - p * h) <= 1e-6, fmt::format("power rule p={} gives {} vs {}", p, hp, p * h));
      worst_pow = std::max(worst_pow, std::fabs(hp - p * h));
    }
  o.note(fmt::format("power rule max deviation {:.2e}", worst_pow));
  return o;
}

Outcome tent_bracket() {
  Outcome o;
  IntervalMap T = tent_map();
  std::string vals;
  for (int k = 3; k <= 8; ++k) {
    double eps = std::ldexp(1.0, -k), L = k * kLn2;
    double v = tail_entropy_estimate(T, eps).rate * L;
    o.check(v >= 0.8 * kLn2 && v <= 1.2 * 2 * kLn2,
            fmt::format("k={}: {:.4f} outside [{:.4f}, {:.4f}]", k, v, 0.8 * kLn2, 2.4 * kLn2));
    vals += fmt::format("{}{:.4f}", vals.empty() ? "" : ",", v);
  }
  o.note("rate*|log eps| for k=3..8: " + vals);
  return o;
}

Outcome quadratic_suite() {
  Outcome o;
  IntervalMap f = quadratic_map(4.0);
  auto e = eps_entropy(f, std::ldexp(1.0, -8));
  o.check(std::fabs(e.upper.slope - kLn2) <= 0.05, fmt::format("eps_entropy {:.4f}", e.upper.slope));
  o.note(fmt::format("eps_entropy(2^-8): spanning {:.5f}, separated {:.5f}", e.upper.slope, e.lower.slope));
  std::string vals;
  for (int k = 4; k <= 9; ++k) {
    double eps = std::ldexp(1.0, -k), L = k * kLn2;
    double t = tail_entropy_estimate(f, eps).rate;
    double qb = bound_quasionedim(f, eps), wb = bound_wmulti(f, eps);
    o.check(t * L >= 0.1, fmt::format("k={}: tail*|log eps| = {:.4f}", k, t * L));
    o.check(qb >= t, fmt::format("k={}: quasi-one-dimensional bound {:.4f} < {:.4f}", k, qb, t));
    o.check(wb >= t, fmt::format("k={}: modulus bound {:.4f} < {:.4f}", k, wb, t));
    vals += fmt::format("{}k={}:{:.3f}/{:.3f}/{:.3f}", vals.empty() ? "" : " ", k, t * L, qb, wb);
  }
  o.note("tail*|log eps|/bound_l/bound_w: " + vals);
  return o;
}

Outcome power_suite() {
  Outcome o;
  TailOptions opts;
  opts.n_max = 30;
  for (const auto& f : {tent_map(), quadratic_map(4.0)})
    for (int p : {2, 3}) {
      auto c = power_bound_check(f, std::ldexp(1.0, -6), p, opts, 0.02);
      o.check(c.holds, fmt::format("{} p={}: {:.4f} > {:.4f}/{} + 0.02", f.name(), p, c.est_f, c.est_fp, p));
      o.note(fmt::format("{} p={}: {:.4f} vs {:.4f}", f.name(), p, c.est_f, c.est_fp / p));
    }
  return o;
}

Outcome rates_suite() {
  Outcome o;
  WeightSequence w = weight_kpow2();
  for (int j = 1; j <= 6; ++j) {
    double x = std::pow(10.0, j);
    long long g = g_inverse(w, x);
    o.check(g >= x / std::log(x), fmt::format("G({}) = {} < x/log x", x, g));
  }
  o.check(is_log_convex(w, 50), "k^(k^2) weight not log-convex");
  for (int k = 1; k < 40; ++k) {
    o.check(w.log_m(k + 1) / (k + 1) - w.log_m0() / (k + 1) >= (w.log_m(k) - w.log_m0()) / k - 1e-12L,
            fmt::format("(M_k/M_0)^(1/k) decreases at k={}", k));
    for (int l = 1; k + l <= 40; ++l)
      o.check(w.log_m(k) + w.log_m(l) <= w.log_m0() + w.log_m(k + l) + 1e-9L,
              fmt::format("M_k M_l > M_0 M_(k+l) at {},{}", k, l));
  }
  long long prev = 0;
  WeightSequence lower = weight_exp_square(std::exp(1.0));  // a_k = k <= k log k + ... beyond k = 3
  for (double x = 0.5; x < 500; x *= 1.37) {
    long long g = g_inverse(w, x);
    o.check(g >= prev, fmt::format("G not monotone at {}", x));
    prev = g;
  }
  for (int l = 1; l <= 60; ++l)
    o.check(g_inverse(w, w.a(l)) >= l, fmt::format("G(a_{}) < {}", l, l));
  for (double x = 3; x < 1e4; x *= 1.9)
    o.check(g_inverse(w, x) <= g_inverse(lower, x), fmt::format("comparison fails at {}", x));
  FromRateOptions fo;
  fo.check_concavity = false;
  auto wr = weight_from_rate(parse_rate("pow:1/7"), 1.0, fo);
  o.check(is_log_convex(wr.weight, 50), "weight from rate not log-convex");
  std::string vals;
  for (int j = 2; j <= 6; ++j) {
    double eps = std::pow(10.0, -j);
    long long g = g_inverse(wr.weight, 3 * std::fabs(std::log(eps)));
    double lhs = g > 0 ? static_cast<double>(wr.weight.log_m0()) / g : std::numeric_limits<double>::infinity();
    double a = std::pow(eps, 1.0 / 7);
    o.check(lhs <= a, fmt::format("eps=1e-{}: log M0/G = {:.4g} > a = {:.4g}", j, lhs, a));
    vals += fmt::format("{}{:.3g}<={:.3g}", vals.empty() ? "" : ",", lhs, a);
  }
  o.note(fmt::format("G(10^6)={}, fromrate(logDT=1) log M0/G(3|log eps|) vs a: {}; concavity check {}",
                     g_inverse(w, 1e6), vals, wr.concave ? "passed" : "failed (flagged)"));
  return o;
}

Outcome thickness_suite() {
  Outcome o;
  auto third = remove_middle(mpq_class(1, 3), 12);
  auto t3 = thickness_exact(third, 12);
  o.check(t3 && *t3 == 1, "middle-third thickness not exactly 1");
  o.check(std::fabs(thickness(third, 12) - 1.0) <= 1e-9, "middle-third thickness float");
  auto half = remove_middle(mpq_class(1, 2), 12);
  auto th = thickness_exact(half, 12);
  o.check(th && *th == mpq_class(1, 2), "middle-half thickness not exactly 1/2");
  std::mt19937_64 rng(31337);
  const int depth = 7;
  int third_alt = 0, levels_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    // F on [0,1]; K an affine copy whose hull straddles the right end of F.
    mpq_class scale(static_cast<long>(1 + rng() % 400), 200);  // (0, 2]
    mpq_class left(static_cast<long>(1 + rng() % 199), 200);   // (0, 1)
    if (left + scale <= 1) scale = 1 - left + mpq_class(static_cast<long>(1 + rng() % 100), 100);
    auto F = remove_middle(mpq_class(1, 5), depth);
    auto K = remove_middle(mpq_class(1, 5), depth).affine(scale, left);
    o.check(thickness_exact(K, depth).value() == 2 && thickness_exact(F, depth).value() == 2, "middle-fifth thickness");
    auto g = gap_lemma_check(K, F, depth);
    third_alt += g.alternative == GapAlternative::kIntersect;
    o.check(g.alternative == GapAlternative::kIntersect, fmt::format("trial {} gave {}", trial, to_string(g.alternative)));
    o.check(static_cast<int>(g.interior.size()) == depth + 1, "interior vector length");
    for (int i = 0; i <= depth && i < static_cast<int>(g.interior.size()); ++i) {
      bool bf = oracle::interiors_meet(K.level(i), F.level(i));
      o.check(bf == g.interior[i], fmt::format("trial {} level {} disagrees with brute force", trial, i));
      o.check(bf, fmt::format("trial {} level {} empty", trial, i));
      ++levels_checked;
    }
  }
  o.note(fmt::format("tau(1/3)={}, tau(1/2)={}, {}/50 intersect, {} levels cross-checked", t3 ? t3->get_str() : "none",
                     th ? th->get_str() : "none", third_alt, levels_checked));
  return o;
}

Outcome snake_suite() {
  Outcome o;
  RateFunction a = rate_inv_sqrt_log();
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
  const std::vector<long long> expected_N = {10, 100, 1000};
  std::vector<std::array<double, 3>> sups;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    Snake s = build_snake(a, eps[i], 1.0);
    const auto& p = s.params;
    o.check(p.N == expected_N[i], fmt::format("eps={}: N={}", eps[i], p.N));
    double rel = std::fabs(p.M * std::exp(p.P) / eps[i] - 1.0);
    o.check(rel <= 1e-12, fmt::format("eps={}: M e^P / eps - 1 = {:.2e}", eps[i], rel));
    long long osc = s.oscillation_count();
    o.check(osc == p.N, fmt::format("eps={}: {} oscillations", eps[i], osc));
    sups.push_back({s.sampled_sup(1), s.sampled_sup(2), s.sampled_sup(3)});
  }
  for (int r = 1; r <= 3; ++r) {
    bool dec = sups[1][r - 1] < sups[0][r - 1] && sups[2][r - 1] < sups[1][r - 1];
    o.check(dec, fmt::format("sup|f^({})| not decreasing as eps decreases", r));
    o.note(fmt::format("r={}: {:.4g},{:.4g},{:.4g}", r, sups[0][r - 1], sups[1][r - 1], sups[2][r - 1]));
  }
  return o;
}

Outcome determinism_suite() {
  Outcome o;
  std::vector<ExperimentConfig> configs;
  {
    ExperimentConfig c;
    c.experiment = "eps-entropy";
    c.spec = "quadratic:4;tent";
    c.eps_start = 1.0 / 16;
    c.eps_count = 2;
    c.n_max = 16;
    c.grid_bits = 12;
    configs.push_back(c);
  }
  {
    ExperimentConfig c;
    c.experiment = "tail";
    c.spec = "tent;quadratic:4";
    c.eps_start = 1.0 / 16;
    c.eps_count = 2;
    c.n_max = 14;
    c.params["x_count"] = "64";
    configs.push_back(c);
  }
  {
    ExperimentConfig c;
    c.experiment = "reparam";
    c.spec = "random";
    c.n_min = 2;
    c.n_max = 5;
    c.params["m"] = "2";
    c.params["seeds"] = "2";
    configs.push_back(c);
  }
  const int saved = thread_count();
  for (auto& c : configs) {
    std::string ref;
    for (int th : {1, 2, 4}) {
      c.threads = th;
      std::string csv = render_csv(c);
      if (th == 1) ref = csv;
      o.check(csv == ref, fmt::format("{} differs at {} threads", c.experiment, th));
    }
    o.note(fmt::format("{}: {} bytes identical for 1,2,4 threads", c.experiment, ref.size()));
  }
  set_thread_count(saved);
  return o;
}

struct Criterion {
  int id;
  const char* tag;
  const char* name;
  Outcome (*run)();
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "combinatorics", "Bell numbers and partial Bell identities", bell_exactness},
      {2, "qpoly", "Q_r polynomials exact conditions", q_pipeline},
      {3, "reparam", "reparametrization atlases", reparam_suite},
      {4, "sft", "subshift entropies", sft_suite},
      {5, "tent", "tent map tail bracket", tent_bracket},
      {6, "quadratic", "quadratic map entropy and bounds", quadratic_suite},
      {7, "power", "tail entropy of powers", power_suite},
      {8, "rates", "weights and inverse function", rates_suite},
      {9, "thickness", "thickness and gap lemma", thickness_suite},
      {10, "snake", "snake construction", snake_suite},
      {11, "determinism", "thread-count determinism", determinism_suite},
  };
  return c;
}

}  // namespace

const std::vector<std::string>& verify_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> t;
    for (const auto& c : criteria()) t.push_back(c.tag);
    t.push_back("quick");
    t.push_back("full");
    return t;
  }();
  return tags;
}

std::vector<int> verify_selection(const std::string& tag) {
  std::vector<int> ids;
  if (tag == "full") {
    for (const auto& c : criteria()) ids.push_back(c.id);
    return ids;
  }
  if (tag == "quick") return {1, 2, 4, 8, 9, 10, 11};
  for (const auto& c : criteria())
    if (tag == c.tag || tag == std::to_string(c.id)) return {c.id};
  fail(ErrorKind::kConfig, "unknown verify tag '" + tag + "'");
}

CriterionResult run_criterion(int id) {
  for (const auto& c : criteria()) {
    if (c.id != id) continue;
    CriterionResult r;
    r.id = id;
    r.name = c.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = c.run();
      r.pass = o.pass;
      r.measured = o.measured;
    } catch (const std::exception& e) {
      r.pass = false;
      r.measured = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  fail(ErrorKind::kArgument, "no criterion " + std::to_string(id));
}

std::string format_result(const CriterionResult& r) {
  return fmt::format("[{}] criterion {:>2} {} ({:.1f} s): {}", r.pass ? "PASS" : "FAIL", r.id, r.name, r.seconds,
                     r.measured);
}

std::vector<CriterionResult> verify_all(const std::string& tag, std::ostream& os) {
  std::vector<CriterionResult> out;
  for (int id : verify_selection(tag)) {
    out.push_back(run_criterion(id));
    os << format_result(out.back()) << std::endl;
  }
  return out;
}

}  // namespace tailent
