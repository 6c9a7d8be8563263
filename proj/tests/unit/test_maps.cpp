#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tailent/error.hpp"
#include "tailent/interval_map.hpp"
#include "tailent/rate_function.hpp"

using namespace tailent;

namespace {

// Sign changes of f' on a fine grid.
int monotone_pieces(const IntervalMap& f, int n = 200000) {
  int changes = 0, last = 0;
  for (int i = 0; i < n; ++i) {
    double d = f.derivative((i + 0.5) / n, 1);
    int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes + 1;
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(quadratic_map(4.0)(0.5) == 1.0);
  CHECK(identity_map()(0.3) == 0.3);
  CHECK(tent_map()(0.25) == 0.5);
  CHECK_THROWS_AS(tent_map()(1.5), Error);
  CHECK_THROWS_AS(quadratic_map(4.5), Error);
}

TEST_CASE("derivative sups") {
  auto f = quadratic_map(4.0);
  CHECK(f.derivative_sup(1).value == doctest::Approx(4.0));
  CHECK(f.derivative_sup(2).value == doctest::Approx(8.0));
  CHECK(identity_map().derivative_sup(1).value == doctest::Approx(1.0));
}

TEST_CASE("derivative sups agree with finite differences") {
  auto f = parse_map("poly:[0,3,-4,1]");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int t = 0; t < 200; ++t) {
    double x = u(rng), h = 1e-3;
    const double c1[] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    double d = 0;
    for (int i = 0; i < 9; ++i) d += c1[i] * f.eval(std::clamp(x + (i - 4) * h, 0.0, 1.0));
    if (x - 4 * h > 0 && x + 4 * h < 1) CHECK(f.derivative(x, 1) == doctest::Approx(d / h).epsilon(1e-8));
  }
  double grid = 0;
  for (int i = 0; i <= 100000; ++i) grid = std::max(grid, std::fabs(f.derivative(i / 100000.0, 1)));
  CHECK(f.derivative_sup(1).value == doctest::Approx(grid).epsilon(1e-8));
}

TEST_CASE("monotone partitions") {
  for (const auto& f : {tent_map(), quadratic_map(4.0)}) {
    REQUIRE(f.branch_count() == 2);
    CHECK(f.branches()[0].lo == 0.0);
    CHECK(f.branches()[0].hi == doctest::Approx(0.5));
    CHECK(f.min_branch_length() == doctest::Approx(0.5));
  }
  CHECK(identity_map().branch_count() == 1);
}

TEST_CASE("sin^2 fits count branches like the sign-change oracle") {
  auto g = [](double x) {
    double s = std::sin(3 * std::numbers::pi * x / 2);
    return s * s;
  };
  // Degree 2l+2 = 8 resolves the three branches.
  auto f8 = parse_map("sin2fit:3");
  CHECK(f8.branch_count() == 3);
  CHECK(f8.branch_count() == monotone_pieces(f8));
  // A degree-6 fit wiggles: the isolated count still matches the oracle.
  auto f6 = fit_polynomial_map(g, 6, "deg6");
  CHECK(f6.branch_count() == monotone_pieces(f6));
}

TEST_CASE("modulus of continuity") {
  CHECK(quadratic_map(4.0).modulus_of_continuity(0.1) == doctest::Approx(0.8));
  CHECK(identity_map().modulus_of_continuity(0.2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(tent_map().modulus_of_continuity(0.1), Error);
  try {
    tent_map().modulus_of_continuity(0.1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotC1);
  }
}

TEST_CASE("branches in a ball") {
  auto f = quadratic_map(4.0);
  CHECK(f.branch_count_in_ball(0.5, 0.1) == 2);
  CHECK(f.branch_count_in_ball(0.1, 0.05) == 1);
  CHECK(identity_map().branch_count_in_ball(0.4, 0.3) == 1);
  int prev = 0;
  for (double e = 0.001; e < 1; e *= 1.5) {
    int c = f.branch_count_in_ball(0.3, e);
    CHECK(c >= prev);
    CHECK(c <= f.branch_count());
    prev = c;
  }
}

TEST_CASE("branch length of iterates") {
  CHECK(min_branch_length_iterate(tent_map(), 0.1, 20).p == 3);
  auto id = min_branch_length_iterate(identity_map(), 0.1, 12);
  CHECK(id.p == 12);
  CHECK(id.saturated);
  // f4^p has laps with endpoints sin^2(pi j / 2^(p+1)); the shortest has length sin^2(pi / 2^(p+1)).
  auto f = quadratic_map(4.0);
  for (double eps : {0.05, 0.01, 0.002}) {
    int want = 0;
    for (int p = 1; p <= 12; ++p) {
      double s = std::sin(std::numbers::pi / std::ldexp(1.0, p + 1));
      if (s * s > eps) want = p;
    }
    CHECK(min_branch_length_iterate(f, eps, 12).p == want);
  }
  int prev = 100;
  for (double eps = 0.001; eps < 0.5; eps *= 2) {
    int p = min_branch_length_iterate(f, eps, 14).p;
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("iterates agree with composition") {
  auto f = quadratic_map(4.0);
  auto f3 = IntervalMap::iterate(f, 3);
  for (double x : {0.1, 0.37, 0.8}) {
    CHECK(f3(x) == doctest::Approx(f(f(f(x)))));
    double d = f.derivative(x, 1) * f.derivative(f(x), 1) * f.derivative(f(f(x)), 1);
    CHECK(f3.derivative(x, 1) == doctest::Approx(d));
  }
  CHECK(f3.branch_count() == 8);
}

TEST_CASE("f' is bounded by |I|^k sup |f^(k+1)| when it vanishes k times in I") {
  // f4' vanishes once on I = [0.4, 0.6].
  auto f = quadratic_map(4.0);
  double sup = 0;
  for (int i = 0; i <= 1000; ++i) sup = std::max(sup, std::fabs(f.derivative(0.4 + 0.2 * i / 1000, 1)));
  CHECK(sup <= f.derivative_sup(2, 0.4, 0.6).value * 0.2 + 1e-12);
}

TEST_CASE("snake parameters") {
  auto s = build_snake(rate_inv_sqrt_log(), 0.01, 1.0);
  CHECK(s.params.N == 100);
  CHECK(s.params.P == doctest::Approx(std::pow(std::log(100.0), 1.5)).epsilon(1e-12));
  CHECK(s.params.M == doctest::Approx(0.01 * std::exp(-s.params.P)).epsilon(1e-12));
  CHECK(s.params.M < s.params.R);
  CHECK(s.params.R * std::exp(s.params.P) <= 1.0);
  CHECK(s.oscillation_count() == 100);
  for (double eps : {0.1, 0.001}) {
    auto t = build_snake(rate_inv_sqrt_log(), eps, 1.0);
    CHECK(t.params.N == std::llround(1 / eps));
    CHECK(t.params.M * std::exp(t.params.P) == doctest::Approx(eps).epsilon(1e-12));
  }
}

TEST_CASE("snake first derivative shrinks with eps") {
  double prev = 1e300;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    double s = build_snake(rate_inv_sqrt_log(), eps, 1.0).sampled_sup(1);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("bump is C^3 smoothstep") {
  CHECK(bump(0.5, 0) == 1.0);
  CHECK(bump(-1.5, 0) == 0.0);
  CHECK(bump(2.5, 0) == 0.0);
  for (int k = 1; k <= 3; ++k) {
    CHECK(bump(-1.0, k) == doctest::Approx(0.0));
    CHECK(bump(0.0, k) == doctest::Approx(0.0));
  }
}

TEST_CASE("map registry") {
  CHECK(parse_map("quadratic:3.5")(0.5) == doctest::Approx(0.875));
  CHECK(parse_map("poly:[0,4,-4]")(0.25) == doctest::Approx(0.75));
  CHECK(parse_map("power:2:tent")(0.2) == doctest::Approx(0.8));
  CHECK_THROWS_AS(parse_map("nosuchmap"), Error);
  CHECK_THROWS_AS(parse_map("snake:eps=0.01,bogus=1"), Error);
}
