#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tailent/entropy.hpp"
#include "tailent/error.hpp"
#include "tailent/interval_map.hpp"
#include "tailent/numeric.hpp"

using namespace tailent;

namespace {

const double kLn2 = std::numbers::ln2;

double slope_of_counts(const IntervalMap& f, double eps, int n_lo, int n_hi, int bits) {
  std::vector<double> x, y;
  for (int n = n_lo; n <= n_hi; ++n) {
    x.push_back(n);
    y.push_back(std::log(static_cast<double>(spanning_count(f, n, eps, bits).spanning)));
  }
  return fit_line(x, y).slope;
}

// Brute-force (n, eps) cover count for the identity: orbits are constant, so
// a greedy left-to-right cover of the grid is optimal.
long long identity_cover(double eps, int bits) {
  auto g = uniform_grid(std::size_t{1} << bits);
  long long count = 0;
  double covered_to = -1;
  for (double x : g)
    if (x >= covered_to) {
      ++count;
      covered_to = x + 2 * eps;
    }
  return count;
}

}  // namespace

TEST_CASE("identity spanning counts") {
  auto id = identity_map();
  CHECK(spanning_count(id, 5, 0.25, 14).spanning == 2);
  for (double eps : {0.1, 0.05, 0.013}) CHECK(spanning_count(id, 3, eps, 12).spanning == identity_cover(eps, 12));
  auto e = eps_entropy(id, 0.05);
  CHECK(e.upper.slope == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(e.lower.slope == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("grid resolution is enforced") { CHECK_THROWS_AS(spanning_count(tent_map(), 2, 1e-4, 8), Error); }

TEST_CASE("spanning and separated sandwich") {
  for (const auto& f : {tent_map(), quadratic_map(4.0), parse_map("poly:[0,3,-1,-2]")})
    for (double eps : {0.1, 0.03})
      for (int n : {1, 3, 6, 9}) {
        auto a = spanning_count(f, n, eps, 13);
        auto b = spanning_count(f, n, 2 * eps, 13);
        CHECK(b.separated <= a.spanning);
        CHECK(a.spanning <= a.separated);
      }
}

TEST_CASE("spanning counts are monotone in n and eps") {
  auto f = quadratic_map(4.0);
  long long prev = 0;
  for (int n = 1; n <= 12; ++n) {
    long long c = spanning_count(f, n, 0.05, 13).spanning;
    CHECK(c >= prev);
    prev = c;
  }
  prev = 1LL << 40;
  for (double eps = 0.01; eps < 0.4; eps *= 1.6) {
    long long c = spanning_count(f, 6, eps, 13).spanning;
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("lap sweep counts grow at rate log 2") {
  CHECK(slope_of_counts(tent_map(), std::ldexp(1.0, -4), 4, 10, 16) == doctest::Approx(kLn2).epsilon(0.08));
  std::vector<double> x, y;
  for (int n = 6; n <= 12; ++n) {
    x.push_back(n);
    y.push_back(std::log(static_cast<double>(lap_sweep_count(quadratic_map(4.0), n, std::ldexp(1.0, -6)))));
  }
  CHECK(std::fabs(fit_line(x, y).slope - kLn2) <= 0.07);
}

TEST_CASE("eps entropy of the tent map is bracketed") {
  double eps = std::ldexp(1.0, -5), L = 5 * kLn2;
  auto e = eps_entropy(tent_map(), eps);
  CHECK(e.upper.slope >= kLn2 - 2 * kLn2 / L);
  CHECK(e.upper.slope <= kLn2 + 1e-9);
  CHECK(e.upper.direction == Bias::kUpper);
  CHECK(e.lower.direction == Bias::kLower);
}

TEST_CASE("eps entropy of f4 does not drop as eps shrinks") {
  auto f = quadratic_map(4.0);
  auto coarse = eps_entropy(f, std::ldexp(1.0, -5));
  auto fine = eps_entropy(f, std::ldexp(1.0, -8));
  CHECK(fine.upper.slope >= coarse.upper.slope - 1e-9);
}

TEST_CASE("tail estimate of the identity is zero") {
  TailOptions o;
  o.n_max = 12;
  o.x_count = 32;
  CHECK(tail_entropy_estimate(identity_map(), 0.1, o).rate == 0.0);
}

TEST_CASE("tail estimates sit below the branch-length remark bound") {
  TailOptions o;
  o.n_max = 16;
  o.x_count = 64;
  for (const auto& f : {tent_map(), quadratic_map(4.0)})
    for (double eps : {std::ldexp(1.0, -3), std::ldexp(1.0, -4)}) {
      int p = min_branch_length_iterate(f, eps, 30).p;
      CHECK(tail_entropy_estimate(f, eps, o).rate <= kLn2 / p + 0.05);
    }
}

TEST_CASE("closed-form bounds for f4") {
  auto f = quadratic_map(4.0);
  CHECK(bound_quasionedim(f, 0.01) == doctest::Approx(std::log(8.0) / std::log(100.0)));
  CHECK(bound_wmulti(f, 0.01) == doctest::Approx(kLn2 * std::log(4.0) / std::log(12.5)));
  CHECK(bound_quasionedim(identity_map(), 0.1, 1) == 0.0);
  CHECK_THROWS_AS(bound_wmulti(f, 0.6), Error);
  CHECK_THROWS_AS(bound_wmulti(tent_map(), 0.1), Error);
  // w(f4', 0.2) = 1.6 >= 1 makes the denominator vanish.
  CHECK(std::isinf(bound_wmulti(f, 0.2)));
}

TEST_CASE("branch product bound") {
  CHECK(branch_product_bound(identity_map(), 0.4, 0.1, 20) == 0.0);
  auto f = quadratic_map(4.0);
  double v = branch_product_bound(f, 0.3, 0.05, 50);
  CHECK(v >= 0.0);
  CHECK(v <= kLn2 + 1e-12);
  double prev = 0;
  for (double eps = 0.001; eps < 0.5; eps *= 2) {
    double b = branch_product_bound(f, 0.3, eps, 30);
    CHECK(b >= prev - 1e-12);
    prev = b;
  }
}

TEST_CASE("derivative growth rate") {
  CHECK(growth_rate_R(identity_map()) == doctest::Approx(0.0));
  CHECK(growth_rate_R(tent_map()) == doctest::Approx(kLn2).epsilon(1e-9));
  double r = growth_rate_R(quadratic_map(4.0));
  CHECK(r <= std::log(4.0) + 1e-9);
  CHECK(r >= kLn2 - 1e-9);
}

TEST_CASE("power bound for the identity") {
  TailOptions o;
  o.n_max = 8;
  o.x_count = 16;
  auto c = power_bound_check(identity_map(), 0.1, 2, o);
  CHECK(c.est_f == 0.0);
  CHECK(c.est_fp == 0.0);
  CHECK(c.holds);
}

TEST_CASE("continuity modulus search") {
  ModulusOptions o;
  o.p_cap = 12;
  o.grid_bits = 10;
  // Identity: r_p is constant, so p is the least p with log(r)/p <= 1/|log eps|.
  auto hl = [](double e) { return 1.0 / std::fabs(std::log(e)); };
  bool found = false;
  int p = least_p(identity_map(), 0.1, hl, o, &found);
  long long r = spanning_count(identity_map(), 1, 0.1 / 4, o.grid_bits).spanning;
  int want = 1;
  while (std::log(static_cast<double>(r)) / want > hl(0.1)) ++want;
  CHECK(found);
  CHECK(p == want);
  // A huge hloc is met at p = 1.
  CHECK(least_p(tent_map(), 0.1, [](double) { return 100.0; }, o) == 1);
}
