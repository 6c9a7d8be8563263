#include <doctest.h>

#include <cmath>

#include "tailent/error.hpp"
#include "tailent/rates.hpp"

using namespace tailent;

TEST_CASE("log convexity") {
  CHECK(is_log_convex(weight_kpow2(), 50));
  CHECK(is_log_convex(weight_const(3.0), 50));
  auto bad = weight_from_logs("bad", {1.0L, std::log(10.0L), 0.0L, std::log(10.0L), 10.0L});
  CHECK_FALSE(is_log_convex(bad, 3));
  CHECK_THROWS_AS(is_log_convex(weight_kpow2(), 1), Error);
}

TEST_CASE("inverse function examples") {
  auto sq = weight_exp_square(std::exp(1.0));
  CHECK(g_inverse(sq, 2.5) == 2);
  CHECK(g_inverse(sq, 10) == 10);
  CHECK(g_inverse(weight_kpow2(), 20) == 9);
  // Direct scan oracle.
  for (double x : {3.0, 17.5, 55.0, 400.0}) {
    long long want = 0;
    for (int k = 1; k < 2000; ++k)
      if (k * std::log(static_cast<double>(k)) <= x) want = k;
    CHECK(g_inverse(weight_kpow2(), x) == want);
  }
  for (int j = 1; j <= 6; ++j) {
    double x = std::pow(10.0, j);
    CHECK(g_inverse(weight_kpow2(), x) >= x / std::log(x));
  }
  CHECK_THROWS_AS(g_inverse(weight_const(5.0), 1.0), Error);
}

TEST_CASE("inverse function properties") {
  auto w = weight_kpow2();
  long long prev = 0;
  for (double x = 0.1; x < 1e4; x *= 1.3) {
    long long g = g_inverse(w, x);
    CHECK(g >= prev);
    prev = g;
  }
  for (int l = 1; l <= 100; ++l) CHECK(g_inverse(w, w.a(l)) >= l);
  // Larger a_k gives smaller G.
  auto big = weight_from_logs("big", [] {
    std::vector<long double> v;
    for (int k = 0; k <= 200; ++k) v.push_back(1.0L + 2.0L * k * k);
    return v;
  }());
  auto small = weight_exp_square(std::exp(1.0));
  for (double x = 0.5; x < 150; x *= 1.7) CHECK(g_inverse(big, x, 200) <= g_inverse(small, x, 200));
}

TEST_CASE("log-convex weight identities") {
  auto w = weight_kpow2();
  for (int k = 1; k < 40; ++k) {
    CHECK((w.log_m(k + 1) - w.log_m0()) / (k + 1) >= (w.log_m(k) - w.log_m0()) / k - 1e-12L);
    for (int l = 1; k + l <= 40; ++l) CHECK(w.log_m(k) + w.log_m(l) <= w.log_m0() + w.log_m(k + l) + 1e-9L);
  }
}

TEST_CASE("admissibility") {
  // k^(k^2) inflated by e^(k^2): a_k = k log k + k.
  auto inflated = weight_from_logs("inflated", [] {
    std::vector<long double> v;
    for (int k = 0; k <= 60; ++k) {
      long double kk = k;
      v.push_back(1.0L + (k ? kk * kk * std::log(kk) : 0.0L) + kk * kk);
    }
    return v;
  }());
  double D = least_admissible_D(inflated, 1, 2);
  REQUIRE(std::isfinite(D));
  CHECK(is_admissible(inflated, 1, 2, D));
  CHECK_FALSE(is_admissible(inflated, 1, 2, D * 0.999));
  CHECK_FALSE(is_admissible(weight_const(std::exp(2.0)), 1, 1, 1e6));
  CHECK_FALSE(is_admissible(weight_exp_square(1.0), 1, 1, 1e6));
  CHECK_THROWS_AS(is_admissible(inflated, 2, 2, 1.0), Error);
  auto custom = [](int k, int, int) { return static_cast<double>(k); };
  CHECK_NOTHROW(is_admissible(inflated, 2, 2, 1.0, 50, custom));
}

TEST_CASE("rate bound") {
  auto sq = weight_exp_square(std::exp(1.0));
  auto b = rate_bound_gen(sq, 1, 1, 1.0, std::exp(-20.0));
  CHECK(b.G == 10);
  CHECK(b.value == doctest::Approx(0.3));
  CHECK(b.surrogate);
  CHECK(rate_bound_gen(sq, 1, 3, 1.0, std::exp(-20.0), true).value == doctest::Approx(0.9));
  CHECK_THROWS_AS(rate_bound_gen(sq, 1, 1, 1.0, 0.5), Error);
  auto w = weight_kpow2();
  double prev = 1e300;
  for (int k = 10; k <= 200; k += 10) {
    double v = rate_bound_gen(w, 1, 1, 1.0, std::ldexp(1.0, -k)).value;
    CHECK(v <= prev);
    prev = v;
  }
  // Shape: bound |log eps| / log|log eps| stays bounded at 2^-40 and beyond.
  for (int k : {40, 80, 160, 320}) {
    double L = k * std::log(2.0);
    double ratio = rate_bound_gen(w, 1, 1, 1.0, std::ldexp(1.0, -k)).value * L / std::log(L);
    CHECK(ratio > 0.5);
    CHECK(ratio < 20);
  }
}

TEST_CASE("iterate and C^r bounds") {
  CHECK(iterate_bound_main(1, 2, 1, 1) == doctest::Approx(std::log(2.0) + std::log(8.0) + std::log(256.0)));
  for (int r = 2; r <= 8; ++r) {
    CHECK(iterate_bound_main(10, r, 1, 1) > iterate_bound_main(2, r, 1, 1));
    // Norms below 1 only enter through log+.
    CHECK(iterate_bound_main(0.5, r, 1, 1) == doctest::Approx(iterate_bound_main(1, r, 1, 1)));
  }
  CHECK_THROWS_AS(iterate_bound_main(1, 2, 2, 2), Error);
  CHECK(cr_bound_buzzi(0, 3, 1) == 0);
  CHECK(cr_bound_buzzi(std::log(2.0), 1, 1) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("weight from a rate") {
  FromRateOptions o;
  o.check_concavity = false;
  auto wr = weight_from_rate(parse_rate("pow:1/7"), 0.01, o);
  for (int k = 1; k <= 30; ++k)
    CHECK(static_cast<double>(wr.weight.log_m(k)) ==
          doctest::Approx(0.01 + 7.0 * k * std::log(k / 0.01)).epsilon(1e-9));
  CHECK(is_log_convex(wr.weight, 50));
  CHECK_FALSE(wr.concave);
  CHECK_THROWS_AS(weight_from_rate(parse_rate("pow:1/7"), 0.01), Error);
  // Companion: 7k log(2BDk) + 2 log M_k - log M0.
  CHECK(static_cast<double>(wr.companion.log_m(3)) ==
        doctest::Approx(21 * std::log(6.0) + 2 * static_cast<double>(wr.weight.log_m(3)) - 0.01));
  auto w1 = weight_from_rate(parse_rate("pow:1/7"), 1.0, o).weight;
  for (int j = 2; j <= 6; ++j) {
    double eps = std::pow(10.0, -j);
    long long g = g_inverse(w1, 3 * std::fabs(std::log(eps)));
    REQUIRE(g > 0);
    CHECK(static_cast<double>(w1.log_m0()) / g <= std::pow(eps, 1.0 / 7));
  }
  // 1/a(e^-s) = s^(1/2) is concave for a = |log eps|^(-1/2).
  CHECK(weight_from_rate(rate_inv_sqrt_log(), 1.0).concave);
}

TEST_CASE("weight specs") {
  CHECK(parse_weight("kpow2").name() == "kpow2");
  CHECK(g_inverse(parse_weight("expsq:2.718281828459045"), 4.5) == 4);
  CHECK_THROWS_AS(parse_weight("fromrate:a=pow:1/7,logDT=1"), Error);
  CHECK_NOTHROW(parse_weight("fromrate:a=pow:1/7,logDT=1,check=0"));
  CHECK_THROWS_AS(parse_weight("nope"), Error);
  try {
    parse_weight("fromrate:a=pow:1/7,bogus=1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
  }
}
