#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "tailent/combinatorics.hpp"
#include "tailent/error.hpp"

using namespace tailent;

namespace {

// All set partitions of {0..n-1} as block-size lists.
void partitions(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> label(n, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      std::vector<int> sizes(blocks, 0);
      for (int v : label) ++sizes[v];
      visit(sizes);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
}

// B_k^l(x) as the sum over set partitions of {1..k} into l blocks of the
// product of x_{|block|}.
double partial_bell_oracle(int k, int l, const std::vector<double>& x) {
  double total = 0.0;
  partitions(k, [&](const std::vector<int>& sizes) {
    if (static_cast<int>(sizes.size()) != l) return;
    double p = 1.0;
    for (int s : sizes) p *= x[s - 1];
    total += p;
  });
  return total;
}

}  // namespace

TEST_CASE("bell numbers match set partition enumeration") {
  CHECK(bell_number(1) == 1);
  CHECK(bell_number(3) == 5);
  CHECK(bell_number(5) == 52);
  for (int r = 1; r <= 10; ++r) {
    long long count = 0;
    partitions(r, [&](const std::vector<int>&) { ++count; });
    CHECK(bell_number(r) == mpz_class(static_cast<long>(count)));
  }
}

TEST_CASE("bell numbers are sums of partial bell values at ones and below r^r") {
  const auto& t = bell_table();
  for (int r = 1; r <= 15; ++r) {
    mpz_class s = 0;
    std::vector<mpz_class> ones(r, 1);
    for (int l = 1; l <= r; ++l) s += t.partial_bell(r, l, std::span<const mpz_class>(ones.data(), r - l + 1));
    CHECK(s == bell_number(r));
    mpz_class rr;
    mpz_ui_pow_ui(rr.get_mpz_t(), r, r);
    CHECK(bell_number(r) <= rr);
  }
}

TEST_CASE("bell table size is enforced") { CHECK_THROWS_AS(bell_number(21), Error); }

TEST_CASE("partial bell examples") {
  std::vector<double> x = {1, 2};
  CHECK(partial_bell(3, 2, x) == doctest::Approx(6));
  std::vector<double> one = {1};
  for (int k = 1; k <= 8; ++k) CHECK(partial_bell(k, k, one) == doctest::Approx(1));
  CHECK_THROWS_AS(partial_bell(3, 2, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("partial bell agrees with the set partition sum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 1; k <= 8; ++k)
    for (int l = 1; l <= k; ++l) {
      std::vector<double> x(k);
      for (auto& v : x) v = u(rng);
      std::vector<double> head(x.begin(), x.begin() + (k - l + 1));
      CHECK(partial_bell(k, l, head) == doctest::Approx(partial_bell_oracle(k, l, x)).epsilon(1e-12));
    }
}

TEST_CASE("partial bell at factorials gives the closed form") {
  for (int k = 1; k <= 12; ++k)
    for (int l = 1; l <= k; ++l) {
      std::vector<mpz_class> f;
      for (int i = 1; i <= k - l + 1; ++i) f.push_back(factorial(i));
      CHECK(bell_table().partial_bell(k, l, f) == binomial(k, l) * binomial(k - 1, l - 1) * factorial(k - l));
    }
}

TEST_CASE("faa di bruno with identity and affine inner maps") {
  std::vector<double> outer = {1.5, -2.0, 0.25, 3.0};
  auto same = faa_di_bruno(outer, std::vector<double>{1, 0, 0, 0});
  for (int k = 0; k < 4; ++k) CHECK(same[k] == doctest::Approx(outer[k]));
  const double s = -1.7;
  auto scaled = faa_di_bruno(outer, std::vector<double>{s, 0, 0, 0});
  for (int k = 0; k < 4; ++k) CHECK(scaled[k] == doctest::Approx(outer[k] * std::pow(s, k + 1)));
}

TEST_CASE("faa di bruno matches finite differences of exp(sin x)") {
  const double x = 0.3, sx = std::sin(x);
  std::vector<double> outer(4, std::exp(sx));
  std::vector<double> inner = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
  auto d = faa_di_bruno(outer, inner);
  auto h = [](double t) { return std::exp(std::sin(t)); };
  // 8th-order central differences.
  const double e = 1e-2;
  const double c1[] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  const double c2[] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
  double d1 = 0, d2 = 0;
  for (int i = 0; i < 9; ++i) {
    d1 += c1[i] * h(x + (i - 4) * e);
    d2 += c2[i] * h(x + (i - 4) * e);
  }
  CHECK(d[0] == doctest::Approx(d1 / e).epsilon(1e-5));
  CHECK(d[1] == doctest::Approx(d2 / (e * e)).epsilon(1e-5));
  // Third derivative from differences of the analytic second derivative.
  auto h2 = [](double t) {
    double s = std::sin(t), c = std::cos(t);
    return std::exp(s) * (c * c - s);
  };
  double d3 = 0;
  for (int i = 0; i < 9; ++i) d3 += c1[i] * h2(x + (i - 4) * e);
  CHECK(d[2] == doctest::Approx(d3 / e).epsilon(1e-5));
}

TEST_CASE("faa di bruno is associative across three maps") {
  // f = exp, g = sin, h = x^2 + x at x = 0.4.
  const double x = 0.4, hx = x * x + x, ghx = std::sin(hx);
  std::vector<double> hd = {2 * x + 1, 2, 0, 0, 0};
  std::vector<double> gd = {std::cos(hx), -std::sin(hx), -std::cos(hx), std::sin(hx), std::cos(hx)};
  std::vector<double> fd(5, std::exp(ghx));
  auto gh = faa_di_bruno(gd, hd);
  auto left = faa_di_bruno(fd, gh);
  std::vector<double> gd_at(5);
  gd_at = gd;
  auto fg = faa_di_bruno(fd, gd_at);  // (f o g)^(k) at h(x)
  auto right = faa_di_bruno(fg, hd);
  for (int k = 0; k < 5; ++k) CHECK(left[k] == doctest::Approx(right[k]).epsilon(1e-10));
}
