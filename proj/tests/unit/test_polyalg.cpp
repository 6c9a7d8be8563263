#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tailent/error.hpp"
#include "tailent/qpoly.hpp"
#include "tailent/reparam.hpp"
#include "tailent/roots.hpp"

using namespace tailent;

namespace {

QPoly q(std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

// Integral of b t^(r-1) (1-t)^(r-1) from 0, by expanding (1-t)^(r-1) binomially.
QPoly q_oracle(int r) {
  mpz_class b = 1;
  for (int i = r; i <= 2 * r - 1; ++i) b *= i;
  for (int i = 2; i <= r - 1; ++i) b /= i;
  std::vector<mpq_class> c(2 * r, 0);
  mpz_class binom = 1;
  for (int j = 0; j <= r - 1; ++j) {
    mpq_class term = mpq_class(binom * b) / (r + j);
    c[r + j] = (j % 2 == 0) ? term : mpq_class(-term);
    binom = binom * (r - 1 - j) / (j + 1);
  }
  return QPoly(std::move(c));
}

}  // namespace

TEST_CASE("Q_r small cases") {
  auto q1 = q_polynomial(1);
  CHECK(q1.q == q({0, 1}));
  CHECK(q1.b == 1);
  auto q2 = q_polynomial(2);
  CHECK(q2.q == q({0, 0, 3, -2}));
  CHECK(q2.b == 6);
  auto q3 = q_polynomial(3);
  CHECK(q3.q == q({0, 0, 0, 10, -15, 6}));
  CHECK(q3.b == 30);
  CHECK_THROWS_AS(q_polynomial(26), Error);
}

TEST_CASE("Q_r agrees with the binomial expansion of its integral") {
  for (int r = 1; r <= 14; ++r) CHECK(q_polynomial(r).q == q_oracle(r));
}

TEST_CASE("Q_r is a monotone bijection with the functional equation") {
  for (int r = 1; r <= 12; ++r) {
    const QPoly Q = q_polynomial(r).q;
    CHECK(Q.degree() == 2 * r - 1);
    CHECK(QPoly::constant(1) - Q.compose(q({1, -1})) == Q);
    const QPoly d = Q.derivative();
    for (int i = 0; i <= 200; ++i) CHECK(d(mpq_class(i, 200)) >= 0);
    for (int k = 1; k < r; ++k) {
      CHECK(Q.derivative(k)(mpq_class(0)) == 0);
      CHECK(Q.derivative(k)(mpq_class(1)) == 0);
    }
  }
}

TEST_CASE("Q_r lies above x^r (1-x)^(r-1)") {
  for (int r = 1; r <= 12; ++r) {
    DPoly Q = to_double(q_polynomial(r).q);
    for (int i = 0; i < 1000; ++i) {
      double x = i / 1000.0;
      CHECK(Q(x) >= std::pow(x, r) * std::pow(1 - x, r - 1) - 1e-15);
    }
  }
}

TEST_CASE("R_i recursion") {
  CHECK(q_derivative_factorization(5, 0) == QPoly::constant(1));
  CHECK(q_derivative_factorization(3, 1) == q({3, -6}));
  for (int r = 2; r <= 10; ++r)
    for (int i = 0; i < r; ++i) CHECK(q_derivative_factorization(r, i).degree() == i);
  // S^(r-i) R_i is the i-th derivative of S^r.
  const QPoly S = s_polynomial();
  for (int r = 1; r <= 8; ++r) {
    QPoly Sr = QPoly::constant(1);
    for (int t = 0; t < r; ++t) Sr = Sr * S;
    for (int i = 0; i < r; ++i) {
      QPoly Sp = QPoly::constant(1);
      for (int t = 0; t < r - i; ++t) Sp = Sp * S;
      CHECK(Sp * q_derivative_factorization(r, i) == Sr.derivative(i));
    }
  }
}

TEST_CASE("R_1 has sup norm r") {
  // R_1 = r (1 - 2X), so the sup is r, attained at both endpoints.
  for (int r = 2; r <= 10; ++r) {
    DPoly R = to_double(q_derivative_factorization(r, 1));
    CHECK(std::fabs(R(0.0)) == doctest::Approx(r));
    CHECK(std::fabs(R(1.0)) == doctest::Approx(r));
  }
}

TEST_CASE("real roots of products of known linear factors") {
  QPoly p = QPoly::constant(1);
  for (int i = 1; i <= 6; ++i) p = p * QPoly({mpq_class(-i, 7), mpq_class(1)});
  p = p * QPoly({mpq_class(-1, 3), mpq_class(1)}) * QPoly({mpq_class(-1, 3), mpq_class(1)});
  auto roots = real_roots(p, 0.0, 1.0);
  std::vector<double> want = {1.0 / 7, 2.0 / 7, 1.0 / 3, 3.0 / 7, 4.0 / 7, 5.0 / 7, 6.0 / 7};
  REQUIRE(roots.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(roots[i] == doctest::Approx(want[i]).epsilon(1e-12));
  CHECK(square_free_part(p).degree() == 7);
  // Endpoint roots are included.
  auto r2 = real_roots(q({0, 1, -1}), 0.0, 1.0);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == 0.0);
  CHECK(r2[1] == 1.0);
}

TEST_CASE("real roots of x^2 - 2 bracket sqrt 2") {
  auto r = real_roots(q({-2, 0, 1}), 0.0, 2.0, 1e-14);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("atlas of a constant is a single identity chart") {
  std::vector<QPoly> P = {QPoly::constant(mpq_class(1, 2))};
  Atlas a = reparametrize_1d(P, 1);
  REQUIRE(a.charts.size() == 1);
  CHECK(chart_value(*a.context, a.charts[0], 0.0) == doctest::Approx(0.0));
  CHECK(chart_value(*a.context, a.charts[0], 0.3) == doctest::Approx(0.3));
  CHECK(chart_value(*a.context, a.charts[0], 1.0) == doctest::Approx(1.0));
}

TEST_CASE("atlas of x covers [0,1] with unit norms") {
  Atlas a = reparametrize_1d({q({0, 1})}, 1);
  AtlasReport rep = verify_atlas(a, 10000);
  CHECK(rep.coverage_defect == 0);
  CHECK(rep.max_norm_p <= 1 + 1e-6);
  CHECK(rep.max_norm_phi <= 1 + 1e-6);
}

TEST_CASE("atlas of 64 x^3 (1-x)^3 - offset covers its preimage") {
  // 64 x^3 (1-x)^3 - 1/2: expand (x - x^2)^3.
  QPoly s = q({0, 1, -1});
  QPoly p = s * s * s * mpq_class(64) - QPoly::constant(mpq_class(1, 2));
  Atlas a = reparametrize_1d({p}, 6);
  AtlasReport rep = verify_atlas(a, 10000);
  CHECK(rep.coverage_defect == 0);
  CHECK(rep.grid_points_inside > 0);
  CHECK(rep.max_norm_p <= 1 + 1e-6);
  CHECK(rep.max_norm_phi <= 1 + 1e-6);
  // Independent grid membership: every grid point with p(x) in [0,1] lies in a chart image.
  DPoly pd = to_double(p);
  std::vector<std::pair<double, double>> images;
  for (const auto& c : a.charts) {
    double u = chart_value(*a.context, c, 0.0), v = chart_value(*a.context, c, 1.0);
    images.emplace_back(std::min(u, v), std::max(u, v));
  }
  int missed = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = (i + 0.5) / 10000;
    double y = pd(x);
    if (y < 0 || y > 1) continue;
    bool in = false;
    for (auto [lo, hi] : images) in = in || (x >= lo - 1e-9 && x <= hi + 1e-9);
    missed += !in;
  }
  CHECK(missed == 0);
}

TEST_CASE("random degree-5 pairs are covered and deleting a chart is detected") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> u(-64, 64);
  int checked = 0;
  for (int trial = 0; trial < 20 && checked < 3; ++trial) {
    std::vector<QPoly> P;
    for (int j = 0; j < 2; ++j) {
      std::vector<mpq_class> c;
      for (int i = 0; i <= 5; ++i) c.emplace_back(u(rng), 32);
      P.emplace_back(std::move(c));
    }
    Atlas a = reparametrize_1d(P, 5);
    AtlasReport rep = verify_atlas(a, 10000);
    CHECK(rep.coverage_defect == 0);
    if (rep.grid_points_inside < 100 || a.charts.size() < 2) continue;
    ++checked;
    Atlas cut = a;
    // Drop the chart with the widest image.
    std::size_t widest = 0;
    double wmax = -1;
    for (std::size_t i = 0; i < cut.charts.size(); ++i) {
      double w = std::fabs(chart_value(*cut.context, cut.charts[i], 1.0) - chart_value(*cut.context, cut.charts[i], 0.0));
      if (w > wmax) {
        wmax = w;
        widest = i;
      }
    }
    cut.charts.erase(cut.charts.begin() + static_cast<long>(widest));
    CHECK(verify_atlas(cut, 10000).coverage_defect > 0);
  }
  CHECK(checked > 0);
}

TEST_CASE("atlas text round trip") {
  QPoly s = q({0, 1, -1});
  Atlas a = reparametrize_1d({s * mpq_class(4), q({0, 1})}, 3);
  std::stringstream ss;
  write_atlas(ss, a);
  Atlas b = read_atlas(ss);
  REQUIRE(b.charts.size() == a.charts.size());
  std::stringstream again;
  write_atlas(again, b);
  std::stringstream first;
  write_atlas(first, a);
  CHECK(first.str() == again.str());
  CHECK(verify_atlas(b, 2000).coverage_defect == 0);
}

TEST_CASE("degree above r is rejected") { CHECK_THROWS_AS(reparametrize_1d({q({0, 0, 1})}, 1), Error); }
