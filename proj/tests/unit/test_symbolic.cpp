#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "tailent/error.hpp"
#include "tailent/symbolic.hpp"

using namespace tailent;

namespace {

long long brute_words(int alphabet, const std::vector<Word>& forbidden, int n) {
  long long total = 0;
  Word w(n, 0);
  for (;;) {
    if (avoids(w, forbidden)) ++total;
    int i = n - 1;
    while (i >= 0 && w[i] == alphabet - 1) w[i--] = 0;
    if (i < 0) return total;
    ++w[i];
  }
}

bool contains(const Word& w, const Word& f) {
  for (std::size_t s = 0; s + f.size() <= w.size(); ++s)
    if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(s))) return true;
  return false;
}

// Every cyclic factor of w of length <= max_len avoids the words.
bool cyclic_ok(const Word& w, const std::vector<Word>& forbidden) {
  Word ww = w;
  ww.insert(ww.end(), w.begin(), w.end());
  for (const auto& f : forbidden)
    if (contains(ww, f)) return false;
  return true;
}

}  // namespace

TEST_CASE("full and golden mean shifts") {
  Sft full = sft_from_forbidden_words(2, {});
  CHECK(sft_entropy(full) == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  Sft g = sft_from_forbidden_words(2, {parse_word("11")});
  REQUIRE(g.blocks().size() == 2);
  Eigen::MatrixXd A = Eigen::MatrixXd(g.matrix());
  CHECK(A(0, 0) == 1);
  CHECK(A(0, 1) == 1);
  CHECK(A(1, 0) == 1);
  CHECK(A(1, 1) == 0);
  CHECK(sft_entropy(g) == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-10));
}

TEST_CASE("block coding for 01000") {
  Sft s = sft_from_forbidden_words(2, {parse_word("01000")});
  CHECK(s.order() == 4);
  CHECK(s.blocks().size() == 16);
  // Transition u -> v exists iff u[1:] == v[:-1] and u + v.back() != 01000.
  const Word bad = parse_word("01000");
  for (std::size_t i = 0; i < s.blocks().size(); ++i) {
    const Word& u = s.blocks()[i];
    for (std::size_t j = 0; j < s.blocks().size(); ++j) {
      const Word& v = s.blocks()[j];
      bool overlap = std::equal(u.begin() + 1, u.end(), v.begin());
      Word joined = u;
      joined.push_back(v.back());
      bool want = overlap && joined != bad;
      CHECK((s.matrix().coeff(static_cast<long>(i), static_cast<long>(j)) != 0) == want);
    }
  }
}

TEST_CASE("empty language is degenerate") {
  CHECK_THROWS_AS(sft_from_forbidden_words(2, {parse_word("0"), parse_word("1")}), Error);
}

TEST_CASE("word counts against enumeration") {
  for (int p = 2; p <= 7; ++p) {
    Sft y = build_Yp(p);
    Word f(p, 0);
    f[1] = 1;
    auto wc = word_counts(y, 14);
    for (int n = y.order(); n <= 14; ++n)
      CHECK(static_cast<long long>(std::llround(wc[n - y.order()])) == brute_words(2, {f}, n));
  }
  // Avoiding 01: words 1^a 0^b, n + 1 of them.
  auto wc = word_counts(build_Yp(2), 30);
  CHECK(wc.back() == doctest::Approx(31));
  CHECK(sft_entropy(build_Yp(2)) == doctest::Approx(0.0));
}

TEST_CASE("Y_p entropies") {
  double prev = 0;
  for (int p = 3; p <= 12; ++p) {
    double h = sft_entropy(build_Yp(p));
    double ref = std::log(std::ldexp(1.0, p) - 1) / p;
    CHECK(std::fabs(h - ref) <= std::ldexp(1.0, 1 - p));
    CHECK(h < std::numbers::ln2);
    CHECK(h >= prev);
    prev = h;
  }
  // Y_3: words avoiding 010 have growth rate the largest root of x^3 - 2x^2 + x - 1.
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (lo + hi);
    (m * m * m - 2 * m * m + m - 1 > 0 ? hi : lo) = m;
  }
  CHECK(sft_entropy(build_Yp(3)) == doctest::Approx(std::log(lo)).epsilon(1e-10));
  CHECK(std::fabs(sft_entropy(build_Yp(8)) - std::numbers::ln2) <= std::ldexp(1.0, -8) * 2);
}

TEST_CASE("power iteration and word counts agree") {
  std::vector<Sft> shifts = {sft_from_forbidden_words(2, {parse_word("11")}), build_Yp(3), build_Yp(5),
                             sft_from_forbidden_words(3, {parse_word("00"), parse_word("121")})};
  for (const auto& s : shifts) {
    double h = sft_entropy(s);
    CHECK(std::fabs(word_count_entropy(s, 40) - h) <= 1e-4);
    CHECK(h >= 0);
    CHECK(h <= std::log(static_cast<double>(s.alphabet())) + 1e-12);
  }
}

TEST_CASE("power rule") {
  for (const auto& s : {sft_from_forbidden_words(2, {parse_word("11")}), build_Yp(3)})
    for (int p = 1; p <= 4; ++p) CHECK(power_word_count_entropy(s, p) == doctest::Approx(p * sft_entropy(s)).epsilon(1e-6));
}

TEST_CASE("mixing exponents") {
  auto g = mixing_exponent(sft_from_forbidden_words(2, {parse_word("11")}));
  CHECK(g.mixing);
  // [[1,1],[1,0]]^2 = [[2,1],[1,1]] is the first positive power.
  CHECK(g.exponent == 2);
  CHECK(mixing_exponent(sft_from_forbidden_words(2, {})).exponent == 1);
  CHECK_FALSE(mixing_exponent(sft_from_forbidden_words(2, {parse_word("11"), parse_word("00")})).mixing);
}

TEST_CASE("periodic shadows") {
  Sft full = sft_from_forbidden_words(2, {});
  auto w = periodic_shadow(full, parse_word("0"), parse_word("1"), 2);
  CHECK(w.period == 10);
  CHECK(w.word.size() == 10);
  CHECK(w.word[w.centre_u] == 0);
  CHECK(w.word[w.centre_v] == 1);
  CHECK(w.centre_v == w.centre_u + 2 * w.n + w.n1);

  std::vector<Word> gm = {parse_word("11")};
  Sft golden = sft_from_forbidden_words(2, gm);
  for (int n = 3; n <= 6; ++n) {
    auto s = periodic_shadow(golden, parse_word("00"), parse_word("10"), n);
    CHECK(s.period == 4 * n + 2 * s.n1);
    CHECK(static_cast<int>(s.word.size()) == s.period);
    if (n >= s.n1) {
      CHECK(s.period >= 4 * n);
      CHECK(s.period <= 6 * n);
    }
    CHECK(periodic_admissible(golden, s.word));
    CHECK(cyclic_ok(s.word, gm));
  }
  CHECK_THROWS_AS(periodic_shadow(sft_from_forbidden_words(2, {parse_word("11"), parse_word("00")}),
                                  parse_word("0"), parse_word("1"), 2),
                  Error);
}

TEST_CASE("thickness") {
  CHECK(thickness_exact(remove_middle(mpq_class(1, 3), 12), 12).value() == 1);
  CHECK(thickness(remove_middle(mpq_class(1, 3), 12), 12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(thickness_exact(remove_middle(mpq_class(1, 2), 8), 8).value() == mpq_class(1, 2));
  CHECK(std::isinf(thickness(CantorApprox({mpq_class(0), mpq_class(1)}), 0)));
  auto c = parse_cantor("remove-middle 1/5 depth 6");
  CHECK(c.depth() == 6);
  CHECK(thickness_exact(c, 6).value() == 2);
  // Affine images keep the thickness exactly.
  CHECK(thickness_exact(c.affine(mpq_class(7, 3), mpq_class(-5, 2)), 6).value() == 2);
}

TEST_CASE("gap lemma alternatives") {
  auto F = remove_middle(mpq_class(1, 5), 5);
  // K inside the central gap (2/5, 3/5) of F.
  auto K = remove_middle(mpq_class(1, 5), 5, mpq_class(21, 50), mpq_class(29, 50));
  CHECK(gap_lemma_check(K, F, 5).alternative == GapAlternative::kKInGapOfF);
  CHECK(gap_lemma_check(F, K, 5).alternative == GapAlternative::kFInGapOfK);
  // Linked hulls.
  auto L = remove_middle(mpq_class(1, 5), 5, mpq_class(1, 2), mpq_class(3, 2));
  auto g = gap_lemma_check(L, F, 5);
  CHECK(g.alternative == GapAlternative::kIntersect);
  for (int i = 0; i <= 5; ++i) {
    bool meet = false;
    for (const auto& a : L.level(i))
      for (const auto& b : F.level(i)) meet = meet || (a.first < b.second && b.first < a.second);
    CHECK(g.interior[i] == meet);
  }
  auto third = remove_middle(mpq_class(1, 3), 5);
  CHECK_THROWS_AS(gap_lemma_check(third, third.affine(1, mpq_class(1, 2)), 5), Error);
}
