#include <cmath>
#include <string>

#include "tailent/combinatorics.hpp"
#include "tailent/error.hpp"

namespace tailent {
namespace {

// Enumerates j_1..j_len with sum j = l and sum i*j_i = k, largest index first.
void enumerate(int k, int l, int len, int i, std::vector<int>& j, std::vector<std::vector<int>>& out) {
  if (i == 0) {
    if (k == 0 && l == 0) out.push_back(j);
    return;
  }
  for (int c = std::min(l, k / i); c >= 0; --c) {
    j[i - 1] = c;
    enumerate(k - c * i, l - c, len, i - 1, j, out);
  }
  j[i - 1] = 0;
}

}  // namespace

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

BellTable::BellTable(int k_max) : k_max_(k_max) {
  if (k_max < 1) fail(ErrorKind::kArgument, "BellTable needs k_max >= 1");
  terms_.resize(k_max + 1);
  bell_.assign(k_max + 1, 0);
  bell_[0] = 1;
  for (int k = 1; k <= k_max; ++k) {
    terms_[k].resize(k + 1);
    mpz_class kfact = factorial(k);
    for (int l = 1; l <= k; ++l) {
      int len = k - l + 1;
      std::vector<int> j(len, 0);
      std::vector<std::vector<int>> found;
      enumerate(k, l, len, len, j, found);
      for (auto& js : found) {
        mpz_class denom = 1;
        for (int i = 1; i <= len; ++i) {
          if (js[i - 1] == 0) continue;
          mpz_class ifact = factorial(i), p;
          mpz_pow_ui(p.get_mpz_t(), ifact.get_mpz_t(), static_cast<unsigned long>(js[i - 1]));
          denom *= factorial(js[i - 1]) * p;
        }
        BellTerm t;
        t.j = js;
        t.coefficient = kfact / denom;
        t.coefficient_d = t.coefficient.get_d();
        bell_[k] += t.coefficient;
        terms_[k][l].push_back(std::move(t));
      }
    }
  }
}

const std::vector<BellTerm>& BellTable::terms(int k, int l) const {
  if (k < 1 || k > k_max_) fail(ErrorKind::kTableSize, "order " + std::to_string(k) + " beyond table");
  if (l < 1 || l > k) fail(ErrorKind::kArgument, "partial Bell needs 1 <= l <= k");
  return terms_[k][l];
}

const mpz_class& BellTable::bell_number(int r) const {
  if (r < 1 || r > k_max_) fail(ErrorKind::kTableSize, "Bell number B_" + std::to_string(r) + " beyond table");
  return bell_[r];
}

double BellTable::partial_bell(int k, int l, std::span<const double> x) const {
  const auto& ts = terms(k, l);
  if (x.size() != static_cast<std::size_t>(k - l + 1))
    fail(ErrorKind::kArgument, "partial_bell expects k-l+1 arguments");
  double sum = 0.0;
  for (const auto& t : ts) {
    double prod = t.coefficient_d;
    for (std::size_t i = 0; i < t.j.size(); ++i)
      if (t.j[i]) prod *= std::pow(x[i], t.j[i]);
    sum += prod;
  }
  return sum;
}

mpz_class BellTable::partial_bell(int k, int l, std::span<const mpz_class> x) const {
  const auto& ts = terms(k, l);
  if (x.size() != static_cast<std::size_t>(k - l + 1))
    fail(ErrorKind::kArgument, "partial_bell expects k-l+1 arguments");
  mpz_class sum = 0;
  for (const auto& t : ts) {
    mpz_class prod = t.coefficient;
    for (std::size_t i = 0; i < t.j.size(); ++i) {
      if (!t.j[i]) continue;
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), x[i].get_mpz_t(), static_cast<unsigned long>(t.j[i]));
      prod *= p;
    }
    sum += prod;
  }
  return sum;
}

std::vector<double> BellTable::faa_di_bruno(std::span<const double> outer, std::span<const double> inner) const {
  std::vector<double> out(outer.size());
  faa_di_bruno(outer, inner, out);
  return out;
}

void BellTable::faa_di_bruno(std::span<const double> outer, std::span<const double> inner,
                             std::span<double> out) const {
  const std::size_t r = outer.size();
  if (inner.size() != r || out.size() != r) fail(ErrorKind::kArgument, "faa_di_bruno length mismatch");
  if (static_cast<int>(r) > k_max_ || r > 31) fail(ErrorKind::kTableSize, "faa_di_bruno order beyond table");
  // pw[i][e] = inner[i]^e
  double pw[32][33];
  for (std::size_t i = 0; i < r; ++i) {
    pw[i][0] = 1.0;
    for (std::size_t e = 1; e <= r; ++e) pw[i][e] = pw[i][e - 1] * inner[i];
  }
  for (std::size_t k = 1; k <= r; ++k) {
    double total = 0.0;
    for (std::size_t l = 1; l <= k; ++l) {
      if (outer[l - 1] == 0.0) continue;
      double b = 0.0;
      for (const auto& t : terms_[k][l]) {
        double prod = t.coefficient_d;
        for (std::size_t i = 0; i < t.j.size(); ++i) prod *= pw[i][t.j[i]];
        b += prod;
      }
      total += outer[l - 1] * b;
    }
    out[k - 1] = total;
  }
}

const BellTable& bell_table() {
  static const BellTable table(20);
  return table;
}

mpz_class bell_number(int r) { return bell_table().bell_number(r); }

double partial_bell(int k, int l, std::span<const double> x) { return bell_table().partial_bell(k, l, x); }

std::vector<double> faa_di_bruno(std::span<const double> outer, std::span<const double> inner) {
  return bell_table().faa_di_bruno(outer, inner);
}

}  // namespace tailent
