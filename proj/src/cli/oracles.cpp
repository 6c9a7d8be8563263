#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <functional>

namespace tailent::oracle {

mpz_class set_partitions(int n) {
  if (n == 0) return 1;
  // a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0), mx(n, 0);
  mpz_class count = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      ++count;
      return;
    }
    for (int v = 0; v <= mx[i - 1] + 1; ++v) {
      a[i] = v;
      mx[i] = std::max(mx[i - 1], v);
      rec(i + 1);
    }
  };
  rec(1);
  return count;
}

mpz_class lah_number(int k, int l) {
  auto fact = [](int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  auto choose = [&](int n, int r) -> mpz_class {
    if (r < 0 || r > n) return 0;
    return fact(n) / (fact(r) * fact(n - r));
  };
  return choose(k, l) * choose(k - 1, l - 1) * fact(k - l);
}

double perron_root(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i][j];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  double best = 0.0;
  for (int i = 0; i < n; ++i) best = std::max(best, std::abs(es.eigenvalues()[i]));
  return best;
}

long long count_avoiding(int alphabet, const std::vector<Word>& forbidden, int n) {
  long long total = 0;
  Word w(n, 0);
  while (true) {
    bool ok = true;
    for (const auto& f : forbidden) {
      const int L = static_cast<int>(f.size());
      for (int s = 0; ok && s + L <= n; ++s) {
        bool eq = true;
        for (int t = 0; eq && t < L; ++t) eq = w[s + t] == f[t];
        if (eq) ok = false;
      }
      if (!ok) break;
    }
    if (ok) ++total;
    int i = n - 1;
    while (i >= 0 && w[i] == alphabet - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return total;
}

bool interiors_meet(const std::vector<RInterval>& a, const std::vector<RInterval>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.first < y.second && y.first < x.second) return true;
  return false;
}

}  // namespace tailent::oracle
