#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

namespace tailent {

// One term of a partial Bell polynomial B_k^l: coefficient * prod x_i^{j_i},
// where sum j_i = l and sum i*j_i = k (indices i are 1-based).
struct BellTerm {
  std::vector<int> j;  // j[i-1] = exponent of x_i, length k-l+1
  mpz_class coefficient;
  double coefficient_d = 0.0;
};

class BellTable {
 public:
  explicit BellTable(int k_max = 20);

  int k_max() const { return k_max_; }
  const std::vector<BellTerm>& terms(int k, int l) const;
  const mpz_class& bell_number(int r) const;

  double partial_bell(int k, int l, std::span<const double> x) const;
  mpz_class partial_bell(int k, int l, std::span<const mpz_class> x) const;

  // Derivatives of f o g at a point, orders 1..r, from f^(1..r) at g(x) and
  // g^(1..r) at x.
  std::vector<double> faa_di_bruno(std::span<const double> outer, std::span<const double> inner) const;
  void faa_di_bruno(std::span<const double> outer, std::span<const double> inner, std::span<double> out) const;

 private:
  int k_max_;
  std::vector<std::vector<std::vector<BellTerm>>> terms_;  // [k][l]
  std::vector<mpz_class> bell_;
};

// Shared table with k_max = 20.
const BellTable& bell_table();

mpz_class bell_number(int r);
double partial_bell(int k, int l, std::span<const double> x);
std::vector<double> faa_di_bruno(std::span<const double> outer, std::span<const double> inner);

mpz_class factorial(int n);
mpz_class binomial(int n, int k);

}  // namespace tailent
