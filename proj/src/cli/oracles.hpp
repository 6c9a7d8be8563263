#pragma once

#include <gmpxx.h>

#include <vector>

#include "tailent/symbolic.hpp"

// Brute-force reference computations used by the verify suite. None of these
// call into the library code they check.
namespace tailent::oracle {

// Set partitions of an n-set, counted by enumerating restricted growth strings.
mpz_class set_partitions(int n);

// C(k,l) C(k-1,l-1) (k-l)! from plain integer products.
mpz_class lah_number(int k, int l);

// Largest eigenvalue of a dense 0/1 matrix, from Eigen's general eigensolver.
double perron_root(const std::vector<std::vector<int>>& a);

// Number of words of length n over {0,..,alphabet-1} avoiding all words,
// by direct enumeration.
long long count_avoiding(int alphabet, const std::vector<Word>& forbidden, int n);

// True when some component of a and some component of b overlap in an open
// interval, checked over all pairs.
bool interiors_meet(const std::vector<RInterval>& a, const std::vector<RInterval>& b);

// Number of strict sign changes of g on the grid t_i = lo + (i + 0.5)(hi - lo)/n.
template <class G>
long long sign_changes(const G& g, double lo, double hi, long long n) {
  long long changes = 0;
  int last = 0;
  for (long long i = 0; i < n; ++i) {
    double v = g(lo + (i + 0.5) * (hi - lo) / n);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
  }
  return changes;
}

}  // namespace tailent::oracle
