#pragma once

#include "tailent/polynomial.hpp"

namespace tailent {

struct QPolynomial {
  QPoly q;      // Q_r, degree 2r-1
  mpz_class b;  // b_r = (2r-1)! / ((r-1)!)^2
};

// Q_r with Q_r' = b_r X^{r-1} (1-X)^{r-1} and Q_r(0) = 0. Requires 1 <= r <= 25.
QPolynomial q_polynomial(int r);

// R_0 = 1, R_{i+1} = (r-i) S' R_i + S R_i' with S = X(1-X), 0 <= i <= r-1.
// With this indexing S^{r-i} R_i is the i-th derivative of S^r.
QPoly q_derivative_factorization(int r, int i);

// S(X) = X(1-X).
QPoly s_polynomial();

}  // namespace tailent
