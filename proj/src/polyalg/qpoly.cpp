#include "tailent/qpoly.hpp"

#include <string>

#include "tailent/combinatorics.hpp"
#include "tailent/error.hpp"

namespace tailent {

QPoly s_polynomial() { return QPoly{mpq_class(0), mpq_class(1), mpq_class(-1)}; }

QPolynomial q_polynomial(int r) {
  if (r < 1) fail(ErrorKind::kArgument, "q_polynomial needs r >= 1");
  if (r > 25) fail(ErrorKind::kResource, "q_polynomial capped at r = 25, got " + std::to_string(r));
  QPolynomial out;
  mpz_class f = factorial(r - 1);
  out.b = factorial(2 * r - 1) / (f * f);
  QPoly s = s_polynomial();
  QPoly d = QPoly::constant(mpq_class(out.b));
  for (int i = 0; i < r - 1; ++i) d = d * s;
  out.q = d.antiderivative();
  return out;
}

QPoly q_derivative_factorization(int r, int i) {
  if (r < 1 || i < 0 || i > r - 1) fail(ErrorKind::kArgument, "q_derivative_factorization needs 0 <= i <= r-1");
  QPoly s = s_polynomial();
  QPoly ds = s.derivative();
  QPoly ri = QPoly::constant(mpq_class(1));
  for (int k = 0; k < i; ++k) ri = ds * ri * mpq_class(r - k) + s * ri.derivative();
  return ri;
}

}  // namespace tailent
