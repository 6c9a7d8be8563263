#pragma once

#include <vector>

#include "tailent/polynomial.hpp"

namespace tailent {

// Distinct real roots of p in the closed interval [lo, hi], ascending. Roots
// are isolated exactly (Descartes bisection on the square-free part) and then
// refined by exact sign evaluation until the bracket is narrower than tol.
// p must be nonzero.
std::vector<double> real_roots(const QPoly& p, const mpq_class& lo, const mpq_class& hi, double tol = 1e-13);
std::vector<double> real_roots(const QPoly& p, double lo = 0.0, double hi = 1.0, double tol = 1e-13);

QPoly square_free_part(const QPoly& p);
int sign_at(const QPoly& p, const mpq_class& x);

}  // namespace tailent
