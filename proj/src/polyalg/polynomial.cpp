#include "tailent/polynomial.hpp"

namespace tailent {

DPoly to_double(const QPoly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.push_back(q.get_d());
  return DPoly(std::move(c));
}

QPoly to_rational(const DPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeffs().size());
  for (double v : p.coeffs()) c.emplace_back(v);
  return QPoly(std::move(c));
}

std::string to_string(const QPoly& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ",";
    s += p.coeffs()[i].get_str();
  }
  return s + "]";
}

}  // namespace tailent
