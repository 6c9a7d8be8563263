#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace tailent {

// Dense univariate polynomial, coefficients stored low degree first. Scalar is
// double or mpq_class.
template <class Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Scalar& v) { return Polynomial(std::vector<Scalar>{v}); }
  static Polynomial x() { return Polynomial(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Scalar(0); }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  template <class T>
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = T(acc * x + T(*it));
    return acc;
  }

  Polynomial derivative(int k = 1) const {
    if (k <= 0) return *this;
    if (degree() < k) return {};
    std::vector<Scalar> d(c_.size() - k);
    for (std::size_t i = k; i < c_.size(); ++i) {
      Scalar f(1);
      for (int t = 0; t < k; ++t) f *= Scalar(static_cast<long>(i - t));
      d[i - k] = c_[i] * f;
    }
    return Polynomial(std::move(d));
  }

  // Antiderivative vanishing at 0.
  Polynomial antiderivative() const {
    std::vector<Scalar> a(c_.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Scalar(static_cast<long>(i + 1));
    return Polynomial(std::move(a));
  }

  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + Polynomial::constant(*it);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> p(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(p));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using QPoly = Polynomial<mpq_class>;
using DPoly = Polynomial<double>;

DPoly to_double(const QPoly& p);
// Exact: every double is a dyadic rational.
QPoly to_rational(const DPoly& p);
std::string to_string(const QPoly& p);

}  // namespace tailent
