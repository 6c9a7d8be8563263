#include "tailent/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "tailent/error.hpp"

namespace tailent {
namespace {

using ZPoly = std::vector<mpz_class>;  // low degree first, no trailing zeros

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void make_primitive(ZPoly& p) {
  trim(p);
  if (p.empty()) return;
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  if (p.back() < 0)
    for (auto& c : p) c = -c;
}

ZPoly to_integer(const QPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) z.push_back(c.get_num() * (l / c.get_den()));
  make_primitive(z);
  return z;
}

ZPoly derivative(const ZPoly& p) {
  ZPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// Pseudo-remainder of a by b.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const int db = deg(b);
  const mpz_class& lb = b.back();
  while (deg(a) >= db && !a.empty()) {
    mpz_class la = a.back();
    int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

// Exact division a / b over Z, b dividing a.
ZPoly exact_div(ZPoly a, const ZPoly& b) {
  const int db = deg(b);
  ZPoly q(std::max(0, deg(a) - db + 1), 0);
  while (!a.empty() && deg(a) >= db) {
    int shift = deg(a) - db;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    q[shift] = c;
    for (int i = 0; i <= db; ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  trim(q);
  return q;
}

std::uint64_t mod_of(const mpz_class& c, std::uint64_t m) {
  return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(m));
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<unsigned __int128>(r) * b % m;
    b = static_cast<unsigned __int128>(b) * b % m;
    e >>= 1;
  }
  return r;
}

// Degree of gcd(p, p') modulo a prime m that does not divide the leading
// coefficient. Zero certifies that p is square-free over Q.
int gcd_degree_mod(const ZPoly& p, std::uint64_t m) {
  auto reduce = [m](const ZPoly& z) {
    std::vector<std::uint64_t> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = mod_of(z[i], m);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  std::vector<std::uint64_t> a = reduce(p), b = reduce(derivative(p));
  while (!b.empty()) {
    std::uint64_t inv = pow_mod(b.back(), m - 2, m);
    while (a.size() >= b.size()) {
      std::uint64_t f = static_cast<unsigned __int128>(a.back()) * inv % m;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t t = static_cast<unsigned __int128>(f) * b[i] % m;
        a[i + shift] = (a[i + shift] + m - t) % m;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

ZPoly square_free(const ZPoly& p) {
  if (deg(p) <= 1) return p;
  static const std::uint64_t primes[] = {2305843009213693951ull, 4611686018427387847ull, 1000000000000000003ull};
  for (std::uint64_t m : primes) {
    if (mod_of(p.back(), m) == 0) continue;
    if (gcd_degree_mod(p, m) == 0) return p;
    break;
  }
  ZPoly a = p, b = derivative(p);
  make_primitive(b);
  while (!b.empty()) {
    ZPoly r = pseudo_rem(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (deg(a) == 0) return p;
  ZPoly q = exact_div(p, a);
  make_primitive(q);
  return q;
}

// p(x + 1), in place.
void taylor_shift1(ZPoly& p) {
  const int n = deg(p);
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) p[j] += p[j + 1];
}

// 2^d p(x/2).
ZPoly half_scale(const ZPoly& p) {
  ZPoly q = p;
  const int d = deg(p);
  for (int i = 0; i <= d; ++i) mpz_mul_2exp(q[i].get_mpz_t(), q[i].get_mpz_t(), static_cast<unsigned long>(d - i));
  return q;
}

int sign_variations(const ZPoly& p) {
  int v = 0, last = 0;
  for (const auto& c : p) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Upper bound on the roots in (0,1): variations of (x+1)^d p(1/(x+1)).
int descartes_01(const ZPoly& p) {
  ZPoly r(p.rbegin(), p.rend());
  taylor_shift1(r);
  return sign_variations(r);
}

// Divide by (x - 1) knowing p(1) = 0.
ZPoly deflate_at_one(const ZPoly& p) {
  ZPoly q(p.size() - 1);
  mpz_class acc = 0;
  for (int i = deg(p); i >= 1; --i) {
    acc += p[i];
    q[i - 1] = acc;
  }
  trim(q);
  return q;
}

mpz_class sum_coeffs(const ZPoly& p) {
  mpz_class s = 0;
  for (const auto& c : p) s += c;
  return s;
}

// Sign of p(m / 2^s).
int sign_dyadic(const ZPoly& p, const mpz_class& m, unsigned long s) {
  const int d = deg(p);
  mpz_class acc = p[d], t;
  for (int k = 1; k <= d; ++k) {
    acc *= m;
    mpz_mul_2exp(t.get_mpz_t(), p[d - k].get_mpz_t(), s * static_cast<unsigned long>(k));
    acc += t;
  }
  return sgn(acc);
}

// Root intervals in t-space: (num / 2^level, (num+1) / 2^level), or exact
// dyadic roots when exact is set.
struct Cell {
  mpz_class num;
  unsigned long level;
  bool exact;
};

void isolate(const ZPoly& q, const mpz_class& num, unsigned long level, std::vector<Cell>& out, int depth) {
  if (q.size() <= 1) return;
  int v = descartes_01(q);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({num, level, false});
    return;
  }
  if (depth > 4000) fail(ErrorKind::kPrecision, "root isolation did not separate roots");
  ZPoly left = half_scale(q);
  ZPoly right = left;
  taylor_shift1(right);
  bool mid_root = right[0] == 0;
  if (mid_root) {
    out.push_back({2 * num + 1, level + 1, true});
    right.erase(right.begin());
    left = deflate_at_one(left);
  }
  make_primitive(left);
  make_primitive(right);
  isolate(left, 2 * num, level + 1, out, depth + 1);
  isolate(right, 2 * num + 1, level + 1, out, depth + 1);
}

}  // namespace

QPoly square_free_part(const QPoly& p) {
  if (p.is_zero()) fail(ErrorKind::kArgument, "square-free part of the zero polynomial");
  ZPoly z = square_free(to_integer(p));
  std::vector<mpq_class> c(z.begin(), z.end());
  return QPoly(std::move(c));
}

int sign_at(const QPoly& p, const mpq_class& x) { return sgn(p(x)); }

std::vector<double> real_roots(const QPoly& p, const mpq_class& lo, const mpq_class& hi, double tol) {
  if (p.is_zero()) fail(ErrorKind::kArgument, "roots of the zero polynomial");
  if (hi < lo) return {};
  std::vector<double> roots;
  if (p.degree() == 0) return roots;
  ZPoly base = square_free(to_integer(p));

  // q(t) = base(lo + w t), cleared to integers.
  const mpq_class w = hi - lo;
  std::vector<mpq_class> bq(base.begin(), base.end());
  QPoly sub = QPoly(bq).compose(QPoly{lo, w});
  ZPoly q = to_integer(sub);

  auto t_to_x = [&](const mpq_class& t) { return mpq_class(lo + w * t); };
  std::vector<mpq_class> exact;
  if (w == 0) {
    if (sgn(q.empty() ? mpz_class(0) : q[0]) == 0) roots.push_back(lo.get_d());
    return roots;
  }
  if (q[0] == 0) {
    exact.push_back(lo);
    q.erase(q.begin());
  }
  if (sum_coeffs(q) == 0) {
    exact.push_back(hi);
    q = deflate_at_one(q);
  }
  make_primitive(q);

  std::vector<Cell> cells;
  isolate(q, 0, 0, cells, 0);

  for (const auto& cell : cells) {
    if (cell.exact) {
      mpq_class t(cell.num, mpz_class(1) << cell.level);
      t.canonicalize();
      exact.push_back(t_to_x(t));
      continue;
    }
    // Bisection on the cell with exact signs of q; q is nonzero at both ends.
    mpz_class a = cell.num, b = cell.num + 1;
    unsigned long s = cell.level;
    int sa = sign_dyadic(q, a, s);
    const double wd = std::fabs(w.get_d());
    bool hit = false;
    while (std::ldexp(wd, -static_cast<int>(s)) > tol && s < 2000) {
      a <<= 1;
      b <<= 1;
      ++s;
      mpz_class m = a + 1;
      int sm = sign_dyadic(q, m, s);
      if (sm == 0) {
        a = m;
        hit = true;
        break;
      }
      if (sm == sa) a = m;
      else b = m;
    }
    mpq_class t = hit ? mpq_class(a, mpz_class(1) << s) : mpq_class(a + b, mpz_class(1) << (s + 1));
    t.canonicalize();
    exact.push_back(t_to_x(t));
  }
  std::sort(exact.begin(), exact.end());
  for (const auto& e : exact) roots.push_back(e.get_d());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<double> real_roots(const QPoly& p, double lo, double hi, double tol) {
  return real_roots(p, mpq_class(lo), mpq_class(hi), tol);
}

}  // namespace tailent
