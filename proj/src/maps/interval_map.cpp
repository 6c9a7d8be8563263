#include "tailent/interval_map.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "tailent/error.hpp"
#include "tailent/roots.hpp"

namespace tailent {

struct IntervalMap::Impl {
  std::string name;
  MapKind kind = MapKind::kClosedForm;
  int k_max = 0;
  bool c1 = true;
  QPoly exact;
  std::vector<DPoly> derivs;
  std::vector<std::pair<double, double>> nodes;
  std::vector<double> slopes;
  Jet jet;
  std::shared_ptr<const IntervalMap> base;
  int power = 1;
  std::vector<double> crit;
  std::vector<Interval> branches;
  double min_length = 1.0;

  double eval(double x) const {
    double y = 0.0;
    switch (kind) {
      case MapKind::kPolynomial: y = derivs[0](x); break;
      case MapKind::kPiecewiseAffine: {
        std::size_t i = piece(x);
        y = nodes[i].second + slopes[i] * (x - nodes[i].first);
        break;
      }
      case MapKind::kClosedForm:
        if (base) {
          y = x;
          for (int i = 0; i < power; ++i) y = base->eval(y);
        } else {
          y = jet(x, 0);
        }
        break;
    }
    return std::clamp(y, 0.0, 1.0);
  }

  std::size_t piece(double x) const {
    std::size_t i = 0;
    while (i + 2 < nodes.size() && x >= nodes[i + 1].first) ++i;
    return i;
  }
};

namespace {

std::vector<Interval> branches_from(const std::vector<double>& crit) {
  std::vector<Interval> b;
  double lo = 0.0;
  for (double c : crit) {
    b.push_back({lo, c});
    lo = c;
  }
  b.push_back({lo, 1.0});
  return b;
}

void finish(IntervalMap::Impl& impl) {
  impl.branches = branches_from(impl.crit);
  impl.min_length = 1.0;
  for (const auto& b : impl.branches) impl.min_length = std::min(impl.min_length, b.length());
}

// Sign changes of d on n+1 grid points of [a,b], refined by bisection.
std::vector<double> sign_change_roots(const std::function<double(double)>& d, double a, double b, std::size_t n) {
  std::vector<double> roots;
  double last_x = a;
  double last = d(a);
  for (std::size_t i = 1; i <= n; ++i) {
    double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    double v = d(x);
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0) != (last > 0)) {
      double lo = last_x, hi = x;
      bool lo_pos = last > 0;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        double dm = d(mid);
        if (dm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((dm > 0) == lo_pos) lo = mid;
        else hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    last = v;
    last_x = x;
  }
  return roots;
}

void check_image(const IntervalMap& f) {
  for (int i = 0; i <= 4096; ++i) {
    double x = i / 4096.0;
    double y = f.derivative(x, 0);
    if (y < -1e-12 || y > 1 + 1e-12)
      fail(ErrorKind::kDomain, f.name() + " maps " + std::to_string(x) + " outside [0,1]");
  }
  for (double c : f.critical_points()) {
    double y = f.derivative(c, 0);
    if (y < -1e-12 || y > 1 + 1e-12) fail(ErrorKind::kDomain, f.name() + " has a critical value outside [0,1]");
  }
}

}  // namespace

IntervalMap IntervalMap::polynomial(const QPoly& p, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->kind = MapKind::kPolynomial;
  impl->exact = p;
  impl->k_max = 1 << 20;
  impl->c1 = true;
  for (int k = 0; k <= std::max(0, p.degree()) + 1; ++k) impl->derivs.push_back(to_double(p.derivative(k)));
  QPoly d = p.derivative();
  if (!d.is_zero() && d.degree() > 0) {
    std::vector<double> roots = real_roots(d, mpq_class(0), mpq_class(1));
    std::vector<double> cuts{0.0};
    for (double r : roots)
      if (r > 0 && r < 1) cuts.push_back(r);
    cuts.push_back(1.0);
    // Keep roots where f' changes sign.
    std::vector<int> sign;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      mpq_class mid = (mpq_class(cuts[i]) + mpq_class(cuts[i + 1])) / 2;
      sign.push_back(sgn(mpq_class(d(mid))));
    }
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i)
      if (sign[i - 1] != 0 && sign[i] != 0 && sign[i - 1] != sign[i]) impl->crit.push_back(cuts[i]);
  }
  finish(*impl);
  IntervalMap f(impl);
  check_image(f);
  return f;
}

IntervalMap IntervalMap::polynomial(const DPoly& p, std::string name) { return polynomial(to_rational(p), std::move(name)); }

IntervalMap IntervalMap::piecewise_affine(std::vector<std::pair<double, double>> nodes, std::string name) {
  if (nodes.size() < 2 || nodes.front().first != 0.0 || nodes.back().first != 1.0)
    fail(ErrorKind::kArgument, "piecewise-affine nodes must span [0,1]");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->kind = MapKind::kPiecewiseAffine;
  impl->k_max = 1;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double dx = nodes[i + 1].first - nodes[i].first;
    if (!(dx > 0)) fail(ErrorKind::kArgument, "piecewise-affine nodes must increase");
    double s = (nodes[i + 1].second - nodes[i].second) / dx;
    if (s == 0.0) fail(ErrorKind::kArgument, "piecewise-affine map has a flat piece");
    impl->slopes.push_back(s);
  }
  bool c1 = true;
  for (std::size_t i = 1; i < impl->slopes.size(); ++i) {
    if (impl->slopes[i] != impl->slopes[i - 1]) c1 = false;
    if ((impl->slopes[i] > 0) != (impl->slopes[i - 1] > 0)) impl->crit.push_back(nodes[i].first);
  }
  impl->c1 = c1;
  impl->nodes = std::move(nodes);
  finish(*impl);
  IntervalMap f(impl);
  check_image(f);
  return f;
}

IntervalMap IntervalMap::closed_form(Jet jet, int k_max, bool c1, std::string name, std::vector<double> critical,
                                     bool critical_given) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->kind = MapKind::kClosedForm;
  impl->k_max = k_max;
  impl->c1 = c1;
  impl->jet = std::move(jet);
  if (critical_given) {
    impl->crit = std::move(critical);
    std::sort(impl->crit.begin(), impl->crit.end());
  } else {
    const Jet& j = impl->jet;
    impl->crit = sign_change_roots([&j](double x) { return j(x, 1); }, 0.0, 1.0, 1u << 16);
  }
  finish(*impl);
  IntervalMap f(impl);
  check_image(f);
  return f;
}

IntervalMap IntervalMap::iterate(const IntervalMap& f, int p, std::size_t lap_limit) {
  if (p < 1) fail(ErrorKind::kArgument, "iterate needs p >= 1");
  if (p == 1) return f;
  auto impl = std::make_shared<Impl>();
  impl->name = f.name() + "^" + std::to_string(p);
  impl->kind = MapKind::kClosedForm;
  impl->k_max = std::min(1, f.k_max());
  impl->c1 = f.is_c1();
  impl->base = std::make_shared<const IntervalMap>(f);
  impl->power = p;
  auto laps = laps_of_iterate(f, p, lap_limit);
  for (std::size_t i = 1; i < laps.size(); ++i) impl->crit.push_back(laps[i].lo);
  finish(*impl);
  return IntervalMap(impl);
}

const std::string& IntervalMap::name() const { return impl_->name; }
MapKind IntervalMap::kind() const { return impl_->kind; }
int IntervalMap::k_max() const { return impl_->k_max; }
bool IntervalMap::is_c1() const { return impl_->c1; }
const std::vector<double>& IntervalMap::critical_points() const { return impl_->crit; }
const std::vector<Interval>& IntervalMap::branches() const { return impl_->branches; }
int IntervalMap::branch_count() const { return static_cast<int>(impl_->branches.size()); }
double IntervalMap::min_branch_length() const { return impl_->min_length; }
const QPoly& IntervalMap::exact_polynomial() const { return impl_->exact; }
const IntervalMap* IntervalMap::base() const { return impl_->base.get(); }
int IntervalMap::power() const { return impl_->power; }

int IntervalMap::branch_index(double x) const {
  const auto& c = impl_->crit;
  return static_cast<int>(std::upper_bound(c.begin(), c.end(), x) - c.begin());
}

double IntervalMap::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::kDomain, "evaluate at " + std::to_string(x) + " outside [0,1]");
  return impl_->eval(x);
}

double IntervalMap::eval(double x) const { return impl_->eval(std::clamp(x, 0.0, 1.0)); }

double IntervalMap::derivative(double x, int k) const {
  if (k < 0 || k > impl_->k_max) fail(ErrorKind::kUnsupportedOrder, impl_->name + " has no derivative of order " + std::to_string(k));
  if (k == 0) return impl_->kind == MapKind::kClosedForm && !impl_->base ? impl_->jet(x, 0) : impl_->eval(x);
  switch (impl_->kind) {
    case MapKind::kPolynomial:
      return k < static_cast<int>(impl_->derivs.size()) ? impl_->derivs[k](x) : 0.0;
    case MapKind::kPiecewiseAffine:
      return impl_->slopes[impl_->piece(x)];
    case MapKind::kClosedForm:
      if (impl_->base) {
        double d = 1.0, y = x;
        for (int i = 0; i < impl_->power; ++i) {
          d *= impl_->base->derivative(y, 1);
          y = impl_->base->eval(y);
        }
        return d;
      }
      return impl_->jet(x, k);
  }
  return 0.0;
}

SupEstimate IntervalMap::derivative_sup(int k, double a, double b) const {
  if (k < 1 || k > impl_->k_max) fail(ErrorKind::kUnsupportedOrder, impl_->name + " has no derivative of order " + std::to_string(k));
  if (!(a >= 0 && b <= 1 && a <= b)) fail(ErrorKind::kDomain, "derivative_sup interval outside [0,1]");
  SupEstimate est;
  switch (impl_->kind) {
    case MapKind::kPolynomial: {
      QPoly dk = impl_->exact.derivative(k);
      if (dk.is_zero()) return est;
      DPoly dd = to_double(dk);
      double best = std::max(std::fabs(dd(a)), std::fabs(dd(b)));
      QPoly next = dk.derivative();
      if (!next.is_zero() && next.degree() > 0)
        for (double x : real_roots(next, mpq_class(a), mpq_class(b))) best = std::max(best, std::fabs(dd(x)));
      est.value = best;
      return est;
    }
    case MapKind::kPiecewiseAffine: {
      const auto& n = impl_->nodes;
      for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        bool meets = a == b ? (n[i].first <= a && a <= n[i + 1].first) : (n[i].first < b && n[i + 1].first > a);
        if (meets) est.value = std::max(est.value, std::fabs(impl_->slopes[i]));
      }
      return est;
    }
    case MapKind::kClosedForm: {
      const std::size_t grid = 1u << 14;
      double best = 0.0;
      for (std::size_t i = 0; i <= grid; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / grid;
        best = std::max(best, std::fabs(derivative(x, k)));
      }
      if (k + 1 <= impl_->k_max && b > a) {
        double lip = 0.0;
        for (std::size_t i = 0; i <= grid; ++i) {
          double x = a + (b - a) * static_cast<double>(i) / grid;
          lip = std::max(lip, std::fabs(derivative(x, k + 1)));
        }
        best += 0.5 * (b - a) / grid * lip;
      }
      est.value = best;
      est.grid_size = grid + 1;
      return est;
    }
  }
  return est;
}

double IntervalMap::modulus_of_continuity(double eps) const {
  if (!impl_->c1) fail(ErrorKind::kNotC1, impl_->name + " has a discontinuous derivative");
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "modulus_of_continuity needs 0 < eps < 1");
  if (impl_->kind == MapKind::kPolynomial) {
    // sup of g(y) - g(z) over |y - z| <= eps with g = f'. At a maximizer each
    // endpoint is a critical point of g, an end of [0,1], or the constraint is
    // active.
    QPoly g = impl_->exact.derivative();
    if (g.is_zero()) return 0.0;
    DPoly gd = to_double(g);
    QPoly g1 = g.derivative();
    std::vector<double> cand{0.0, 1.0};
    if (!g1.is_zero() && g1.degree() > 0)
      for (double x : real_roots(g1, mpq_class(0), mpq_class(1))) cand.push_back(x);
    double best = 0.0;
    for (double y : cand)
      for (double z : cand)
        if (std::fabs(y - z) <= eps) best = std::max(best, std::fabs(gd(y) - gd(z)));
    mpq_class e(eps);
    QPoly shifted = g1.compose(QPoly{e, mpq_class(1)});
    QPoly diff = g1 - shifted;
    std::vector<double> ys{0.0, 1.0 - eps};
    for (double c : cand) {
      if (c + eps <= 1) ys.push_back(c);
      if (c - eps >= 0) ys.push_back(c - eps);
    }
    if (!diff.is_zero() && diff.degree() > 0)
      for (double x : real_roots(diff, mpq_class(0), mpq_class(1) - e)) ys.push_back(x);
    for (double y : ys) best = std::max(best, std::fabs(gd(y) - gd(y + eps)));
    return best;
  }
  // Sliding-window range of f' on a grid.
  const std::size_t grid = 1u << 14;
  std::vector<double> g(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) g[i] = derivative(static_cast<double>(i) / grid, 1);
  const std::size_t w = static_cast<std::size_t>(std::floor(eps * grid));
  double best = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    double lo = g[i], hi = g[i];
    for (std::size_t j = i; j <= std::min(grid, i + w); ++j) {
      lo = std::min(lo, g[j]);
      hi = std::max(hi, g[j]);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

int IntervalMap::branch_count_in_ball(double x, double eps) const {
  if (!(eps > 0)) fail(ErrorKind::kArgument, "branch_count_in_ball needs eps > 0");
  if (!(x >= 0 && x <= 1)) fail(ErrorKind::kDomain, "branch_count_in_ball centre outside [0,1]");
  int n = 0;
  for (const auto& b : impl_->branches)
    if (b.lo < x + eps && b.hi > x - eps) ++n;
  return n;
}

std::vector<Interval> laps_of_iterate(const IntervalMap& f, int p, std::size_t lap_limit) {
  if (p < 1) fail(ErrorKind::kArgument, "laps_of_iterate needs p >= 1");
  std::vector<Interval> laps = f.branches();
  const auto& crit = f.critical_points();
  auto iter = [&f](double y, int k) {
    for (int i = 0; i < k; ++i) y = f.eval(y);
    return y;
  };
  for (int k = 1; k < p; ++k) {
    std::vector<Interval> next;
    for (const auto& lap : laps) {
      double ylo = iter(lap.lo, k), yhi = iter(lap.hi, k);
      bool up = yhi >= ylo;
      double vmin = std::min(ylo, yhi), vmax = std::max(ylo, yhi);
      std::vector<double> cuts;
      for (double c : crit) {
        if (!(c > vmin && c < vmax)) continue;
        double a = lap.lo, b = lap.hi;
        for (int it = 0; it < 200 && b - a > 0; ++it) {
          double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          double v = iter(mid, k);
          if ((v < c) == up) a = mid;
          else b = mid;
        }
        cuts.push_back(0.5 * (a + b));
      }
      std::sort(cuts.begin(), cuts.end());
      double lo = lap.lo;
      for (double c : cuts) {
        next.push_back({lo, c});
        lo = c;
      }
      next.push_back({lo, lap.hi});
      if (next.size() > lap_limit) fail(ErrorKind::kResource, "lap count of iterate exceeds limit");
    }
    laps = std::move(next);
  }
  return laps;
}

BranchLengthResult min_branch_length_iterate(const IntervalMap& f, double eps, int p_cap, std::size_t lap_limit) {
  if (!(eps > 0 && eps < 1)) fail(ErrorKind::kArgument, "min_branch_length_iterate needs 0 < eps < 1");
  BranchLengthResult res;
  std::vector<Interval> laps = f.branches();
  const auto& crit = f.critical_points();
  auto iter = [&f](double y, int k) {
    for (int i = 0; i < k; ++i) y = f.eval(y);
    return y;
  };
  for (int p = 1; p <= p_cap; ++p) {
    if (p > 1) {
      std::vector<Interval> next;
      for (const auto& lap : laps) {
        double ylo = iter(lap.lo, p - 1), yhi = iter(lap.hi, p - 1);
        bool up = yhi >= ylo;
        double vmin = std::min(ylo, yhi), vmax = std::max(ylo, yhi);
        std::vector<double> cuts;
        for (double c : crit) {
          if (!(c > vmin && c < vmax)) continue;
          double a = lap.lo, b = lap.hi;
          for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if ((iter(mid, p - 1) < c) == up) a = mid;
            else b = mid;
          }
          cuts.push_back(0.5 * (a + b));
        }
        std::sort(cuts.begin(), cuts.end());
        double lo = lap.lo;
        for (double c : cuts) {
          next.push_back({lo, c});
          lo = c;
        }
        next.push_back({lo, lap.hi});
        if (next.size() > lap_limit) fail(ErrorKind::kResource, "lap count of iterate exceeds limit");
      }
      laps = std::move(next);
    }
    double L = 1.0;
    for (const auto& l : laps) L = std::min(L, l.length());
    res.min_lengths.push_back(L);
    if (L > eps) {
      res.p = p;
    } else {
      return res;
    }
  }
  res.saturated = true;
  return res;
}

IntervalMap fit_polynomial_map(const std::function<double(double)>& g, int degree, std::string name,
                               std::size_t samples) {
  Eigen::MatrixXd V(samples, degree + 1);
  Eigen::VectorXd y(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    double x = static_cast<double>(i) / static_cast<double>(samples - 1);
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      V(i, k) = p;
      p *= x;
    }
    y(i) = g(x);
  }
  Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  QPoly q = to_rational(DPoly(std::vector<double>(c.data(), c.data() + c.size())));
  DPoly qd = to_double(q);
  std::vector<double> cand{0.0, 1.0};
  QPoly d = q.derivative();
  if (!d.is_zero() && d.degree() > 0)
    for (double x : real_roots(d, mpq_class(0), mpq_class(1))) cand.push_back(x);
  double lo = qd(0.0), hi = lo;
  for (double x : cand) {
    lo = std::min(lo, qd(x));
    hi = std::max(hi, qd(x));
  }
  QPoly scaled = (q - QPoly::constant(mpq_class(lo))) * mpq_class(1.0 / (hi - lo));
  return IntervalMap::polynomial(scaled, std::move(name));
}

IntervalMap quadratic_map(double a) {
  if (!(a > 0 && a <= 4)) fail(ErrorKind::kConfig, "quadratic parameter must lie in (0,4]");
  mpq_class q(a);
  return IntervalMap::polynomial(QPoly{mpq_class(0), q, mpq_class(-q)}, "quadratic:" + std::to_string(a));
}

IntervalMap tent_map() { return IntervalMap::piecewise_affine({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}, "tent"); }

IntervalMap identity_map() { return IntervalMap::polynomial(QPoly{mpq_class(0), mpq_class(1)}, "identity"); }

}  // namespace tailent
