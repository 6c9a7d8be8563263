#include "tailent/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tailent/combinatorics.hpp"
#include "tailent/error.hpp"
#include "tailent/parallel.hpp"
#include "tailent/qpoly.hpp"
#include "tailent/roots.hpp"

namespace tailent {

const char* to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::kPoint: return "point";
    case ChartKind::kAffine: return "affine";
    case ChartKind::kInverse: return "inverse";
  }
  return "?";
}

class AtlasContext {
 public:
  AtlasContext(const std::vector<QPoly>& polys, int r) : r_(r), m_(polys.size()) {
    const int top = r + 1;
    auto q = q_polynomial(r).q;
    for (int k = 0; k <= top; ++k) qd_.push_back(to_double(q.derivative(k)));
    for (const auto& p : polys) {
      std::vector<DPoly> ds;
      for (int k = 0; k <= top; ++k) ds.push_back(to_double(p.derivative(k)));
      pd_.push_back(std::move(ds));
      // Numerators of (P^{-1})^{(k)}: N_1 = 1, N_{k+1} = N_k' P' - (2k-1) N_k P''.
      QPoly d1 = p.derivative(), d2 = p.derivative(2);
      std::vector<DPoly> nh{DPoly{}};
      QPoly n = QPoly::constant(mpq_class(1));
      for (int k = 1; k <= top; ++k) {
        nh.push_back(to_double(n));
        n = n.derivative() * d1 - n * d2 * mpq_class(2 * k - 1);
      }
      nh_.push_back(std::move(nh));
    }
  }

  int r() const { return r_; }
  std::size_t m() const { return m_; }
  const DPoly& p(std::size_t j, int k) const { return pd_[j][k]; }
  const DPoly& q(int k) const { return qd_[k]; }
  const DPoly& nh(std::size_t i, int k) const { return nh_[i][k]; }

  // Solves P_i(x) = y for x in [a,b], P_i strictly monotone there.
  double invert(std::size_t i, double y, double a, double b) const {
    const DPoly& p = pd_[i][0];
    const DPoly& dp = pd_[i][1];
    double fa = p(a) - y, fb = p(b) - y;
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) return std::fabs(fa) < std::fabs(fb) ? a : b;
    double lo = a, hi = b, x = 0.5 * (a + b);
    bool lo_neg = fa < 0;
    for (int it = 0; it < 200; ++it) {
      double fx = p(x) - y;
      if (fx == 0) return x;
      if ((fx < 0) == lo_neg) lo = x;
      else hi = x;
      double step = fx / dp(x);
      double nx = x - step;
      if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
      if (std::fabs(nx - x) <= 4e-16 * std::max(1.0, std::fabs(x)) || hi - lo <= 4e-16) return nx;
      x = nx;
    }
    return x;
  }

 private:
  int r_;
  std::size_t m_;
  std::vector<DPoly> qd_;
  std::vector<std::vector<DPoly>> pd_;
  std::vector<std::vector<DPoly>> nh_;
};

std::shared_ptr<const AtlasContext> make_atlas_context(const std::vector<QPoly>& polys, int r) {
  return std::make_shared<const AtlasContext>(polys, r);
}

namespace {

// Derivatives 0..order of psi at s.
void psi_jet(const AtlasContext& ctx, const Chart& c, double s, int order, std::vector<double>& out) {
  out.assign(order + 1, 0.0);
  if (c.kind == ChartKind::kAffine) {
    out[0] = c.a + s * (c.b - c.a);
    if (order >= 1) out[1] = c.b - c.a;
    return;
  }
  const std::size_t i = static_cast<std::size_t>(c.branch);
  const DPoly& p = ctx.p(i, 0);
  double alpha = p(c.a), span = p(c.b) - alpha;
  double x = s <= 0 ? c.a : (s >= 1 ? c.b : ctx.invert(i, alpha + s * span, std::min(c.a, c.b), std::max(c.a, c.b)));
  out[0] = x;
  double d1 = ctx.p(i, 1)(x);
  double cp = 1.0, dp = d1;  // span^k, P'^(2k-1)
  for (int k = 1; k <= order; ++k) {
    cp *= span;
    out[k] = cp * ctx.nh(i, k)(x) / dp;
    dp *= d1 * d1;
  }
}

}  // namespace

double chart_value(const AtlasContext& ctx, const Chart& chart, double t) {
  if (chart.kind == ChartKind::kPoint) return chart.a;
  double s = ctx.q(0)(chart.lo + chart.len * t);
  std::vector<double> psi;
  psi_jet(ctx, chart, s, 0, psi);
  return psi[0];
}

void chart_jet(const AtlasContext& ctx, const Chart& chart, double t, int order, ChartJet& out) {
  const std::size_t m = ctx.m();
  out.phi.assign(order + 1, 0.0);
  out.p.assign(m, std::vector<double>(order + 1, 0.0));
  if (chart.kind == ChartKind::kPoint) {
    out.phi[0] = chart.a;
    for (std::size_t j = 0; j < m; ++j) out.p[j][0] = ctx.p(j, 0)(chart.a);
    return;
  }
  const BellTable& bell = bell_table();
  double u = chart.lo + chart.len * t;
  std::vector<double> inner(order), outer(order), phi_d(order), tmp(order), psi;
  double scale = 1.0;
  for (int k = 1; k <= order; ++k) {
    scale *= chart.len;
    inner[k - 1] = ctx.q(k)(u) * scale;
  }
  double s = ctx.q(0)(u);
  psi_jet(ctx, chart, s, order, psi);
  for (int k = 1; k <= order; ++k) outer[k - 1] = psi[k];
  bell.faa_di_bruno(outer, inner, phi_d);
  out.phi[0] = psi[0];
  for (int k = 1; k <= order; ++k) out.phi[k] = phi_d[k - 1];
  const double x = psi[0];
  for (std::size_t j = 0; j < m; ++j) {
    for (int k = 1; k <= order; ++k) outer[k - 1] = ctx.p(j, k)(x);
    bell.faa_di_bruno(outer, phi_d, tmp);
    out.p[j][0] = ctx.p(j, 0)(x);
    for (int k = 1; k <= order; ++k) out.p[j][k] = tmp[k - 1];
  }
}

namespace {

bool inside_unit_exact(const std::vector<QPoly>& polys, const mpq_class& x) {
  for (const auto& p : polys) {
    mpq_class v = p(x);
    if (v < 0 || v > 1) return false;
  }
  return true;
}

std::vector<double> roots_in(const QPoly& p, double lo, double hi, double tol) {
  if (p.is_zero() || p.degree() == 0) return {};
  return real_roots(p, mpq_class(lo), mpq_class(hi), tol);
}

struct Component {
  double u, v;
  ChartKind kind;
  int branch;
};

// Sampled sup of |derivative| per order 1..order over t in [0,1] for the
// chart (lo, len) = (0, 1): index 0 is phi, 1..m the P_j o phi.
std::vector<std::vector<double>> sample_sups(const AtlasContext& ctx, const Chart& c, int order, int samples) {
  const std::size_t m = ctx.m();
  std::vector<std::vector<double>> sup(m + 1, std::vector<double>(order + 1, 0.0));
  ChartJet jet;
  for (int t = 0; t <= samples; ++t) {
    chart_jet(ctx, c, static_cast<double>(t) / samples, order, jet);
    for (int k = 1; k <= order; ++k) {
      sup[0][k] = std::max(sup[0][k], std::fabs(jet.phi[k]));
      for (std::size_t j = 0; j < m; ++j) sup[j + 1][k] = std::max(sup[j + 1][k], std::fabs(jet.p[j][k]));
    }
  }
  return sup;
}

double chart_norm_sampled(const AtlasContext& ctx, const Chart& c, int samples, std::vector<double>* per) {
  const int r = ctx.r();
  const std::size_t m = ctx.m();
  ChartJet jet;
  double phi = 0;
  std::vector<double> p(m, 0.0);
  for (int t = 0; t < samples; ++t) {
    chart_jet(ctx, c, samples == 1 ? 0.5 : static_cast<double>(t) / (samples - 1), r, jet);
    for (int k = 1; k <= r; ++k) {
      phi = std::max(phi, std::fabs(jet.phi[k]));
      for (std::size_t j = 0; j < m; ++j) p[j] = std::max(p[j], std::fabs(jet.p[j][k]));
    }
  }
  if (per) *per = p;
  double worst = phi;
  for (double v : p) worst = std::max(worst, v);
  return worst;
}

std::vector<Chart> subdivide_piece(const AtlasContext& ctx, const Chart& piece, const ReparamOptions& opt) {
  const int r = ctx.r();
  const std::size_t m = ctx.m();
  std::vector<Chart> out;
  if (opt.policy == SubdivisionPolicy::kAdaptive) {
    const int T = std::max(16, opt.samples);
    auto sup = sample_sups(ctx, piece, r + 1, T);
    std::vector<std::vector<double>> cert(m + 1, std::vector<double>(r + 1, 0.0));
    double need = 1.0;
    for (std::size_t f = 0; f <= m; ++f)
      for (int k = 1; k <= r; ++k) {
        cert[f][k] = sup[f][k] + sup[f][k + 1] / T;
        need = std::max(need, std::pow(cert[f][k], 1.0 / k));
      }
    const double kk = std::ceil(need - 1e-12);
    if (kk > 1e8) fail(ErrorKind::kResource, "step-3 subdivision count too large");
    const std::size_t K = std::max<std::size_t>(1, static_cast<std::size_t>(kk));
    const double h = 1.0 / static_cast<double>(K);
    double norm_phi = 0;
    std::vector<double> norm_p(m, 0.0);
    for (int k = 1; k <= r; ++k) {
      double hk = std::pow(h, k);
      norm_phi = std::max(norm_phi, cert[0][k] * hk);
      for (std::size_t j = 0; j < m; ++j) norm_p[j] = std::max(norm_p[j], cert[j + 1][k] * hk);
    }
    for (std::size_t s = 0; s < K; ++s) {
      Chart c = piece;
      c.lo = static_cast<double>(s) * h;
      c.len = h;
      c.norm_phi = norm_phi;
      c.norm_p = norm_p;
      out.push_back(std::move(c));
    }
    return out;
  }
  // Quartic policy: floor(c r^4) + 1 pieces, doubling c until every piece
  // samples within norm 1.
  double cq = 1.0;
  for (;;) {
    const double kk = std::floor(cq * std::pow(static_cast<double>(r), 4)) + 1;
    if (kk > 1e7) fail(ErrorKind::kResource, "quartic subdivision did not verify");
    const std::size_t K = static_cast<std::size_t>(kk);
    const double h = 1.0 / static_cast<double>(K);
    out.clear();
    bool ok = true;
    for (std::size_t s = 0; s < K && ok; ++s) {
      Chart c = piece;
      c.lo = static_cast<double>(s) * h;
      c.len = h;
      std::vector<double> per;
      double worst = chart_norm_sampled(ctx, c, opt.verify_samples, &per);
      c.norm_p = per;
      ChartJet jet;
      double phi = 0;
      for (int t = 0; t < opt.verify_samples; ++t) {
        chart_jet(ctx, c, static_cast<double>(t) / (opt.verify_samples - 1), r, jet);
        for (int k = 1; k <= r; ++k) phi = std::max(phi, std::fabs(jet.phi[k]));
      }
      c.norm_phi = phi;
      if (worst > 1.0 + 1e-6) ok = false;
      out.push_back(std::move(c));
    }
    if (ok) return out;
    cq *= 2;
  }
}

}  // namespace

Atlas reparametrize_1d(const std::vector<QPoly>& polys, int r, const ReparamOptions& opt) {
  if (polys.empty()) fail(ErrorKind::kArgument, "reparametrize_1d needs m >= 1");
  if (r < 1 || r + 1 > bell_table().k_max()) fail(ErrorKind::kArgument, "reparametrize_1d needs 1 <= r < 20");
  for (const auto& p : polys)
    if (p.degree() > r) fail(ErrorKind::kArgument, "polynomial degree exceeds r");

  Atlas atlas;
  atlas.polys = polys;
  atlas.r = r;
  atlas.context = make_atlas_context(polys, r);
  const AtlasContext& ctx = *atlas.context;
  const std::size_t m = polys.size();
  const double tol = opt.root_tol;

  // Step 1: boundary points of the regions where the dominant derivative and
  // its size relative to 1 are constant and no P_j crosses 0 or 1.
  std::vector<QPoly> boundary;
  const QPoly one = QPoly::constant(mpq_class(1));
  for (std::size_t i = 0; i < m; ++i) {
    QPoly d = polys[i].derivative();
    boundary.push_back(polys[i]);
    boundary.push_back(polys[i] - one);
    boundary.push_back(d - one);
    boundary.push_back(d + one);
    for (std::size_t j = i + 1; j < m; ++j) {
      QPoly e = polys[j].derivative();
      boundary.push_back(d - e);
      boundary.push_back(d + e);
    }
  }
  std::vector<std::vector<double>> found(boundary.size());
  parallel_for(boundary.size(), [&](std::size_t b) { found[b] = roots_in(boundary[b], 0.0, 1.0, tol); });
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& f : found) cuts.insert(cuts.end(), f.begin(), f.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Component> comps;
  std::vector<char> kept(cuts.size() - 1, 0);
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    double u = cuts[c], v = cuts[c + 1];
    mpq_class mid = (mpq_class(u) + mpq_class(v)) / 2;
    if (!inside_unit_exact(polys, mid)) continue;
    kept[c] = 1;
    std::size_t dom = 0;
    mpq_class best = -1;
    for (std::size_t j = 0; j < m; ++j) {
      mpq_class d = abs(polys[j].derivative()(mid));
      if (d > best) {
        best = d;
        dom = j;
      }
    }
    comps.push_back({u, v, best <= 1 ? ChartKind::kAffine : ChartKind::kInverse, static_cast<int>(dom)});
  }
  std::vector<Chart> points;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    bool adjacent = (c > 0 && kept[c - 1]) || (c + 1 < cuts.size() && kept[c]);
    if (adjacent) continue;
    bool in = true;
    for (std::size_t j = 0; j < m && in; ++j) {
      double v = ctx.p(j, 0)(cuts[c]);
      in = v >= -1e-9 && v <= 1 + 1e-9;
    }
    if (in) {
      Chart pc;
      pc.kind = ChartKind::kPoint;
      pc.a = pc.b = cuts[c];
      pc.lo = 0;
      pc.len = 1;
      pc.norm_p.assign(m, 0.0);
      points.push_back(pc);
    }
  }
  atlas.counts.step1 = comps.size() + points.size();

  // Step 2: sign-constant subdivision of the derivatives of order 2..r+1.
  std::map<int, std::vector<QPoly>> inverse_numerators;
  for (const auto& c : comps) {
    if (c.kind != ChartKind::kInverse || inverse_numerators.count(c.branch)) continue;
    const QPoly& pi = polys[c.branch];
    QPoly d1 = pi.derivative(), d2 = pi.derivative(2);
    std::vector<QPoly> nums;
    for (std::size_t j = 0; j <= m; ++j) {
      if (j == static_cast<std::size_t>(c.branch)) continue;
      QPoly n = j < m ? polys[j].derivative() : QPoly::constant(mpq_class(1));
      for (int k = 1; k <= r; ++k) {
        n = n.derivative() * d1 - n * d2 * mpq_class(2 * k - 1);
        if (!n.is_zero() && n.degree() > 0) nums.push_back(n);
      }
    }
    inverse_numerators[c.branch] = std::move(nums);
  }
  std::vector<QPoly> affine_polys;
  for (const auto& p : polys)
    for (int k = 2; k <= r + 1; ++k) {
      QPoly d = p.derivative(k);
      if (!d.is_zero() && d.degree() > 0) affine_polys.push_back(d);
    }

  std::vector<std::vector<Chart>> pieces(comps.size());
  parallel_for(comps.size(), [&](std::size_t ci) {
    const Component& c = comps[ci];
    const std::vector<QPoly>& sources = c.kind == ChartKind::kAffine ? affine_polys : inverse_numerators.at(c.branch);
    std::vector<double> cut{c.u, c.v};
    for (const auto& p : sources)
      for (double x : roots_in(p, c.u, c.v, tol))
        if (x > c.u && x < c.v) cut.push_back(x);
    std::sort(cut.begin(), cut.end());
    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
    for (std::size_t s = 0; s + 1 < cut.size(); ++s) {
      Chart piece;
      piece.kind = c.kind;
      piece.branch = c.kind == ChartKind::kInverse ? c.branch : -1;
      piece.a = cut[s];
      piece.b = cut[s + 1];
      pieces[ci].push_back(piece);
    }
  });
  std::vector<Chart> flat;
  for (auto& v : pieces)
    for (auto& p : v) flat.push_back(p);
  atlas.counts.step2 = flat.size() + points.size();

  // Step 3: compose with Q_r and cut [0,1] into equal parts.
  std::vector<std::vector<Chart>> finals(flat.size());
  parallel_for(flat.size(), [&](std::size_t i) { finals[i] = subdivide_piece(ctx, flat[i], opt); });
  for (auto& pc : points) atlas.charts.push_back(pc);
  for (auto& v : finals)
    for (auto& c : v) atlas.charts.push_back(std::move(c));
  std::stable_sort(atlas.charts.begin(), atlas.charts.end(), [](const Chart& x, const Chart& y) {
    return std::min(x.a, x.b) < std::min(y.a, y.b);
  });
  atlas.counts.step3 = atlas.charts.size();
  return atlas;
}

AtlasReport verify_atlas(const Atlas& atlas, std::size_t grid_size, int samples_per_chart) {
  AtlasReport rep;
  rep.charts = atlas.charts.size();
  auto ctx = atlas.context ? atlas.context : make_atlas_context(atlas.polys, atlas.r);
  const std::size_t m = atlas.m();
  const int r = atlas.r;
  const std::size_t n = atlas.charts.size();

  std::vector<double> np(n), nphi(n), ilo(n), ihi(n);
  parallel_for(n, [&](std::size_t c) {
    const Chart& ch = atlas.charts[c];
    ChartJet jet;
    double wp = 0, wphi = 0;
    for (int t = 0; t < samples_per_chart; ++t) {
      double tt = samples_per_chart == 1 ? 0.5 : static_cast<double>(t) / (samples_per_chart - 1);
      chart_jet(*ctx, ch, tt, r, jet);
      for (int k = 1; k <= r; ++k) {
        wphi = std::max(wphi, std::fabs(jet.phi[k]));
        for (std::size_t j = 0; j < m; ++j) wp = std::max(wp, std::fabs(jet.p[j][k]));
      }
    }
    np[c] = wp;
    nphi[c] = wphi;
    double e0 = chart_value(*ctx, ch, 0.0), e1 = chart_value(*ctx, ch, 1.0);
    ilo[c] = std::min(e0, e1);
    ihi[c] = std::max(e0, e1);
  });
  for (std::size_t c = 0; c < n; ++c) {
    rep.max_norm_p = std::max(rep.max_norm_p, np[c]);
    rep.max_norm_phi = std::max(rep.max_norm_phi, nphi[c]);
  }

  std::vector<std::pair<double, double>> images;
  for (std::size_t c = 0; c < n; ++c) images.emplace_back(ilo[c], ihi[c]);
  std::sort(images.begin(), images.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : images) {
    if (!merged.empty() && iv.first <= merged.back().second + 2e-9)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  for (std::size_t g = 0; g < grid_size; ++g) {
    double x = grid_size == 1 ? 0.5 : static_cast<double>(g) / static_cast<double>(grid_size - 1);
    bool in = true;
    for (std::size_t j = 0; j < m && in; ++j) {
      double v = ctx->p(j, 0)(x);
      in = v >= 0.0 && v <= 1.0;
    }
    if (!in) continue;
    ++rep.grid_points_inside;
    auto it = std::upper_bound(merged.begin(), merged.end(), std::make_pair(x + 1e-9, 2.0));
    bool covered = false;
    if (it != merged.begin()) {
      --it;
      covered = x >= it->first - 1e-9 && x <= it->second + 1e-9;
    }
    if (!covered) ++rep.coverage_defect;
  }
  return rep;
}

namespace {

std::string exact(double v) { return mpq_class(v).get_str(); }

double parse_exact(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::kConfig, "bad rational '" + s + "' in atlas");
  q.canonicalize();
  return q.get_d();
}

}  // namespace

void write_atlas(std::ostream& os, const Atlas& atlas) {
  os << "tailent-atlas 1\n";
  os << "r " << atlas.r << " m " << atlas.m() << "\n";
  os << "steps " << atlas.counts.step1 << " " << atlas.counts.step2 << " " << atlas.counts.step3 << "\n";
  for (std::size_t j = 0; j < atlas.m(); ++j) {
    os << "poly " << j;
    for (const auto& c : atlas.polys[j].coeffs()) os << " " << c.get_str();
    os << "\n";
  }
  for (const auto& c : atlas.charts) {
    os << "chart " << to_string(c.kind) << " branch=" << c.branch << " a=" << exact(c.a) << " b=" << exact(c.b)
       << " lo=" << exact(c.lo) << " len=" << exact(c.len) << " phi=" << exact(c.norm_phi) << " p=";
    for (std::size_t j = 0; j < c.norm_p.size(); ++j) os << (j ? "," : "") << exact(c.norm_p[j]);
    os << "\n";
  }
}

Atlas read_atlas(std::istream& is) {
  Atlas atlas;
  std::string line, tag;
  std::size_t m = 0;
  if (!std::getline(is, line) || line != "tailent-atlas 1") fail(ErrorKind::kConfig, "not an atlas file");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> tag;
    if (tag == "r") {
      std::string mk;
      ls >> atlas.r >> mk >> m;
    } else if (tag == "steps") {
      ls >> atlas.counts.step1 >> atlas.counts.step2 >> atlas.counts.step3;
    } else if (tag == "poly") {
      std::size_t j;
      ls >> j;
      std::vector<mpq_class> c;
      std::string tok;
      while (ls >> tok) {
        mpq_class q;
        if (q.set_str(tok, 10) != 0) fail(ErrorKind::kConfig, "bad coefficient '" + tok + "'");
        q.canonicalize();
        c.push_back(q);
      }
      if (j != atlas.polys.size()) fail(ErrorKind::kConfig, "polys out of order in atlas");
      atlas.polys.emplace_back(std::move(c));
    } else if (tag == "chart") {
      Chart c;
      std::string kind, tok;
      ls >> kind;
      if (kind == "point") c.kind = ChartKind::kPoint;
      else if (kind == "affine") c.kind = ChartKind::kAffine;
      else if (kind == "inverse") c.kind = ChartKind::kInverse;
      else fail(ErrorKind::kConfig, "unknown chart kind '" + kind + "'");
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) fail(ErrorKind::kConfig, "bad chart field '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "branch") c.branch = std::stoi(val);
        else if (key == "a") c.a = parse_exact(val);
        else if (key == "b") c.b = parse_exact(val);
        else if (key == "lo") c.lo = parse_exact(val);
        else if (key == "len") c.len = parse_exact(val);
        else if (key == "phi") c.norm_phi = parse_exact(val);
        else if (key == "p") {
          std::istringstream ps(val);
          std::string part;
          while (std::getline(ps, part, ',')) c.norm_p.push_back(parse_exact(part));
        } else {
          fail(ErrorKind::kConfig, "unknown chart field '" + key + "'");
        }
      }
      atlas.charts.push_back(std::move(c));
    } else {
      fail(ErrorKind::kConfig, "unknown atlas line '" + tag + "'");
    }
  }
  if (atlas.polys.size() != m) fail(ErrorKind::kConfig, "atlas declares m = " + std::to_string(m));
  atlas.context = make_atlas_context(atlas.polys, atlas.r);
  return atlas;
}

}  // namespace tailent
