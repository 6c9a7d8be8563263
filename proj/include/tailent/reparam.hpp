#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "tailent/polynomial.hpp"

namespace tailent {

enum class ChartKind { kPoint, kAffine, kInverse };

const char* to_string(ChartKind kind);

// phi(t) = psi(Q_r(lo + len * t)) for t in [0,1], where psi(s) = a + s (b - a)
// for affine charts and psi(s) = P_branch^{-1}(P_branch(a) + s (P_branch(b) -
// P_branch(a))) on [a,b] for inverse-branch charts. Point charts are constant.
struct Chart {
  ChartKind kind = ChartKind::kAffine;
  double a = 0.0;
  double b = 1.0;
  int branch = -1;
  double lo = 0.0;
  double len = 1.0;
  // Sampled sup over orders 1..r, recorded at construction.
  double norm_phi = 0.0;
  std::vector<double> norm_p;
};

struct StepCounts {
  std::size_t step1 = 0;  // kept components and isolated points
  std::size_t step2 = 0;  // sign-constant pieces
  std::size_t step3 = 0;  // final charts
};

enum class SubdivisionPolicy {
  kAdaptive,  // per-piece count from sampled derivative sizes
  kQuartic,   // floor(c r^4) + 1 with c doubled until the piece verifies
};

struct ReparamOptions {
  SubdivisionPolicy policy = SubdivisionPolicy::kAdaptive;
  int samples = 4096;       // per step-2 piece, for the adaptive count
  int verify_samples = 33;  // per chart, for the quartic policy
  double root_tol = 1e-13;
};

class AtlasContext;

struct Atlas {
  std::vector<QPoly> polys;
  int r = 1;
  std::vector<Chart> charts;
  StepCounts counts;
  std::shared_ptr<const AtlasContext> context;

  std::size_t m() const { return polys.size(); }
};

// Derivatives 0..order of phi and of every P_j o phi at t.
struct ChartJet {
  std::vector<double> phi;
  std::vector<std::vector<double>> p;
};

std::shared_ptr<const AtlasContext> make_atlas_context(const std::vector<QPoly>& polys, int r);
void chart_jet(const AtlasContext& ctx, const Chart& chart, double t, int order, ChartJet& out);
double chart_value(const AtlasContext& ctx, const Chart& chart, double t);

Atlas reparametrize_1d(const std::vector<QPoly>& polys, int r, const ReparamOptions& options = {});

struct AtlasReport {
  double max_norm_p = 0.0;
  double max_norm_phi = 0.0;
  std::size_t coverage_defect = 0;
  std::size_t grid_points_inside = 0;
  std::size_t charts = 0;
};

AtlasReport verify_atlas(const Atlas& atlas, std::size_t grid_size = 10000, int samples_per_chart = 33);

void write_atlas(std::ostream& os, const Atlas& atlas);
Atlas read_atlas(std::istream& is);

}  // namespace tailent
