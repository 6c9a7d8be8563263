#include <limits>
#include <sstream>

#include "tailent/error.hpp"
#include "tailent/symbolic.hpp"

namespace tailent {

CantorApprox::CantorApprox(RInterval hull) {
  if (!(hull.first < hull.second)) fail(ErrorKind::kArgument, "Cantor hull must have positive length");
  levels_.push_back({std::move(hull)});
}

void CantorApprox::refine(const Rational& lo_frac, const Rational& hi_frac) {
  if (levels_.empty()) fail(ErrorKind::kArgument, "refine on an empty Cantor approximation");
  if (!(lo_frac > 0 && lo_frac < hi_frac && hi_frac < 1)) fail(ErrorKind::kArgument, "gap must satisfy 0 < lo < hi < 1");
  const int lvl = depth();
  std::vector<RInterval> next;
  next.reserve(levels_.back().size() * 2);
  for (const auto& [a, b] : levels_.back()) {
    Rational len = b - a;
    RInterval gap{a + lo_frac * len, a + hi_frac * len};
    steps_.push_back({lvl, {a, b}, gap});
    next.emplace_back(a, gap.first);
    next.emplace_back(gap.second, b);
  }
  levels_.push_back(std::move(next));
}

CantorApprox CantorApprox::affine(const Rational& scale, const Rational& shift) const {
  if (scale <= 0) fail(ErrorKind::kArgument, "affine scale must be positive");
  CantorApprox c;
  auto map = [&](const RInterval& I) { return RInterval{scale * I.first + shift, scale * I.second + shift}; };
  for (const auto& lvl : levels_) {
    std::vector<RInterval> v;
    for (const auto& I : lvl) v.push_back(map(I));
    c.levels_.push_back(std::move(v));
  }
  for (const auto& st : steps_) c.steps_.push_back({st.level, map(st.component), map(st.gap)});
  return c;
}

CantorApprox remove_middle(const Rational& ratio, int depth, const Rational& lo, const Rational& hi) {
  if (!(ratio > 0 && ratio < 1)) fail(ErrorKind::kArgument, "removed ratio must lie in (0,1)");
  if (depth < 0 || depth > 20) fail(ErrorKind::kArgument, "Cantor depth must lie in 0..20");
  CantorApprox c({lo, hi});
  Rational a = (1 - ratio) / 2, b = (1 + ratio) / 2;
  for (int i = 0; i < depth; ++i) c.refine(a, b);
  return c;
}

CantorApprox parse_cantor(const std::string& spec) {
  std::istringstream in(spec);
  std::string kind, ratio, kw;
  int depth = -1;
  in >> kind >> ratio >> kw >> depth;
  if (kind != "remove-middle" || kw != "depth" || in.fail())
    fail(ErrorKind::kConfig, "Cantor spec must read 'remove-middle <p/q> depth <d>'");
  Rational r;
  try {
    r = Rational(ratio);
    r.canonicalize();
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::kConfig, "bad ratio '" + ratio + "'");
  }
  return remove_middle(r, depth);
}

std::optional<Rational> thickness_exact(const CantorApprox& c, int depth) {
  if (depth < 0 || depth > c.depth()) fail(ErrorKind::kArgument, "depth beyond the stored approximation");
  std::optional<Rational> best;
  for (const auto& st : c.steps()) {
    if (st.level >= depth) continue;
    Rational gap = st.gap.second - st.gap.first;
    Rational left = st.gap.first - st.component.first, right = st.component.second - st.gap.second;
    Rational ratio = (left < right ? left : right) / gap;
    if (!best || ratio < *best) best = ratio;
  }
  return best;
}

double thickness(const CantorApprox& c, int depth) {
  auto t = thickness_exact(c, depth);
  return t ? t->get_d() : std::numeric_limits<double>::infinity();
}

std::string to_string(GapAlternative a) {
  switch (a) {
    case GapAlternative::kKInGapOfF: return "K-in-gap-of-F";
    case GapAlternative::kFInGapOfK: return "F-in-gap-of-K";
    case GapAlternative::kIntersect: return "intersect";
  }
  return "?";
}

namespace {

// Hull of A lies in the closure of a gap of B (bounded or unbounded).
bool in_gap(const std::vector<RInterval>& A, const std::vector<RInterval>& B) {
  const Rational& lo = A.front().first;
  const Rational& hi = A.back().second;
  if (hi <= B.front().first || lo >= B.back().second) return true;
  for (std::size_t i = 0; i + 1 < B.size(); ++i)
    if (lo >= B[i].second && hi <= B[i + 1].first) return true;
  return false;
}

bool interiors_meet(const std::vector<RInterval>& A, const std::vector<RInterval>& B) {
  std::size_t i = 0, j = 0;
  while (i < A.size() && j < B.size()) {
    const Rational& lo = A[i].first > B[j].first ? A[i].first : B[j].first;
    const Rational& hi = A[i].second < B[j].second ? A[i].second : B[j].second;
    if (lo < hi) return true;
    if (A[i].second < B[j].second) ++i;
    else ++j;
  }
  return false;
}

}  // namespace

GapLemmaResult gap_lemma_check(const CantorApprox& K, const CantorApprox& F, int depth) {
  if (depth < 0 || depth > K.depth() || depth > F.depth()) fail(ErrorKind::kArgument, "depth beyond the stored approximations");
  auto tk = thickness_exact(K, depth), tf = thickness_exact(F, depth);
  if (tk && tf && !(*tk * *tf > 1)) fail(ErrorKind::kHypothesisUnmet, "thickness product is not above 1");
  GapLemmaResult r;
  const auto& Kd = K.level(depth);
  const auto& Fd = F.level(depth);
  if (in_gap(Kd, Fd)) {
    r.alternative = GapAlternative::kKInGapOfF;
    return r;
  }
  if (in_gap(Fd, Kd)) {
    r.alternative = GapAlternative::kFInGapOfK;
    return r;
  }
  r.alternative = GapAlternative::kIntersect;
  for (int i = 0; i <= depth; ++i) r.interior.push_back(interiors_meet(K.level(i), F.level(i)));
  return r;
}

}  // namespace tailent
