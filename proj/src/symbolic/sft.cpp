#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>

#include "tailent/error.hpp"
#include "tailent/numeric.hpp"
#include "tailent/symbolic.hpp"

namespace tailent {

namespace {

bool contains_at(const Word& w, std::size_t pos, const Word& f) {
  if (pos + f.size() > w.size()) return false;
  return std::equal(f.begin(), f.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

long long encode(const Word& w, int alphabet) {
  long long c = 0;
  for (int s : w) c = c * alphabet + s;
  return c;
}

}  // namespace

bool avoids(const Word& w, const std::vector<Word>& words) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (const auto& f : words)
      if (contains_at(w, i, f)) return false;
  return true;
}

Word parse_word(const std::string& s) {
  Word w;
  for (char ch : s) {
    if (ch < '0' || ch > '9') fail(ErrorKind::kConfig, "word '" + s + "' must consist of digits");
    w.push_back(ch - '0');
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  for (int c : w) s += static_cast<char>('0' + c);
  return s;
}

int Sft::block_index(const Word& block) const {
  if (static_cast<int>(block.size()) != order_) return -1;
  for (int c : block)
    if (c < 0 || c >= alphabet_) return -1;
  auto it = std::lower_bound(codes_.begin(), codes_.end(), encode(block, alphabet_));
  if (it == codes_.end() || *it != encode(block, alphabet_)) return -1;
  return static_cast<int>(it - codes_.begin());
}

Sft sft_from_forbidden_words(int alphabet, const std::vector<Word>& words) {
  if (alphabet < 1 || alphabet > 10) fail(ErrorKind::kArgument, "alphabet size must lie in 1..10");
  std::size_t maxlen = 0;
  for (const auto& w : words) {
    if (w.empty()) fail(ErrorKind::kArgument, "forbidden words must be nonempty");
    for (int c : w)
      if (c < 0 || c >= alphabet) fail(ErrorKind::kArgument, "forbidden word uses a symbol outside the alphabet");
    maxlen = std::max(maxlen, w.size());
  }
  Sft s;
  s.alphabet_ = alphabet;
  s.order_ = std::max<int>(1, static_cast<int>(maxlen) - 1);
  s.forbidden_ = words;
  const double total = std::pow(static_cast<double>(alphabet), s.order_);
  if (total > static_cast<double>(1 << 22)) fail(ErrorKind::kResource, "too many blocks for the block order");
  const long long count = static_cast<long long>(total);
  Word w(s.order_);
  for (long long c = 0; c < count; ++c) {
    long long x = c;
    for (int i = s.order_ - 1; i >= 0; --i) {
      w[i] = static_cast<int>(x % alphabet);
      x /= alphabet;
    }
    if (avoids(w, words)) {
      s.blocks_.push_back(w);
      s.codes_.push_back(c);
    }
  }
  if (s.blocks_.empty()) fail(ErrorKind::kDegenerateShift, "every block contains a forbidden word");
  const std::size_t nb = s.blocks_.size();
  s.succ_.assign(nb, {});
  std::vector<Eigen::Triplet<double>> trip;
  Word ext(s.order_ + 1);
  for (std::size_t i = 0; i < nb; ++i) {
    std::copy(s.blocks_[i].begin(), s.blocks_[i].end(), ext.begin());
    for (int a = 0; a < alphabet; ++a) {
      ext.back() = a;
      Word next(ext.begin() + 1, ext.end());
      int j = s.block_index(next);
      if (j < 0) continue;
      // Only factors ending at the new symbol can be new.
      bool ok = true;
      for (const auto& f : words)
        if (f.size() <= ext.size() && contains_at(ext, ext.size() - f.size(), f)) ok = false;
      if (!ok) continue;
      s.succ_[i].push_back(j);
      trip.emplace_back(static_cast<int>(i), j, 1.0);
    }
  }
  s.matrix_.resize(static_cast<int>(nb), static_cast<int>(nb));
  s.matrix_.setFromTriplets(trip.begin(), trip.end());
  return s;
}

double sft_entropy(const Sft& s) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const auto& succ = s.successors();
  const std::size_t nb = succ.size();
  Graph g(nb);
  for (std::size_t i = 0; i < nb; ++i)
    for (int j : succ[i]) boost::add_edge(i, static_cast<std::size_t>(j), g);
  std::vector<int> comp(nb);
  int ncomp = boost::strong_components(g, comp.data());
  std::vector<std::vector<int>> members(ncomp);
  for (std::size_t i = 0; i < nb; ++i) members[comp[i]].push_back(static_cast<int>(i));

  double rho = -1.0;
  std::vector<int> local(nb, -1);
  for (int c = 0; c < ncomp; ++c) {
    const auto& m = members[c];
    for (std::size_t k = 0; k < m.size(); ++k) local[m[k]] = static_cast<int>(k);
    bool has_edge = false;
    for (int i : m)
      for (int j : succ[i])
        if (comp[j] == c) has_edge = true;
    if (!has_edge) continue;
    // Power iteration on A + I restricted to the component; A + I is primitive
    // there, so the ratio converges geometrically.
    std::vector<double> v(m.size(), 1.0 / static_cast<double>(m.size())), w(m.size());
    double lambda = 0.0;
    int stable = 0;
    for (int it = 0; it < 2000000 && stable < 5; ++it) {
      std::copy(v.begin(), v.end(), w.begin());
      for (std::size_t k = 0; k < m.size(); ++k)
        for (int j : succ[m[k]])
          if (comp[j] == c) w[local[j]] += v[k];
      double sum = std::accumulate(w.begin(), w.end(), 0.0);
      double next = sum / std::accumulate(v.begin(), v.end(), 0.0);
      stable = std::fabs(next - lambda) <= 1e-13 * next ? stable + 1 : 0;
      lambda = next;
      for (std::size_t k = 0; k < m.size(); ++k) v[k] = w[k] / sum;
    }
    rho = std::max(rho, lambda - 1.0);
  }
  if (rho <= 0.0) fail(ErrorKind::kDegenerateShift, "transition matrix is nilpotent");
  return std::log(rho);
}

std::vector<double> word_counts(const Sft& s, int n_max) {
  const auto& succ = s.successors();
  std::vector<double> x(succ.size(), 1.0), y(succ.size());
  std::vector<double> out;
  for (int n = s.order(); n <= n_max; ++n) {
    out.push_back(std::accumulate(x.begin(), x.end(), 0.0));
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < succ.size(); ++i)
      for (int j : succ[i]) y[j] += x[i];
    std::swap(x, y);
  }
  return out;
}

double word_count_entropy(const Sft& s, int n_max) {
  if (n_max < s.order() + 3) fail(ErrorKind::kArgument, "n_max too small for the block order");
  auto c = word_counts(s, n_max);
  std::vector<double> xs, ys;
  const int from = s.order() + (n_max - s.order()) / 2;
  for (int n = from; n <= n_max; ++n) {
    double v = c[n - s.order()];
    if (v <= 0) fail(ErrorKind::kDegenerateShift, "no admissible words of length " + std::to_string(n));
    xs.push_back(n);
    ys.push_back(std::log(v));
  }
  return fit_line(xs, ys).slope;
}

double power_word_count_entropy(const Sft& s, int p, int m_max) {
  if (p < 1 || m_max < 4) fail(ErrorKind::kArgument, "power system needs p >= 1 and m_max >= 4");
  Sft::Matrix P = s.matrix();
  for (int k = 1; k < p; ++k) P = Sft::Matrix(P * s.matrix());
  Eigen::VectorXd x = Eigen::VectorXd::Ones(P.rows());
  double log_scale = 0.0;
  std::vector<double> ms, logs;
  for (int m = 0; m <= m_max; ++m) {
    double sum = x.sum();
    if (sum <= 0) fail(ErrorKind::kDegenerateShift, "power system has no words of this length");
    if (m >= m_max / 2) {
      ms.push_back(m);
      logs.push_back(log_scale + std::log(sum));
    }
    x /= sum;
    log_scale += std::log(sum);
    x = P.transpose() * x;
  }
  return fit_line(ms, logs).slope;
}

Sft build_Yp(int p) {
  if (p < 2) fail(ErrorKind::kArgument, "Y_p needs p >= 2");
  Word w(p, 0);
  w[1] = 1;
  return sft_from_forbidden_words(2, {w});
}

Mixing mixing_exponent(const Sft& s) {
  const auto& succ = s.successors();
  const std::size_t nb = succ.size();
  std::vector<char> alive(nb, 1);
  std::vector<int> indeg(nb, 0), outdeg(nb, 0);
  std::vector<std::vector<int>> pred(nb);
  for (std::size_t i = 0; i < nb; ++i)
    for (int j : succ[i]) {
      ++indeg[j];
      ++outdeg[i];
      pred[j].push_back(static_cast<int>(i));
    }
  std::deque<int> q;
  for (std::size_t i = 0; i < nb; ++i)
    if (indeg[i] == 0 || outdeg[i] == 0) q.push_back(static_cast<int>(i));
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (int j : succ[v])
      if (alive[j] && --indeg[j] == 0) q.push_back(j);
    for (int i : pred[v])
      if (alive[i] && --outdeg[i] == 0) q.push_back(i);
  }
  Mixing mx;
  for (std::size_t i = 0; i < nb; ++i)
    if (alive[i]) mx.essential.push_back(static_cast<int>(i));
  const std::size_t n = mx.essential.size();
  if (n == 0) return mx;
  std::vector<int> local(nb, -1);
  for (std::size_t k = 0; k < n; ++k) local[mx.essential[k]] = static_cast<int>(k);

  // Irreducible and aperiodic is equivalent to primitive.
  std::vector<int> level(n, -1);
  level[0] = 0;
  std::deque<int> bfs{0};
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    for (int j : succ[mx.essential[v]]) {
      int lj = local[j];
      if (lj >= 0 && level[lj] < 0) {
        level[lj] = level[v] + 1;
        bfs.push_back(lj);
      }
    }
  }
  if (std::any_of(level.begin(), level.end(), [](int l) { return l < 0; })) return mx;
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(n);
  int period = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (int j : succ[mx.essential[k]])
      if (local[j] >= 0) {
        boost::add_edge(k, static_cast<std::size_t>(local[j]), g);
        period = std::gcd(period, std::abs(level[k] + 1 - level[local[j]]));
      }
  std::vector<int> comp(n);
  if (boost::strong_components(g, comp.data()) != 1 || period != 1) return mx;

  const std::size_t words = (n + 63) / 64;
  using Rows = std::vector<std::uint64_t>;
  Rows A(n * words, 0), M;
  for (std::size_t k = 0; k < n; ++k)
    for (int j : succ[mx.essential[k]])
      if (local[j] >= 0) A[k * words + local[j] / 64] |= std::uint64_t{1} << (local[j] % 64);
  auto full = [&](const Rows& R) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t b = 0; b < n; ++b)
        if (!(R[k * words + b / 64] >> (b % 64) & 1)) return false;
    return true;
  };
  M = A;
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (full(M)) {
      mx.mixing = true;
      mx.exponent = static_cast<int>(k);
      return mx;
    }
    Rows next(n * words, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (M[i * words + j / 64] >> (j % 64) & 1)
          for (std::size_t b = 0; b < words; ++b) next[i * words + b] |= A[j * words + b];
    M.swap(next);
  }
  return mx;
}

namespace {

// Block path of exactly `steps` transitions from `from` to `to` inside the
// allowed set; empty when none exists.
std::vector<int> bridge_path(const Sft& s, const std::vector<int>& local, int from, int to, int steps) {
  const auto& succ = s.successors();
  std::vector<std::vector<char>> reach(steps + 1, std::vector<char>(succ.size(), 0));
  reach[0][from] = 1;
  for (int t = 0; t < steps; ++t)
    for (std::size_t i = 0; i < succ.size(); ++i)
      if (reach[t][i])
        for (int j : succ[i])
          if (local[j] >= 0) reach[t + 1][j] = 1;
  if (!reach[steps][to]) return {};
  std::vector<int> path(steps + 1);
  path[steps] = to;
  for (int t = steps - 1; t >= 0; --t) {
    for (std::size_t i = 0; i < succ.size(); ++i) {
      if (!reach[t][i]) continue;
      if (std::find(succ[i].begin(), succ[i].end(), path[t + 1]) != succ[i].end()) {
        path[t] = static_cast<int>(i);
        break;
      }
    }
  }
  return path;
}

// Admissible word of the given length with u placed so that its centre sits at
// index n, built from essential blocks.
Word centred_word(const Sft& s, const std::vector<int>& local, const Word& u, int n) {
  const int len = 2 * n + 1, L = s.order();
  const int start = n - (static_cast<int>(u.size()) - 1) / 2;
  std::vector<int> want(len, -1);
  for (std::size_t i = 0; i < u.size(); ++i) want[start + i] = u[i];
  const auto& blocks = s.blocks();
  const auto& succ = s.successors();
  auto fits = [&](int b, int t) {
    for (int i = 0; i < L; ++i)
      if (want[t + i] >= 0 && blocks[b][i] != want[t + i]) return false;
    return true;
  };
  const int steps = len - L;
  std::vector<std::vector<char>> ok(steps + 1, std::vector<char>(blocks.size(), 0));
  for (std::size_t b = 0; b < blocks.size(); ++b) ok[0][b] = local[b] >= 0 && fits(static_cast<int>(b), 0);
  for (int t = 0; t < steps; ++t)
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (ok[t][i])
        for (int j : succ[i])
          if (local[j] >= 0 && fits(j, t + 1)) ok[t + 1][j] = 1;
  int last = -1;
  for (std::size_t b = 0; b < blocks.size() && last < 0; ++b)
    if (ok[steps][b]) last = static_cast<int>(b);
  if (last < 0) fail(ErrorKind::kArgument, "word " + to_string(u) + " has no admissible centred extension");
  std::vector<int> path(steps + 1);
  path[steps] = last;
  for (int t = steps - 1; t >= 0; --t)
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (ok[t][i] && std::find(succ[i].begin(), succ[i].end(), path[t + 1]) != succ[i].end()) {
        path[t] = static_cast<int>(i);
        break;
      }
  Word w = blocks[path[0]];
  for (int t = 1; t <= steps; ++t) w.push_back(blocks[path[t]].back());
  return w;
}

}  // namespace

PeriodicWord periodic_shadow(const Sft& s, const Word& u, const Word& v, int n) {
  if (n < 1) fail(ErrorKind::kArgument, "periodic_shadow needs n >= 1");
  if (u.empty() || v.empty() || static_cast<int>(u.size()) > 2 * n + 1 || static_cast<int>(v.size()) > 2 * n + 1)
    fail(ErrorKind::kArgument, "u and v must be nonempty words of length at most 2n+1");
  if (2 * n + 1 < s.order()) fail(ErrorKind::kArgument, "2n+1 must be at least the block order");
  Mixing mx = mixing_exponent(s);
  if (!mx.mixing) fail(ErrorKind::kMixingRequired, "subshift is not mixing");
  std::vector<int> local(s.blocks().size(), -1);
  for (std::size_t k = 0; k < mx.essential.size(); ++k) local[mx.essential[k]] = static_cast<int>(k);

  PeriodicWord out;
  out.n = n;
  out.n1 = std::max(1, mx.exponent - s.order() + 1);
  const int L = s.order();
  Word q = centred_word(s, local, u, n), qp = centred_word(s, local, v, n);
  auto last_block = [&](const Word& w) { return s.block_index(Word(w.end() - L, w.end())); };
  auto first_block = [&](const Word& w) { return s.block_index(Word(w.begin(), w.begin() + L)); };
  const int steps = out.n1 - 1 + L;
  auto b1 = bridge_path(s, local, last_block(q), first_block(qp), steps);
  auto b2 = bridge_path(s, local, last_block(qp), first_block(q), steps);
  if (b1.empty() || b2.empty()) fail(ErrorKind::kMixingRequired, "no bridge of the witness length");
  Word w = q;
  for (int t = 1; t < out.n1; ++t) w.push_back(s.blocks()[b1[t]].back());
  w.insert(w.end(), qp.begin(), qp.end());
  for (int t = 1; t < out.n1; ++t) w.push_back(s.blocks()[b2[t]].back());
  out.word = std::move(w);
  out.period = static_cast<int>(out.word.size());
  out.centre_u = n;
  out.centre_v = 3 * n + out.n1;
  return out;
}

bool periodic_admissible(const Sft& s, const Word& w) {
  if (w.empty()) return false;
  std::size_t maxlen = 0;
  for (const auto& f : s.forbidden()) maxlen = std::max(maxlen, f.size());
  Word ext = w;
  while (ext.size() < w.size() + maxlen) ext.insert(ext.end(), w.begin(), w.end());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (const auto& f : s.forbidden())
      if (contains_at(ext, i, f)) return false;
  return true;
}

}  // namespace tailent
