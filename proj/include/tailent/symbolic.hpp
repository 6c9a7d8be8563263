#pragma once

#include <gmpxx.h>

#include <Eigen/SparseCore>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tailent {

using Word = std::vector<int>;

// One-sided subshift of finite type, coded by admissible blocks of length
// order(). Transition u -> v means u[1:] == v[:-1] and the (order+1)-word
// u + v.back() contains no forbidden word.
class Sft {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  int alphabet() const { return alphabet_; }
  int order() const { return order_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }
  const std::vector<Word>& blocks() const { return blocks_; }
  const Matrix& matrix() const { return matrix_; }
  const std::vector<std::vector<int>>& successors() const { return succ_; }
  // -1 when the block is not admissible.
  int block_index(const Word& block) const;

 private:
  friend Sft sft_from_forbidden_words(int alphabet, const std::vector<Word>& words);
  int alphabet_ = 0;
  int order_ = 1;
  std::vector<Word> forbidden_;
  std::vector<Word> blocks_;
  std::vector<long long> codes_;  // sorted block codes base alphabet, parallel to blocks_
  Matrix matrix_;
  std::vector<std::vector<int>> succ_;
};

// Block order is max(1, longest word - 1).
Sft sft_from_forbidden_words(int alphabet, const std::vector<Word>& words);

// "01000" -> {0,1,0,0,0}; digits only.
Word parse_word(const std::string& s);
std::string to_string(const Word& w);

// True when w contains none of the words.
bool avoids(const Word& w, const std::vector<Word>& words);

// log of the spectral radius: max over strongly connected components of
// power iteration on A + I.
double sft_entropy(const Sft& s);

// #admissible n-words for n = order..n_max (index n - order).
std::vector<double> word_counts(const Sft& s, int n_max);

// Least squares slope of log #(n-words) over the last half of order..n_max.
double word_count_entropy(const Sft& s, int n_max = 40);

// Slope per step of log 1^T (A^p)^m 1, the word counts of the p-th power
// system whose symbols are admissible p-words, for m up to m_max.
double power_word_count_entropy(const Sft& s, int p, int m_max = 40);

// Forbids 0 1 0 ... 0 of length p.
Sft build_Yp(int p);

struct Mixing {
  bool mixing = false;
  int exponent = 0;  // least k with A^k > 0 on the essential blocks
  std::vector<int> essential;  // blocks lying on bi-infinite paths
};

Mixing mixing_exponent(const Sft& s);

struct PeriodicWord {
  Word word;  // one period, starting at q_{-n}
  int period = 0;
  int n = 0;
  int n1 = 0;        // bridges carry n1 - 1 free symbols
  int centre_u = 0;  // index of q_0
  int centre_v = 0;  // index of q'_0, centre_u + 2n + n1
};

// Periodic word q_{-n..n} i_1..i_{n1-1} q'_{-n..n} i'_1..i'_{n1-1}, where q
// has u centred and q' has v centred. n1 = max(1, exponent - order + 1).
PeriodicWord periodic_shadow(const Sft& s, const Word& u, const Word& v, int n);

// Every cyclic factor of the periodic word avoids the forbidden words.
bool periodic_admissible(const Sft& s, const Word& w);

using Rational = mpq_class;
using RInterval = std::pair<Rational, Rational>;

struct CantorStep {
  int level = 0;  // generation that this removal belongs to
  RInterval component;
  RInterval gap;
};

// Defining sequence K_0 > K_1 > ... stored generation by generation: K_{i+1}
// removes one open gap from every component of K_i.
class CantorApprox {
 public:
  CantorApprox() = default;
  explicit CantorApprox(RInterval hull);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<RInterval>& level(int i) const { return levels_.at(i); }
  const std::vector<CantorStep>& steps() const { return steps_; }
  RInterval hull() const { return levels_.front().front(); }

  // Removes [a + lo_frac |C|, a + hi_frac |C|] from every component C = [a,b]
  // of the deepest level.
  void refine(const Rational& lo_frac, const Rational& hi_frac);
  CantorApprox affine(const Rational& scale, const Rational& shift) const;

 private:
  std::vector<std::vector<RInterval>> levels_;
  std::vector<CantorStep> steps_;
};

CantorApprox remove_middle(const Rational& ratio, int depth, const Rational& lo = 0, const Rational& hi = 1);
// "remove-middle 1/3 depth 12".
CantorApprox parse_cantor(const std::string& spec);

// inf over removals up to generation depth of min(left bridge, right bridge)/gap;
// nullopt when nothing was removed.
std::optional<Rational> thickness_exact(const CantorApprox& c, int depth);
// +inf when nothing was removed.
double thickness(const CantorApprox& c, int depth);

enum class GapAlternative { kKInGapOfF, kFInGapOfK, kIntersect };
std::string to_string(GapAlternative a);

struct GapLemmaResult {
  GapAlternative alternative = GapAlternative::kIntersect;
  // For kIntersect: Int(K_i and F_i) nonempty for i = 0..depth.
  std::vector<bool> interior;
};

GapLemmaResult gap_lemma_check(const CantorApprox& K, const CantorApprox& F, int depth);

}  // namespace tailent
