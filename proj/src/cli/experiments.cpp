#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "tailent/entropy.hpp"
#include "tailent/error.hpp"
#include "tailent/experiment.hpp"
#include "tailent/interval_map.hpp"
#include "tailent/numeric.hpp"
#include "tailent/parallel.hpp"
#include "tailent/rates.hpp"
#include "tailent/reparam.hpp"
#include "tailent/symbolic.hpp"

namespace tailent {

namespace {

using Row = std::vector<std::string>;

std::string fd(double v) { return format_double(v); }
std::string fi(long long v) { return std::to_string(v); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::string param(const ExperimentConfig& c, const std::string& key, const std::string& dflt) {
  auto it = c.params.find(key);
  return it == c.params.end() ? dflt : it->second;
}

double param_d(const ExperimentConfig& c, const std::string& key, double dflt) {
  auto it = c.params.find(key);
  if (it == c.params.end()) return dflt;
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::kConfig, "field '" + key + "': bad number '" + it->second + "'");
}

int param_i(const ExperimentConfig& c, const std::string& key, int dflt) {
  double v = param_d(c, key, dflt);
  if (v != std::floor(v) || std::fabs(v) > 1e9) fail(ErrorKind::kConfig, "field '" + key + "': not an integer");
  return static_cast<int>(v);
}

std::vector<IntervalMap> maps_of(const ExperimentConfig& c) {
  if (c.spec.empty()) fail(ErrorKind::kConfig, "field 'map': no map given");
  std::vector<IntervalMap> out;
  for (const auto& s : split(c.spec, ';')) out.push_back(parse_map(s));
  return out;
}

std::string bool_str(bool b) { return b ? "1" : "0"; }

CsvTable run_eps_entropy(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"map", "eps", "method", "bias", "n_last", "fit_from", "rate", "slope"};
  EntropyOptions o;
  o.lap_n_max = param_i(c, "lap_n_max", std::min(c.n_max, 12));
  o.grid_n_max = c.n_max;
  o.grid_bits = c.grid_bits;
  for (const auto& f : maps_of(c))
    for (double eps : c.eps_schedule()) {
      auto r = eps_entropy(f, eps, o);
      for (const auto* e : {&r.upper, &r.lower})
        t.rows.push_back({f.name(), fd(eps), e->method, to_string(e->direction), fi(e->n.empty() ? 0 : e->n.back()),
                          fi(e->fit_from), fd(e->rate), fd(e->slope)});
    }
  return t;
}

CsvTable run_tail(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"map", "eps", "method", "rate", "residual", "argmax_x", "log2_over_logeps", "log4_over_logeps",
              "rate_times_logeps"};
  for (int j = 1; j <= c.delta_levels; ++j) t.header.push_back("slope_delta" + std::to_string(j));
  TailOptions o;
  o.n_max = c.n_max;
  o.delta_levels = c.delta_levels;
  o.x_count = static_cast<std::size_t>(param_i(c, "x_count", 256));
  o.period_max = param_i(c, "period_max", -1);
  for (const auto& f : maps_of(c))
    for (double eps : c.eps_schedule()) {
      auto e = tail_entropy_estimate(f, eps, o);
      double L = std::fabs(std::log(eps));
      Row row = {f.name(), fd(eps), "tail", fd(e.rate), fd(e.residual), fd(e.argmax_x),
                 fd(std::numbers::ln2 / L), fd(2 * std::numbers::ln2 / L), fd(e.rate * L)};
      for (const auto& d : e.per_delta) row.push_back(fd(d.slope));
      t.rows.push_back(std::move(row));
    }
  return t;
}

CsvTable run_bounds(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"map", "eps", "method", "value"};
  const int r = param_i(c, "r", 1);
  for (const auto& f : maps_of(c)) {
    const double R = growth_rate_R(f, c.n_max, c.grid_bits);
    for (double eps : c.eps_schedule()) {
      t.rows.push_back({f.name(), fd(eps), "quasionedim", fd(bound_quasionedim(f, eps))});
      double w = std::numeric_limits<double>::quiet_NaN();
      try {
        w = bound_wmulti(f, eps);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kScale && e.kind() != ErrorKind::kNotC1) throw;
      }
      t.rows.push_back({f.name(), fd(eps), "wmulti", fd(w)});
      t.rows.push_back({f.name(), fd(eps), "growth_R", fd(R)});
      t.rows.push_back({f.name(), fd(eps), "buzzi_r" + std::to_string(r), fd(cr_bound_buzzi(R, r, 1))});
    }
  }
  return t;
}

std::vector<QPoly> parse_poly_list(const std::string& spec) {
  std::vector<QPoly> out;
  for (const auto& item : split(spec, ';')) {
    if (item.size() < 2 || item.front() != '[' || item.back() != ']')
      fail(ErrorKind::kConfig, "field 'spec': polynomial '" + item + "' needs [c0,c1,...]");
    std::vector<mpq_class> cs;
    for (const auto& tok : split(item.substr(1, item.size() - 2), ',')) {
      try {
        mpq_class q(tok);
        q.canonicalize();
        cs.push_back(q);
      } catch (const std::invalid_argument&) {
        fail(ErrorKind::kConfig, "field 'spec': bad rational '" + tok + "'");
      }
    }
    out.emplace_back(std::move(cs));
  }
  return out;
}

CsvTable run_reparam(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"system", "r", "m", "charts", "step1", "step2", "step3", "max_norm_p", "max_norm_phi", "coverage_defect",
              "grid_inside"};
  ReparamOptions o;
  const std::string pol = param(c, "policy", "adaptive");
  if (pol == "quartic") o.policy = SubdivisionPolicy::kQuartic;
  else if (pol != "adaptive") fail(ErrorKind::kConfig, "field 'policy': expected adaptive or quartic");
  auto emit = [&](const std::string& name, const std::vector<QPoly>& polys, int r) {
    Atlas a = reparametrize_1d(polys, r, o);
    AtlasReport rep = verify_atlas(a, 10000);
    t.rows.push_back({name, fi(r), fi(static_cast<long long>(polys.size())), fi(static_cast<long long>(a.charts.size())),
                      fi(static_cast<long long>(a.counts.step1)), fi(static_cast<long long>(a.counts.step2)),
                      fi(static_cast<long long>(a.counts.step3)), fd(rep.max_norm_p), fd(rep.max_norm_phi),
                      fi(static_cast<long long>(rep.coverage_defect)), fi(static_cast<long long>(rep.grid_points_inside))});
  };
  if (c.spec == "random") {
    const int m = param_i(c, "m", 1), seeds = param_i(c, "seeds", 4);
    if (m < 1 || m > 8 || seeds < 1) fail(ErrorKind::kConfig, "field 'm': need 1 <= m <= 8 and seeds >= 1");
    for (int r = c.n_min; r <= c.n_max; ++r)
      for (int s = 0; s < seeds; ++s) {
        std::mt19937_64 rng(1000003ULL * r + s);
        std::vector<QPoly> polys;
        for (int j = 0; j < m; ++j) {
          std::vector<mpq_class> cs;
          // Coefficients k/1024 - 2 with k uniform in 0..4096.
          for (int i = 0; i <= r; ++i) cs.emplace_back(mpq_class(static_cast<long>(rng() % 4097), 1024) - 2);
          polys.emplace_back(std::move(cs));
        }
        emit("random:" + std::to_string(s), polys, r);
      }
  } else {
    auto polys = parse_poly_list(c.spec);
    for (int r = c.n_min; r <= c.n_max; ++r) {
      bool ok = true;
      for (const auto& p : polys) ok = ok && p.degree() <= r;
      if (ok) emit(c.spec, polys, r);
    }
  }
  return t;
}

CsvTable run_sft(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"sft", "p", "entropy", "word_count_slope", "reference", "mixing_exponent"};
  auto row = [&](const std::string& name, int p, const Sft& s, double ref) {
    Mixing mx = mixing_exponent(s);
    t.rows.push_back({name, fi(p), fd(sft_entropy(s)), fd(word_count_entropy(s, param_i(c, "m_max", 40))), fd(ref),
                      mx.mixing ? fi(mx.exponent) : std::string("none")});
  };
  if (c.spec == "Yp") {
    for (int p = std::max(2, c.n_min); p <= c.n_max; ++p)
      row("Y" + std::to_string(p), p, build_Yp(p), std::log(std::ldexp(1.0, p) - 1) / p);
    return t;
  }
  if (c.spec.rfind("file:", 0) == 0) {
    // First line alphabet size, then one forbidden word per line.
    std::ifstream in(c.spec.substr(5));
    if (!in) fail(ErrorKind::kConfig, "field 'spec': cannot open '" + c.spec.substr(5) + "'");
    int alphabet = 0;
    if (!(in >> alphabet)) fail(ErrorKind::kConfig, "field 'spec': missing alphabet size");
    std::vector<Word> words;
    std::string w;
    while (in >> w) words.push_back(parse_word(w));
    row(c.spec, 1, sft_from_forbidden_words(alphabet, words), std::numeric_limits<double>::quiet_NaN());
    return t;
  }
  // "<alphabet>:<w1>,<w2>,..."
  auto colon = c.spec.find(':');
  if (colon == std::string::npos) fail(ErrorKind::kConfig, "field 'spec': expected Yp or <alphabet>:<words>");
  int alphabet = 0;
  try {
    alphabet = std::stoi(c.spec.substr(0, colon));
  } catch (const std::exception&) {
    fail(ErrorKind::kConfig, "field 'spec': bad alphabet size");
  }
  std::vector<Word> words;
  for (const auto& w : split(c.spec.substr(colon + 1), ',')) words.push_back(parse_word(w));
  row(c.spec, 1, sft_from_forbidden_words(alphabet, words), std::numeric_limits<double>::quiet_NaN());
  return t;
}

CsvTable run_thickness(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"set", "depth", "thickness", "thickness_exact", "alternative", "interior_all"};
  auto parts = split(c.spec, ';');
  if (parts.empty() || parts.size() > 2) fail(ErrorKind::kConfig, "field 'spec': expected one or two cantor specs");
  std::vector<CantorApprox> sets;
  for (const auto& p : parts) sets.push_back(parse_cantor(p));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int d = 1; d <= sets[i].depth(); ++d) {
      auto ex = thickness_exact(sets[i], d);
      t.rows.push_back({parts[i], fi(d), fd(thickness(sets[i], d)), ex ? ex->get_str() : std::string("inf"), "", ""});
    }
  if (sets.size() == 2) {
    int d = std::min(sets[0].depth(), sets[1].depth());
    auto g = gap_lemma_check(sets[0], sets[1], d);
    bool all = true;
    for (bool b : g.interior) all = all && b;
    t.rows.push_back({"pair", fi(d), "", "", to_string(g.alternative), bool_str(all)});
  }
  return t;
}

CsvTable run_weights(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"weight", "eps", "log_convex", "admissible", "G_half", "rate_bound", "G_triple", "logM0_over_G_triple"};
  WeightSequence w = parse_weight(c.spec);
  const int l = param_i(c, "l", 1), m = param_i(c, "m", 1);
  const double D = param_d(c, "D", 1.0);
  const bool lc = is_log_convex(w, 50);
  for (double eps : c.eps_schedule()) {
    double L = std::fabs(std::log(eps));
    long long gh = g_inverse(w, L / 2);
    std::string rb = "nan", adm = "";
    if (gh > 0) {
      auto b = rate_bound_gen(w, l, m, D, eps);
      rb = fd(b.value);
      adm = bool_str(b.admissible);
    } else {
      adm = bool_str(is_admissible(w, l, m, D));
    }
    long long g3 = g_inverse(w, 3 * L);
    t.rows.push_back({w.name(), fd(eps), bool_str(lc), adm, fi(gh), rb, fi(g3),
                      g3 > 0 ? fd(static_cast<double>(w.log_m0()) / g3) : std::string("inf")});
  }
  return t;
}

CsvTable run_snake(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"rate", "eps", "N", "P", "M", "R", "M_exp_P_over_eps", "window", "oscillations", "sup_d1", "sup_d2",
              "sup_d3", "vacuous_r1", "vacuous_r2", "vacuous_r3"};
  RateFunction a = parse_rate(c.spec.empty() ? "invsqrtlog" : c.spec);
  const double lambda = param_d(c, "lambda", 1.0), C = param_d(c, "C", 1.0);
  for (double eps : c.eps_schedule()) {
    Snake s = build_snake(a, eps, lambda, C);
    const auto& p = s.params;
    t.rows.push_back({a.name, fd(eps), fi(p.N), fd(p.P), fd(p.M), fd(p.R), fd(p.M * std::exp(lambda * p.P) / eps),
                      fi(p.window_index), fi(s.oscillation_count()), fd(s.sampled_sup(1)), fd(s.sampled_sup(2)),
                      fd(s.sampled_sup(3)), bool_str(s.vacuous(1)), bool_str(s.vacuous(2)), bool_str(s.vacuous(3))});
  }
  return t;
}

CsvTable run_modulus(const ExperimentConfig& c) {
  CsvTable t;
  t.header = {"map", "eps", "p_eps", "p_found", "N", "N_found", "h_est", "bound"};
  const double M0 = param_d(c, "M0", 2.0);
  ModulusOptions o;
  o.p_cap = param_i(c, "p_cap", 24);
  o.grid_bits = std::min(c.grid_bits, 16);
  auto hloc = [](double e) {
    double L = std::fabs(std::log(e));
    return std::log(L) / L;
  };
  for (const auto& f : maps_of(c))
    for (double eps : c.eps_schedule()) {
      auto r = continuity_modulus(f, eps, M0, hloc, o);
      t.rows.push_back({f.name(), fd(eps), fi(r.p_eps), bool_str(r.p_found), fd(r.N), bool_str(r.N_found),
                        fd(r.h_est), fd(r.bound)});
    }
  return t;
}

}  // namespace

CsvTable run_experiment(const ExperimentConfig& c) {
  validate(c);
  if (c.threads > 0) set_thread_count(c.threads);
  const std::string& e = c.experiment;
  if (e == "eps-entropy") return run_eps_entropy(c);
  if (e == "tail") return run_tail(c);
  if (e == "bounds") return run_bounds(c);
  if (e == "reparam") return run_reparam(c);
  if (e == "sft") return run_sft(c);
  if (e == "thickness") return run_thickness(c);
  if (e == "weights") return run_weights(c);
  if (e == "snake") return run_snake(c);
  return run_modulus(c);
}

void write_csv(std::ostream& os, const CsvTable& t, const ExperimentConfig& c) {
  const std::string version = std::to_string(kCsvSchemaVersion);
  std::ostringstream h;
  h << std::hex << c.hash();
  const std::string hash = h.str();
  os << "schema_version,config_hash";
  for (const auto& col : t.header) os << ',' << col;
  os << '\n';
  for (const auto& row : t.rows) {
    os << version << ',' << hash;
    for (const auto& v : row) os << ',' << v;
    os << '\n';
  }
}

std::string render_csv(const ExperimentConfig& c) {
  std::ostringstream os;
  write_csv(os, run_experiment(c), c);
  return os.str();
}

int run_experiment_main(const ExperimentConfig& c, std::ostream& err) {
  try {
    validate(c);
    std::string csv = render_csv(c);
    if (c.out.empty() || c.out == "-") {
      std::cout << csv;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) fail(ErrorKind::kConfig, "field 'out': cannot write '" + c.out + "'");
      f << csv;
    }
    return 0;
  } catch (const Error& e) {
    err << "tailent: " << e.what() << '\n';
    return e.kind() == ErrorKind::kConfig ? 2 : 3;
  } catch (const std::bad_alloc&) {
    err << "tailent: out of memory\n";
    return 3;
  }
}

}  // namespace tailent
