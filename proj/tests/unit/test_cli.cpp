#include <doctest.h>

#include <fmt/format.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tailent/error.hpp"
#include "tailent/experiment.hpp"
#include "tailent/verify.hpp"

using namespace tailent;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

int column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = parse_config("experiment = tail\n# comment\nmap = tent ; quadratic:4\neps_count=3 # trailing\nx_count=64\n");
  CHECK(c.experiment == "tail");
  CHECK(c.spec == "tent ; quadratic:4");
  CHECK(c.eps_count == 3);
  CHECK(c.params.at("x_count") == "64");
  CHECK(c.eps_schedule().size() == 3);
  CHECK(c.eps_schedule()[1] == doctest::Approx(0.0625));
  CHECK_NOTHROW(validate(c));

  auto d = c;
  d.threads = 7;
  d.out = "x.csv";
  CHECK(d.hash() == c.hash());
  d.eps_count = 4;
  CHECK(d.hash() != c.hash());
}

TEST_CASE("config errors name the field") {
  auto expect_config_error = [](const std::string& text, const std::string& field) {
    try {
      validate(parse_config(text));
      FAIL("no error for " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kConfig);
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  expect_config_error("experiment=tail\nmap=tent\nbogus_key=1\n", "bogus_key");
  expect_config_error("experiment=nope\n", "experiment");
  expect_config_error("experiment=tail\nmap=tent\neps_count=abc\n", "eps_count");
  expect_config_error("experiment=tail\nmap=tent\neps_ratio=2\n", "eps_ratio");
  expect_config_error("experiment=tail\nmap=tent\nn_min=9\nn_max=3\n", "n_max");

  ExperimentConfig bad = parse_config("experiment=tail\nmap=tent\n");
  bad.params["lambda"] = "1";
  std::ostringstream err;
  CHECK(run_experiment_main(bad, err) == 2);
  CHECK(err.str().find("lambda") != std::string::npos);

  ExperimentConfig unknown_map = parse_config("experiment=tail\nmap=not-a-map\n");
  std::ostringstream err2;
  CHECK(run_experiment_main(unknown_map, err2) == 2);
}

TEST_CASE("tail csv has schema columns and one row per scale") {
  auto c = parse_config("experiment=tail\nmap=tent\nn_max=8\nx_count=32\ngrid_bits=12\nthreads=1\n");
  auto rows = parse_csv(render_csv(c));
  REQUIRE(rows.size() == 7);
  const auto& h = rows[0];
  CHECK(h[0] == "schema_version");
  CHECK(h[1] == "config_hash");
  CHECK(column(h, "log2_over_logeps") >= 0);
  CHECK(column(h, "log4_over_logeps") >= 0);
  int r = column(h, "rate");
  REQUIRE(r >= 0);
  const std::string hash = fmt::format("{:016x}", c.hash());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == h.size());
    CHECK(rows[i][0] == "1");
    CHECK(rows[i][1] == hash);
    CHECK(std::stod(rows[i][r]) >= 0);
  }
}

TEST_CASE("identity map has zero rates") {
  auto c = parse_config("experiment=eps-entropy\nmap=identity\nn_max=6\neps_count=3\nthreads=1\n");
  auto rows = parse_csv(render_csv(c));
  int s = column(rows[0], "slope");
  REQUIRE(s >= 0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::fabs(std::stod(rows[i][s])) < 1e-12);
}

TEST_CASE("Y_p reference column") {
  auto c = parse_config("experiment=sft\nsft=Yp\nn_min=3\nn_max=7\nthreads=1\n");
  auto rows = parse_csv(render_csv(c));
  REQUIRE(rows.size() == 6);
  int h = column(rows[0], "entropy"), ref = column(rows[0], "reference");
  REQUIRE(h >= 0);
  REQUIRE(ref >= 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    int p = static_cast<int>(i) + 2;
    CHECK(std::stod(rows[i][ref]) == doctest::Approx(std::log(std::ldexp(1.0, p) - 1) / p));
    CHECK(std::fabs(std::stod(rows[i][h]) - std::stod(rows[i][ref])) <= std::ldexp(1.0, 1 - p));
  }
}

TEST_CASE("output does not depend on the thread count") {
  for (const char* text : {"experiment=eps-entropy\nmap=tent;quadratic:3.9\nn_max=8\neps_count=3\n",
                           "experiment=weights\nweight=kpow2\neps_count=4\n",
                           "experiment=reparam\nspec=random\nn_min=2\nn_max=3\nseeds=2\nm=1\n"}) {
    auto c = parse_config(text);
    c.threads = 1;
    std::string one = render_csv(c);
    c.threads = 3;
    CHECK(render_csv(c) == one);
  }
}

TEST_CASE("verify tags") {
  CHECK(verify_selection("full").size() == 11);
  CHECK(verify_selection("7") == std::vector<int>{7});
  CHECK(verify_selection("sft") == std::vector<int>{4});
  CHECK_THROWS_AS(verify_selection("nonsense"), Error);
  auto r = run_criterion(1);
  CHECK(r.pass);
  CHECK(format_result(r).rfind("[PASS] criterion  1", 0) == 0);
}
