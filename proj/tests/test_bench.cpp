#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sihd/bench.hpp"

using namespace sihd;

namespace {

std::string csv_string(const Metadata& m, const DataTable& t) {
  std::ostringstream os;
  write_csv(os, m, t);
  return os.str();
}

// CSV payload with the timestamp metadata line removed.
std::string strip_timestamp(const std::string& csv) {
  std::istringstream is(csv);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("#timestamp=", 0) == 0) continue;
    os << line << '\n';
  }
  return os.str();
}

std::map<std::string, std::string> read_metadata(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(f, line) && line.rfind('#', 0) == 0) {
    const auto eq = line.find('=');
    meta[line.substr(1, eq - 1)] = line.substr(eq + 1);
  }
  return meta;
}

}  // namespace

TEST_CASE("option application by key") {
  BenchOptions o;
  apply_option(o, "alpha", "0.9");
  CHECK(o.alpha == 0.9);
  apply_option(o, "psi", "exponential");
  CHECK(o.psi == "exponential");
  apply_option(o, "seed", "123");
  CHECK(o.seed == 123);
  CHECK_THROWS_AS(apply_option(o, "granularity", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_option(o, "alpha", "0.9x"), std::invalid_argument);
  BenchOptions bad;
  bad.sd_mode = "off";
  CHECK_THROWS_AS(bad.diff_params(), std::invalid_argument);
  bad = BenchOptions{};
  bad.mode = "fast";
  CHECK_THROWS_AS(bad.scheme_config(), std::invalid_argument);
}

TEST_CASE("zero signal with zero initial state gives zero error channels") {
  BenchOptions o;
  o.amplitude = 0.0;
  o.duration = 0.5;
  o.t_skip = 0.1;
  const auto r = run_diff(o);
  for (const char* name : {"e1", "e2", "e3", "e4"}) {
    const auto* col = r.table.find(name);
    REQUIRE(col != nullptr);
    for (double v : col->values) CHECK(v == 0.0);
  }
  CHECK(r.summary.mean_abs_e1 == 0.0);
}

TEST_CASE("csv payload is reproducible modulo the timestamp line") {
  BenchOptions o;
  o.duration = 0.3;
  o.t_skip = 0.1;
  o.eta0 = 1e-6;
  const auto a = run_diff(o);
  const auto b = run_diff(o);
  CHECK(strip_timestamp(csv_string(a.meta, a.table)) ==
        strip_timestamp(csv_string(b.meta, b.table)));
}

TEST_CASE("summary is consistent with the emitted series") {
  BenchOptions o;
  o.omega = 1.0;
  o.duration = 2.0;
  o.t_skip = 0.5;
  const auto r = run_diff(o);
  const auto* t = r.table.find("t");
  double sums[3] = {0, 0, 0};
  long long count = 0;
  const char* names[3] = {"e1", "e2", "e3"};
  for (std::size_t k = 0; k < t->values.size(); ++k) {
    if (t->values[k] < o.t_skip) continue;
    for (int i = 0; i < 3; ++i) {
      sums[i] += std::abs(r.table.find(names[i])->values[k]);
    }
    ++count;
  }
  CHECK(r.summary.mean_abs_e1 ==
        doctest::Approx(sums[0] / count).epsilon(1e-12));
  CHECK(r.summary.mean_abs_e2 ==
        doctest::Approx(sums[1] / count).epsilon(1e-12));
  CHECK(r.summary.mean_abs_e3 ==
        doctest::Approx(sums[2] / count).epsilon(1e-12));
}

TEST_CASE("ode run starts every scheme at the problem's y0") {
  BenchOptions o;
  o.problem = "ex2";
  const auto r = run_ode(o);
  for (const char* name : {"y_exact", "y_euler", "y_rk4", "y_nsfd_sihd"}) {
    const auto* col = r.table.find(name);
    REQUIRE(col != nullptr);
    CHECK(col->values.front() == doctest::Approx(0.2).epsilon(1e-15));
  }
}

TEST_CASE("ode run reaches the water-discharge equilibrium") {
  BenchOptions o;
  o.problem = "ex3";
  const auto r = run_ode(o);
  for (const char* name : {"y_euler", "y_rk4", "y_nsfd_sihd"}) {
    CHECK(std::abs(r.table.find(name)->values.back() - std::sqrt(2.0)) < 1e-3);
  }
}

TEST_CASE("verify_taylor passes and flags adversarial stacks as exact") {
  std::ostringstream report;
  CHECK(verify_taylor(100, 7, report));
  CHECK(verify_taylor(1, 0, report));
  CHECK_THROWS_AS(verify_taylor(0, 0, report), std::invalid_argument);
}

TEST_CASE("sweep") {
  const std::string dir = std::filesystem::temp_directory_path() /
                          "sihd_sweep_test";
  std::filesystem::remove_all(dir);

  SUBCASE("singleton grid matches the direct run byte for byte") {
    BenchOptions o;
    o.duration = 0.3;
    o.t_skip = 0.1;
    o.eta0 = 1e-6;
    const auto pts = sweep(o, "diff", {{"alpha", {"0.95"}}}, dir);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].status == "ok");
    BenchOptions direct = o;
    direct.alpha = 0.95;
    const auto r = run_diff(direct);
    std::ifstream f(dir + "/" + pts[0].file, std::ios::binary);
    std::stringstream file_content;
    file_content << f.rdbuf();
    CHECK(strip_timestamp(file_content.str()) ==
          strip_timestamp(csv_string(r.meta, r.table)));
  }

  SUBCASE("cartesian grid cardinality and index file") {
    BenchOptions o;
    o.problem = "ex1";
    o.schemes = "euler,nsfd_sihd";
    const auto pts = sweep(
        o, "ode",
        {{"alpha", {"0.90", "0.95"}}, {"psi", {"linear", "exponential"}}}, dir,
        2);
    CHECK(pts.size() == 4);
    for (const auto& pt : pts) {
      CHECK(pt.status == "ok");
      CHECK(std::filesystem::exists(dir + "/" + pt.file));
    }
    CHECK(std::filesystem::exists(dir + "/index.csv"));
  }

  SUBCASE("per-point failures do not abort the sweep") {
    BenchOptions o;
    o.duration = 0.2;
    o.t_skip = 0.05;
    const auto pts = sweep(o, "diff", {{"alpha", {"0.95", "1.5"}}}, dir);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].status == "ok");
    CHECK(pts[1].status != "ok");
  }

  SUBCASE("error propagation ratio across an h grid") {
    // mean|e2|/mean|e1| tracks 1/h within a factor of 5 per grid point,
    // with the gains rescaled alongside h (lambda_q ~ h^-min(q,3))
    const char* h_str[3] = {"1e-2", "1e-3", "1e-4"};
    const double hs[3] = {1e-2, 1e-3, 1e-4};
    for (int i = 0; i < 3; ++i) {
      BenchOptions o;
      o.omega = 1.0;
      o.lambda1 = 1.0 / hs[i];
      o.lambda2 = 1.0 / (hs[i] * hs[i]);
      o.lambda3 = o.lambda4 = 1.0 / (hs[i] * hs[i] * hs[i]);
      const auto pts = sweep(o, "diff", {{"h", {h_str[i]}}}, dir);
      REQUIRE(pts.size() == 1);
      REQUIRE(pts[0].status == "ok");
      const auto meta = read_metadata(dir + "/" + pts[0].file);
      const double e1 = std::stod(meta.at("mean_abs_e1"));
      const double e2 = std::stod(meta.at("mean_abs_e2"));
      const double ratio = e2 / e1;
      CHECK(ratio > 1.0 / (5.0 * hs[i]));
      CHECK(ratio < 5.0 / hs[i]);
    }
  }

  std::filesystem::remove_all(dir);
}
