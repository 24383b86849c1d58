#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "parageo/scenario.hpp"

using namespace parageo;

namespace {

const char* kSigmaConfig = R"({
  "model": "s2xs2",
  "hypersurface": {"family": "sigma-t", "t": 0.5},
  "checks": ["nullity", "eigenvalues", "cmc-relation"],
  "grid": [6, 6, 6],
  "tolerances": {"nullity": 1e-7},
  "derivative_mode": "jet",
  "seed": 7
})";

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(PARAGEO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  return WEXITSTATUS(st);
}

}  // namespace

TEST_CASE("config parsing: fields land, defaults hold") {
  const auto cfg = parse_config(kSigmaConfig);
  CHECK(cfg.model == "s2xs2");
  CHECK(cfg.family == "sigma-t");
  CHECK(cfg.t == 0.5);
  CHECK(cfg.checks == std::vector<std::string>{"nullity", "eigenvalues",
                                               "cmc-relation"});
  CHECK(cfg.grid == std::array<int, 4>{6, 6, 6, 1});
  CHECK(cfg.tolerances.at("nullity") == 1e-7);
  CHECK(cfg.derivative_mode == "jet");
  CHECK(cfg.seed == 7);
  CHECK(cfg.family_label() == "sigma-t(t=0.5)");

  const auto minimal = parse_config(
      R"({"model": "flat", "hypersurface": {"family": "null-plane"}})");
  CHECK(minimal.checks.empty());  // empty selection = whole registry
  CHECK(minimal.grid == std::array<int, 4>{4, 4, 4, 1});
  CHECK(minimal.derivative_mode == "jet");
  CHECK(minimal.normal[0] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("config parsing: malformed inputs rejected with reasons") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS((void)parse_config(text), ConfigError);
  };
  bad("not json at all");
  bad(R"([1, 2, 3])");
  bad(R"({"hypersurface": {"family": "sigma-t", "t": 0.5}})");  // no model
  bad(R"({"model": "s3xs3", "hypersurface": {"family": "sigma-t", "t": 0}})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "tube", "t": 0}})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t"}})");  // no t
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "null-plane"}})");
  bad(R"({"model": "flat", "hypersurface": {"family": "mab"}})");
  bad(R"({"model": "h2xh2", "hypersurface": {"family": "tangential"}})");
  // unknown keys, anywhere
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "extra": 1})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0,
          "radius": 1}})");
  // checks: unknown, duplicate, empty, non-string
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "checks": ["no-such-check"]})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "checks": ["nullity", "nullity"]})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "checks": []})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "checks": [7]})");
  // grid: wrong arity, too small, non-integer
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "grid": [4, 4]})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "grid": [4, 1, 4]})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "grid": [4, 4.5, 4]})");
  // tolerances: nonpositive, for a check that does not run
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "checks": ["nullity"], "tolerances": {"nullity": 0}})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "checks": ["nullity"], "tolerances": {"c-range": 1e-9}})");
  // mode and seed
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "derivative_mode": "symbolic"})");
  bad(R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0},
          "seed": -1})");
  // tangential: radius is a sphere parameter
  bad(R"({"model": "geodesic-space", "hypersurface": {"family": "tangential",
          "surface": "torus", "radius": 0.5}})");

  CHECK_THROWS_AS((void)load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("construction errors carry the geometric reason") {
  auto cfg = parse_config(kSigmaConfig);
  cfg.t = 1.5;
  CHECK_THROWS_AS((void)build_scenario(cfg), ConstructionError);

  auto plane = parse_config(
      R"({"model": "flat",
          "hypersurface": {"family": "null-plane", "normal": [1, 0, 0, 0]}})");
  CHECK_THROWS_AS((void)build_scenario(plane), ConstructionError);

  auto geo = parse_config(
      R"({"model": "geodesic-space",
          "hypersurface": {"family": "tangential", "radius": 1e-6}})");
  CHECK_THROWS_AS((void)build_scenario(geo), ConstructionError);
}

TEST_CASE("run: sigma-t composition passes with tiny residuals") {
  const auto rep = run_scenario(parse_config(kSigmaConfig));
  CHECK(rep.overall);
  CHECK(rep.samples == 216);
  CHECK(rep.checks.size() == 3);
  for (const auto& c : rep.checks) {
    CHECK(c.pass);
    CHECK(c.applicable);
    CHECK(c.max_residual < 1e-6);
  }
  CHECK(rep.to_markdown().find("overall: **PASS**") != std::string::npos);
  const auto js = rep.to_json();
  CHECK(js.find("\"schema_version\": 1") != std::string::npos);
  CHECK(js.find("\"overall\": true") != std::string::npos);
}

TEST_CASE("run: flat null plane is scalar flat, tight tolerance fails honestly") {
  auto cfg = parse_config(
      R"({"model": "flat", "hypersurface": {"family": "null-plane"},
          "checks": ["nullity", "geodesic-scalar-flat"], "grid": [3, 3, 3]})");
  const auto rep = run_scenario(cfg);
  CHECK(rep.overall);
  for (const auto& c : rep.checks) CHECK(c.max_residual <= 1e-9);

  auto tight = parse_config(
      R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0.5},
          "checks": ["connection-relations"], "grid": [3, 3, 2],
          "tolerances": {"connection-relations": 1e-15}})");
  const auto rep2 = run_scenario(tight);
  CHECK(!rep2.overall);
  REQUIRE(rep2.checks.size() == 1);
  CHECK(!rep2.checks[0].pass);
  CHECK(rep2.checks[0].max_residual > 1e-15);  // informative, not zero
  CHECK(rep2.to_markdown().find("overall: **FAIL**") != std::string::npos);
}

TEST_CASE("run: omitted check list runs the whole registry") {
  auto cfg = parse_config(
      R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0.3},
          "grid": [2, 2, 2]})");
  const auto rep = run_scenario(cfg);
  CHECK(rep.checks.size() == check_names().size());
  CHECK(rep.overall);
}

TEST_CASE("run: reports are deterministic byte for byte") {
  const auto cfg = parse_config(kSigmaConfig);
  const auto a = run_scenario(cfg);
  const auto b = run_scenario(cfg);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_markdown() == b.to_markdown());
}

TEST_CASE("run: environment overrides force fd mode and default tolerance") {
  auto cfg = parse_config(
      R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0.5},
          "checks": ["nullity", "unit-normal"], "grid": [2, 2, 2]})");
  EnvOverrides env;
  env.force_fd = true;
  const auto rep = run_scenario(cfg, env);
  CHECK(rep.derivative_mode == "fd");
  CHECK(rep.overall);

  EnvOverrides tight;
  tight.default_tol = 1e-18;
  const auto rep2 = run_scenario(cfg, tight);
  CHECK(!rep2.overall);
  for (const auto& c : rep2.checks) CHECK(c.tolerance == 1e-18);

  // explicit config tolerances beat the environment default
  cfg.tolerances["nullity"] = 1e-7;
  const auto rep3 = run_scenario(cfg, tight);
  CHECK(rep3.checks[0].tolerance == 1e-7);
  CHECK(rep3.checks[0].pass);
}

TEST_CASE("sweep: closed-form columns and the cmc cross-check") {
  const auto tab = sweep_sigma_t("s2xs2", {0.0, 0.5});
  REQUIRE(tab.rows.size() == 2);
  CHECK(tab.rows[0].mean_h == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(tab.rows[1].mean_h == doctest::Approx(0.272165526976).epsilon(1e-9));
  for (const auto& r : tab.rows) {
    CHECK(r.d_cmc <= 1e-6);
    CHECK(r.d_lambda <= 1e-6);
    CHECK(r.d_h <= 1e-7);
    CHECK(r.scalar == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.rbar == 4.0);
    CHECK(r.l1 == doctest::Approx(r.pred_l1).epsilon(1e-9));
    CHECK(r.l3 == doctest::Approx(r.pred_l3).epsilon(1e-9));
  }
  const auto md = tab.to_markdown();
  CHECK(md.find("sigma-t sweep (s2xs2)") != std::string::npos);
  CHECK(tab.to_json().find("\"minus_8_l1_l2\"") != std::string::npos);

  const auto hyp = sweep_sigma_t("h2xh2", {0.5});
  CHECK(hyp.rows[0].mean_h == doctest::Approx(0.544331053952).epsilon(1e-9));
  CHECK(hyp.rows[0].d_cmc <= 1e-6);
  CHECK(hyp.rows[0].rbar == -4.0);

  CHECK_THROWS_AS((void)sweep_sigma_t("flat", {0.0}), ConfigError);
}

TEST_CASE("cli binary: exit codes distinguish the failure stages") {
  const auto good = write_temp("parageo_cfg_good.json", kSigmaConfig);
  const auto badcheck = write_temp(
      "parageo_cfg_badcheck.json",
      R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0.5},
          "checks": ["no-such-check"]})");
  const auto badgeom = write_temp(
      "parageo_cfg_badgeom.json",
      R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 1.5},
          "checks": ["nullity"]})");
  const auto tight = write_temp(
      "parageo_cfg_tight.json",
      R"({"model": "s2xs2", "hypersurface": {"family": "sigma-t", "t": 0.5},
          "checks": ["nullity"], "grid": [2, 2, 2],
          "tolerances": {"nullity": 1e-18}})");

  CHECK(run_cli("version") == kExitPass);
  CHECK(run_cli("list-checks") == kExitPass);
  CHECK(run_cli("verify " + good) == kExitPass);
  CHECK(run_cli("verify " + badcheck) == kExitConfigError);
  CHECK(run_cli("verify /nonexistent.json") == kExitConfigError);
  CHECK(run_cli("verify " + badgeom) == kExitConstructionError);
  CHECK(run_cli("verify " + tight) == kExitCheckFailure);
  CHECK(run_cli("sweep sigma-t --space s2xs2 --t 0.3") == kExitPass);
  CHECK(run_cli("sweep sigma-t --space nowhere --t 0.3") == kExitConfigError);

  // report files land where asked and match the library emitters
  const auto jpath =
      (std::filesystem::temp_directory_path() / "parageo_rep.json").string();
  CHECK(run_cli("verify " + good + " --json " + jpath) == kExitPass);
  std::ifstream in(jpath);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text == run_scenario(parse_config(kSigmaConfig)).to_json());
}
