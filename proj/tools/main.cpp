// Scenario runner for the null-hypersurface verification suite.
//
//   verify <config.json> [--json out] [--md out] [--seed N]
//   sweep sigma-t [--space s2xs2|h2xh2] [--t csv] [--json out] [--md out]
//   list-checks
//   version
//
// Exit codes: 0 all checks pass, 1 config error, 2 construction error,
// 3 at least one check failed.  Environment (read once at startup):
// PARAGEO_DEFAULT_TOL overrides the registry default tolerance for checks
// without an explicit config entry; PARAGEO_FORCE_FD (non-empty, not "0")
// forces fd derivative mode.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parageo/scenario.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw parageo::ConfigError("cannot write: " + path);
  out << text;
}

std::vector<double> parse_t_list(const std::string& csv) {
  std::vector<double> ts;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw parageo::ConfigError("bad t value \"" + tok + "\"");
    ts.push_back(v);
  }
  if (ts.empty()) throw parageo::ConfigError("empty t list");
  return ts;
}

void structured_error(const char* stage, const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = {{"stage", stage}, {"message", message}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification scenarios for null hypersurfaces of Einstein "
               "4-manifolds with a parallel product structure"};
  app.require_subcommand(1);

  std::string config_path, json_out, md_out;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "run a scenario config file");
  verify->add_option("config", config_path, "JSON scenario config")
      ->required();
  verify->add_option("--json", json_out, "write the JSON report to this file");
  verify->add_option("--md", md_out, "write the markdown report to this file");
  auto* seed_opt =
      verify->add_option("--seed", seed, "override the config seed");

  auto* sweep = app.add_subcommand("sweep", "closed-form comparison tables");
  sweep->require_subcommand(1);
  std::string space = "s2xs2", tlist = "-0.9,-0.5,0,0.3,0.5,0.9";
  std::string sw_json, sw_md;
  auto* sigma = sweep->add_subcommand("sigma-t", "sweep the sigma-t family");
  sigma->add_option("--space", space, "ambient product model")
      ->check(CLI::IsMember({"s2xs2", "h2xh2"}));
  sigma->add_option("--t", tlist, "comma-separated t values in (-1,1)");
  sigma->add_option("--json", sw_json, "write the JSON table to this file");
  sigma->add_option("--md", sw_md, "write the markdown table to this file");

  auto* list = app.add_subcommand("list-checks", "print the check registry");
  auto* version = app.add_subcommand("version", "print artifact version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? parageo::kExitPass : parageo::kExitConfigError;
  }

  try {
    const auto env = parageo::env_from_process();

    if (verify->parsed()) {
      auto cfg = parageo::load_config(config_path);
      if (seed_opt->count() > 0) cfg.seed = seed;
      const auto rep = parageo::run_scenario(cfg, env);
      std::fputs(rep.to_markdown().c_str(), stdout);
      if (!json_out.empty()) write_text(json_out, rep.to_json());
      if (!md_out.empty()) write_text(md_out, rep.to_markdown());
      return rep.overall ? parageo::kExitPass : parageo::kExitCheckFailure;
    }

    if (sigma->parsed()) {
      const auto tab = parageo::sweep_sigma_t(space, parse_t_list(tlist));
      std::fputs(tab.to_markdown().c_str(), stdout);
      if (!sw_json.empty()) write_text(sw_json, tab.to_json());
      if (!sw_md.empty()) write_text(sw_md, tab.to_markdown());
      return parageo::kExitPass;
    }

    if (list->parsed()) {
      for (const auto& c : parageo::check_registry())
        std::printf("%-24s default_tol=%.1e%s\n", c.name.c_str(),
                    c.default_tol,
                    c.needs_reference ? "  needs-reference" : "");
      return parageo::kExitPass;
    }

    if (version->parsed()) {
      std::printf("%s %s (report schema %d)\n", parageo::kArtifactName,
                  parageo::kArtifactVersion, parageo::kReportSchemaVersion);
      return parageo::kExitPass;
    }
  } catch (const parageo::ConfigError& e) {
    structured_error("config", e.what());
    return parageo::kExitConfigError;
  } catch (const std::exception& e) {
    structured_error("construction", e.what());
    return parageo::kExitConstructionError;
  }
  return parageo::kExitPass;
}
