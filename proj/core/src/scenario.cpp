#include "parageo/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "parageo/models/geodesic_space.hpp"

namespace parageo {

using njson = nlohmann::ordered_json;

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

void expect_keys(const njson& obj, const std::set<std::string>& allowed,
                 const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
}

double positive_number(const njson& v, const std::string& what) {
  if (!v.is_number())
    throw ConfigError(what + " must be a number");
  const double x = v.get<double>();
  if (!(x > 0.0)) throw ConfigError(what + " must be positive");
  return x;
}

template <std::size_t K>
std::array<double, K> number_array(const njson& v, const std::string& what) {
  if (!v.is_array() || v.size() != K)
    throw ConfigError(what + " must be an array of " + std::to_string(K) +
                      " numbers");
  std::array<double, K> out{};
  for (std::size_t i = 0; i < K; ++i) {
    if (!v[i].is_number())
      throw ConfigError(what + " must be an array of numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

const std::set<std::string> kModels{"s2xs2", "h2xh2", "flat",
                                    "geodesic-space"};
const std::set<std::string> kFamilies{"sigma-t", "mab", "tangential",
                                      "null-plane"};

// which families make sense on which ambient model
void check_pairing(const std::string& model, const std::string& family) {
  const bool ok = (family == "sigma-t" && (model == "s2xs2" ||
                                           model == "h2xh2")) ||
                  (family == "mab" && model == "s2xs2") ||
                  (family == "null-plane" && model == "flat") ||
                  (family == "tangential" && model == "geodesic-space");
  if (!ok)
    throw ConfigError("hypersurface family \"" + family +
                      "\" is not defined on model \"" + model + "\"");
}

}  // namespace

std::string ScenarioConfig::family_label() const {
  if (family == "sigma-t") return "sigma-t(t=" + fmt("%g", t) + ")";
  if (family == "mab")
    return "mab(a=[" + fmt("%g", a[0]) + "," + fmt("%g", a[1]) + "," +
           fmt("%g", a[2]) + "], b=[" + fmt("%g", b[0]) + "," +
           fmt("%g", b[1]) + "," + fmt("%g", b[2]) + "])";
  if (family == "tangential")
    return surface == "torus" ? "tangential(torus)"
                              : "tangential(sphere, r=" + fmt("%.9g", radius) +
                                    ")";
  if (family == "null-plane")
    return "null-plane(n=[" + fmt("%g", normal[0]) + "," +
           fmt("%g", normal[1]) + "," + fmt("%g", normal[2]) + "," +
           fmt("%g", normal[3]) + "])";
  return family;
}

ScenarioConfig parse_config(const std::string& json_text) {
  njson root;
  try {
    root = njson::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  expect_keys(root,
              {"model", "hypersurface", "checks", "grid", "tolerances",
               "derivative_mode", "seed"},
              "config");

  ScenarioConfig cfg;
  if (!root.contains("model") || !root["model"].is_string())
    throw ConfigError("config needs a string \"model\"");
  cfg.model = root["model"].get<std::string>();
  if (!kModels.count(cfg.model))
    throw ConfigError("unknown model \"" + cfg.model + "\"");

  if (!root.contains("hypersurface") || !root["hypersurface"].is_object())
    throw ConfigError("config needs a \"hypersurface\" object");
  const auto& hs = root["hypersurface"];
  if (!hs.contains("family") || !hs["family"].is_string())
    throw ConfigError("hypersurface needs a string \"family\"");
  cfg.family = hs["family"].get<std::string>();
  if (!kFamilies.count(cfg.family))
    throw ConfigError("unknown hypersurface family \"" + cfg.family + "\"");
  check_pairing(cfg.model, cfg.family);

  if (cfg.family == "sigma-t") {
    expect_keys(hs, {"family", "t"}, "hypersurface");
    if (!hs.contains("t") || !hs["t"].is_number())
      throw ConfigError("sigma-t needs a number \"t\"");
    cfg.t = hs["t"].get<double>();
  } else if (cfg.family == "mab") {
    expect_keys(hs, {"family", "a", "b"}, "hypersurface");
    if (hs.contains("a")) cfg.a = number_array<3>(hs["a"], "mab \"a\"");
    if (hs.contains("b")) cfg.b = number_array<3>(hs["b"], "mab \"b\"");
  } else if (cfg.family == "tangential") {
    expect_keys(hs, {"family", "surface", "radius"}, "hypersurface");
    if (hs.contains("surface")) {
      if (!hs["surface"].is_string())
        throw ConfigError("tangential \"surface\" must be a string");
      cfg.surface = hs["surface"].get<std::string>();
      if (cfg.surface != "sphere" && cfg.surface != "torus")
        throw ConfigError("tangential surface must be \"sphere\" or \"torus\"");
    }
    if (hs.contains("radius")) {
      if (cfg.surface == "torus")
        throw ConfigError("\"radius\" applies to the sphere surface only");
      cfg.radius = positive_number(hs["radius"], "tangential \"radius\"");
    }
  } else {  // null-plane
    expect_keys(hs, {"family", "normal"}, "hypersurface");
    if (hs.contains("normal"))
      cfg.normal = number_array<4>(hs["normal"], "null-plane \"normal\"");
  }

  if (root.contains("checks")) {
    if (!root["checks"].is_array() || root["checks"].empty())
      throw ConfigError("\"checks\" must be a non-empty array of names");
    std::set<std::string> seen;
    for (const auto& c : root["checks"]) {
      if (!c.is_string()) throw ConfigError("check names must be strings");
      const auto name = c.get<std::string>();
      if (!is_check_name(name))
        throw ConfigError("unknown check \"" + name + "\"");
      if (!seen.insert(name).second)
        throw ConfigError("duplicate check \"" + name + "\"");
      cfg.checks.push_back(name);
    }
  }

  if (root.contains("grid")) {
    const auto& gr = root["grid"];
    if (!gr.is_array() || gr.size() != 3)
      throw ConfigError("\"grid\" must be an array of 3 per-axis counts");
    for (int i = 0; i < 3; ++i) {
      if (!gr[i].is_number_integer())
        throw ConfigError("grid counts must be integers");
      cfg.grid[i] = gr[i].get<int>();
      if (cfg.grid[i] < 2) throw ConfigError("grid counts must be >= 2");
    }
    cfg.grid[3] = 1;
  }

  if (root.contains("tolerances")) {
    if (!root["tolerances"].is_object())
      throw ConfigError("\"tolerances\" must be an object of check -> value");
    const auto effective =
        cfg.checks.empty() ? check_names() : cfg.checks;
    for (const auto& item : root["tolerances"].items()) {
      if (std::find(effective.begin(), effective.end(), item.key()) ==
          effective.end())
        throw ConfigError("tolerance for a check that does not run: \"" +
                          item.key() + "\"");
      cfg.tolerances[item.key()] =
          positive_number(item.value(), "tolerance for \"" + item.key() + "\"");
    }
  }

  if (root.contains("derivative_mode")) {
    if (!root["derivative_mode"].is_string())
      throw ConfigError("\"derivative_mode\" must be \"jet\" or \"fd\"");
    cfg.derivative_mode = root["derivative_mode"].get<std::string>();
    if (cfg.derivative_mode != "jet" && cfg.derivative_mode != "fd")
      throw ConfigError("\"derivative_mode\" must be \"jet\" or \"fd\"");
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer() ||
        (root["seed"].is_number_integer() && root["seed"].get<long long>() < 0))
      throw ConfigError("\"seed\" must be a non-negative integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

EnvOverrides env_from_process() {
  EnvOverrides env;
  if (const char* v = std::getenv("PARAGEO_DEFAULT_TOL")) {
    char* end = nullptr;
    const double x = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(x > 0.0))
      throw ConfigError("PARAGEO_DEFAULT_TOL must be a positive number");
    env.default_tol = x;
  }
  if (const char* v = std::getenv("PARAGEO_FORCE_FD"))
    env.force_fd = v[0] != '\0' && std::string(v) != "0";
  return env;
}

namespace {

struct ProductBundle {
  ProductSpace g;
  ProductStructure P;
  std::unique_ptr<Immersion> F;
  ProductBundle(Surf2 x, Surf2 y) : g(x, y) {}
};

struct GeodesicBundle {
  TangentialCongruence F;
  GeodesicMetric g;
  HodgeStructure P;
  explicit GeodesicBundle(const SurfaceInSpaceForm& s)
      : F(s), g(F.chart()), P(F.chart()) {}
};

}  // namespace

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
  try {
    BuiltScenario out;
    if (cfg.model == "geodesic-space") {
      const auto surf = cfg.surface == "torus"
                            ? SurfaceInSpaceForm::clifford_torus()
                            : SurfaceInSpaceForm::geodesic_sphere(cfg.radius);
      auto bun = std::make_shared<GeodesicBundle>(surf);
      out.g = &bun->g;
      out.P = &bun->P;
      out.F = &bun->F;
      out.ref = bun->F.reference();
      out.rbar = 8.0;
      out.bundle = std::move(bun);
      return out;
    }
    const Surf2 kind = cfg.model == "s2xs2"   ? Surf2::sphere
                       : cfg.model == "h2xh2" ? Surf2::hyperbolic
                                              : Surf2::flat;
    auto bun = std::make_shared<ProductBundle>(kind, kind);
    if (cfg.family == "sigma-t") {
      if (kind == Surf2::sphere) {
        auto f = std::make_unique<SigmaTSphere>(cfg.t);
        out.ref = f->reference();
        bun->F = std::move(f);
      } else {
        auto f = std::make_unique<SigmaTHyperbolic>(cfg.t);
        out.ref = f->reference();
        bun->F = std::move(f);
      }
    } else if (cfg.family == "mab") {
      auto f = std::make_unique<MabSphere>(cfg.a, cfg.b);
      out.ref = f->reference();
      bun->F = std::move(f);
    } else {
      VecN<double, 4> n(4);
      for (int i = 0; i < 4; ++i) n[i] = cfg.normal[i];
      auto f = std::make_unique<FlatNullPlane>(n);
      out.ref = f->reference();
      bun->F = std::move(f);
    }
    out.rbar = kind == Surf2::sphere ? 4.0
               : kind == Surf2::hyperbolic ? -4.0
                                           : 0.0;
    out.g = &bun->g;
    out.P = &bun->P;
    out.F = bun->F.get();
    out.bundle = std::move(bun);
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConstructionError(e.what());
  }
}

namespace {

HyperScenario hyper_from(const BuiltScenario& built,
                         const std::array<int, 4>& grid, DerivMode mode) {
  HyperScenario sc;
  sc.F = built.F;
  sc.g = built.g;
  sc.P = built.P;
  sc.rbar = built.rbar;
  sc.ref = &built.ref;
  sc.samples = lattice(built.F->domain(), grid);
  sc.ctx.mode = mode;
  return sc;
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& cfg,
                            const EnvOverrides& env) {
  const auto list = cfg.checks.empty() ? check_names() : cfg.checks;
  for (const auto& name : list)
    if (!is_check_name(name))
      throw ConfigError("unknown check \"" + name + "\"");

  const auto built = build_scenario(cfg);
  const bool fd = env.force_fd || cfg.derivative_mode == "fd";
  auto sc = hyper_from(built, cfg.grid, fd ? DerivMode::fd : DerivMode::jets);

  ScenarioReport rep;
  rep.model = cfg.model;
  rep.hypersurface = cfg.family_label();
  rep.derivative_mode = fd ? "fd" : "jet";
  rep.seed = cfg.seed;
  rep.grid = cfg.grid;
  rep.samples = static_cast<int>(sc.samples.size());
  rep.overall = true;
  try {
    for (const auto& name : list) {
      double tol = -1.0;
      if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end())
        tol = it->second;
      else if (env.default_tol)
        tol = *env.default_tol;
      auto r = run_check(sc, name, tol);
      rep.overall = rep.overall && r.pass;
      rep.checks.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    throw ConstructionError(std::string("check evaluation aborted: ") +
                            e.what());
  }
  return rep;
}

std::string ScenarioReport::to_json() const {
  njson root;
  root["schema_version"] = schema_version;
  root["artifact"] = njson{{"name", kArtifactName}, {"version", version}};
  root["environment"] =
      njson{{"derivative_mode", derivative_mode}, {"seed", seed}};
  root["scenario"] = njson{{"model", model},
                           {"hypersurface", hypersurface},
                           {"grid", {grid[0], grid[1], grid[2]}},
                           {"samples", samples}};
  root["checks"] = njson::array();
  for (const auto& c : checks) {
    njson row;
    row["name"] = c.name;
    row["applicable"] = c.applicable;
    row["samples"] = c.samples;
    row["max_residual"] = c.max_residual;
    row["tolerance"] = c.tolerance;
    row["pass"] = c.pass;
    if (!c.note.empty()) row["note"] = c.note;
    if (c.fd_err > 0.0) row["fd_err"] = c.fd_err;
    if (!c.stats.empty()) {
      njson st;
      for (const auto& [k, v] : c.stats) st[k] = v;
      row["stats"] = st;
    }
    root["checks"].push_back(std::move(row));
  }
  root["overall"] = overall;
  return root.dump(2) + "\n";
}

std::string ScenarioReport::to_markdown() const {
  std::ostringstream md;
  md << "# scenario report\n\n";
  md << "- model: " << model << "\n";
  md << "- hypersurface: " << hypersurface << "\n";
  md << "- derivative mode: " << derivative_mode << " (seed " << seed
     << ")\n";
  md << "- grid: " << grid[0] << " x " << grid[1] << " x " << grid[2] << " ("
     << samples << " samples)\n";
  md << "- artifact: " << kArtifactName << " " << version << " (schema "
     << schema_version << ")\n\n";
  md << "| check | applicable | samples | max residual | tolerance | pass | "
        "note |\n";
  md << "|---|---|---:|---:|---:|---|---|\n";
  for (const auto& c : checks) {
    md << "| " << c.name << " | " << (c.applicable ? "yes" : "no") << " | "
       << c.samples << " | " << fmt("%.6e", c.max_residual) << " | "
       << fmt("%.6e", c.tolerance) << " | " << (c.pass ? "yes" : "NO") << " | "
       << c.note << " |\n";
  }
  md << "\noverall: **" << (overall ? "PASS" : "FAIL") << "**\n";
  return md.str();
}

namespace {

// gauge normalization of a curvature triple: the larger, under lexicographic
// order, of the descending-sorted triple and its negation
std::array<double, 3> canonical_triple(std::array<double, 3> v) {
  std::array<double, 3> w{-v[0], -v[1], -v[2]};
  std::sort(v.begin(), v.end(), std::greater<>());
  std::sort(w.begin(), w.end(), std::greater<>());
  return v >= w ? v : w;
}

}  // namespace

SweepTable sweep_sigma_t(const std::string& space,
                         const std::vector<double>& ts,
                         const std::array<int, 4>& counts) {
  if (space != "s2xs2" && space != "h2xh2")
    throw ConfigError("sigma-t sweep space must be s2xs2 or h2xh2");
  SweepTable tab;
  tab.space = space;
  for (const double t : ts) {
    ScenarioConfig cfg;
    cfg.model = space;
    cfg.family = "sigma-t";
    cfg.t = t;
    cfg.grid = counts;
    const auto built = build_scenario(cfg);
    auto sc = hyper_from(built, counts, DerivMode::jets);

    SweepRow row;
    row.t = t;
    row.rbar = built.rbar;
    const int n = static_cast<int>(sc.samples.size());
    for (const auto& y : sc.samples) {
      const auto sd = shape_data(*built.F, *built.g, *built.P, y, sc.ctx);
      const auto lam = canonical_triple(sd.pd.lambda);
      row.l1 += lam[0] / n;
      row.l2 += lam[1] / n;
      row.l3 += lam[2] / n;
      row.mean_h += std::abs(sd.s.H) / n;
      row.cos2theta += sd.pd.cos2theta / n;
      row.scalar += induced_scalar(sc, y) / n;
      const double cmc = -8.0 * sd.pd.lambda[0] * sd.pd.lambda[1];
      row.cmc_lhs += cmc / n;
      row.d_cmc = std::max(row.d_cmc, std::abs(cmc - built.rbar));
      row.d_lambda = std::max(
          row.d_lambda, lambda_match_distance(sd.pd.lambda,
                                              built.ref.lambdas(y)));
      row.d_h = std::max(
          row.d_h, std::abs(std::abs(sd.s.H) - built.ref.mean_curvature(y)));
    }
    const auto& y0 = sc.samples.front();
    const auto pred = canonical_triple(built.ref.lambdas(y0));
    row.pred_l1 = pred[0];
    row.pred_l2 = pred[1];
    row.pred_l3 = pred[2];
    row.pred_h = built.ref.mean_curvature(y0);
    tab.rows.push_back(row);
  }
  return tab;
}

std::string SweepTable::to_json() const {
  njson root;
  root["schema_version"] = kReportSchemaVersion;
  root["artifact"] =
      njson{{"name", kArtifactName}, {"version", kArtifactVersion}};
  root["sweep"] = "sigma-t";
  root["space"] = space;
  root["rows"] = njson::array();
  for (const auto& r : rows) {
    njson row;
    row["t"] = r.t;
    row["lambda"] = {r.l1, r.l2, r.l3};
    row["mean_h"] = r.mean_h;
    row["scalar"] = r.scalar;
    row["cos2theta"] = r.cos2theta;
    row["minus_8_l1_l2"] = r.cmc_lhs;
    row["rbar"] = r.rbar;
    row["pred_lambda"] = {r.pred_l1, r.pred_l2, r.pred_l3};
    row["pred_mean_h"] = r.pred_h;
    row["delta_lambda"] = r.d_lambda;
    row["delta_mean_h"] = r.d_h;
    row["delta_cmc"] = r.d_cmc;
    root["rows"].push_back(std::move(row));
  }
  return root.dump(2) + "\n";
}

std::string SweepTable::to_markdown() const {
  std::ostringstream md;
  md << "# sigma-t sweep (" << space << ")\n\n";
  md << "| t | l1 | l2 | l3 | H | R | cos2theta | -8 l1 l2 | rbar | pred l1 "
        "| pred l2 | pred l3 | pred H | d(lambda) | d(H) | d(cmc) |\n";
  md << "|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|"
        "---:|---:|---:|\n";
  for (const auto& r : rows) {
    md << "| " << fmt("%g", r.t);
    for (double v : {r.l1, r.l2, r.l3, r.mean_h, r.scalar, r.cos2theta,
                     r.cmc_lhs, r.rbar, r.pred_l1, r.pred_l2, r.pred_l3,
                     r.pred_h})
      md << " | " << fmt("%.6f", v);
    for (double v : {r.d_lambda, r.d_h, r.d_cmc}) md << " | " << fmt("%.2e", v);
    md << " |\n";
  }
  return md.str();
}

}  // namespace parageo
