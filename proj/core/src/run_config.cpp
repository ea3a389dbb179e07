#include "firecast/run_config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "firecast/errors.hpp"
#include "firecast/io.hpp"
#include "firecast/stats.hpp"

namespace firecast {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

const json& member(const json& j, const std::string& key,
                   const std::string& path) {
  if (!j.contains(key)) fail(path + "." + key, "missing");
  return j.at(key);
}

double num_or(const json& j, const std::string& key, double def,
              const std::string& path) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
  return j.at(key).get<double>();
}

int int_or(const json& j, const std::string& key, int def,
           const std::string& path) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
  return j.at(key).get<int>();
}

std::string str_or(const json& j, const std::string& key, std::string def,
                   const std::string& path) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_string()) fail(path + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

bool bool_or(const json& j, const std::string& key, bool def,
             const std::string& path) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_boolean()) fail(path + "." + key, "expected a boolean");
  return j.at(key).get<bool>();
}

TransitionRule parse_rule(const json& j, const std::string& path) {
  const std::string kind = str_or(j, "kind", "", path);
  if (kind == "constant") {
    return TransitionRule::make_constant(num_or(j, "p", 0.0, path));
  }
  if (kind == "burning_table") {
    if (!j.contains("p") || !j.at("p").is_array()) {
      fail(path + ".p", "expected an array of probabilities");
    }
    std::vector<double> p;
    for (const auto& v : j.at("p")) p.push_back(v.get<double>());
    return TransitionRule::make_burning_table(std::move(p));
  }
  if (kind == "probit") {
    if (!j.contains("coef") || !j.at("coef").is_array() ||
        j.at("coef").size() != 3) {
      fail(path + ".coef", "expected [unburnt, burning, burnt] coefficients");
    }
    Eigen::Vector3d coef;
    for (int k = 0; k < 3; ++k) {
      coef(k) = j.at("coef").at(static_cast<std::size_t>(k)).get<double>();
    }
    return TransitionRule::make_probit(num_or(j, "intercept", 0.0, path), coef);
  }
  fail(path + ".kind", "expected constant | burning_table | probit");
}

json rule_to_json(const TransitionRule& rule) {
  json j;
  switch (rule.kind) {
    case TransitionRule::Kind::Constant:
      j["kind"] = "constant";
      j["p"] = rule.constant;
      break;
    case TransitionRule::Kind::BurningTable:
      j["kind"] = "burning_table";
      j["p"] = rule.burning_table;
      break;
    case TransitionRule::Kind::Probit:
      j["kind"] = "probit";
      j["intercept"] = rule.intercept;
      j["coef"] = {rule.coef(0), rule.coef(1), rule.coef(2)};
      break;
  }
  return j;
}

WindSchedule parse_wind(const json& j, const std::string& path) {
  WindSchedule w;
  const std::string kind = str_or(j, "kind", "none", path);
  if (kind == "none") {
    w.kind = WindSchedule::Kind::None;
  } else if (kind == "constant") {
    w.kind = WindSchedule::Kind::Constant;
  } else if (kind == "pulsed") {
    w.kind = WindSchedule::Kind::Pulsed;
  } else if (kind == "file") {
    w.kind = WindSchedule::Kind::File;
    w.path = str_or(j, "path", "", path);
    if (w.path.empty()) fail(path + ".path", "missing wind file path");
  } else {
    fail(path + ".kind", "expected none | constant | pulsed | file");
  }
  w.u = num_or(j, "u", 0.0, path);
  w.v = num_or(j, "v", 0.0, path);
  w.period = int_or(j, "period", 10, path);
  w.duty = int_or(j, "duty", 5, path);
  w.phase = int_or(j, "phase", 0, path);
  if (w.kind == WindSchedule::Kind::Pulsed && (w.period < 1 || w.duty < 0)) {
    fail(path, "pulsed wind needs period >= 1 and duty >= 0");
  }
  return w;
}

json wind_to_json(const WindSchedule& w) {
  json j;
  switch (w.kind) {
    case WindSchedule::Kind::None:
      j["kind"] = "none";
      break;
    case WindSchedule::Kind::Constant:
      j["kind"] = "constant";
      j["u"] = w.u;
      j["v"] = w.v;
      break;
    case WindSchedule::Kind::Pulsed:
      j["kind"] = "pulsed";
      j["u"] = w.u;
      j["v"] = w.v;
      j["period"] = w.period;
      j["duty"] = w.duty;
      j["phase"] = w.phase;
      break;
    case WindSchedule::Kind::File:
      j["kind"] = "file";
      j["path"] = w.path;
      break;
  }
  return j;
}

}  // namespace

std::vector<WindRecord> resolve_winds(const WindSchedule& schedule, int steps,
                                      const std::string& base_dir) {
  std::vector<WindRecord> winds(static_cast<std::size_t>(steps));
  switch (schedule.kind) {
    case WindSchedule::Kind::None:
      break;
    case WindSchedule::Kind::Constant:
      for (auto& w : winds) w = {schedule.u, schedule.v};
      break;
    case WindSchedule::Kind::Pulsed:
      for (int t = 0; t < steps; ++t) {
        int m = (t - schedule.phase) % schedule.period;
        if (m < 0) m += schedule.period;
        if (m < schedule.duty) {
          winds[static_cast<std::size_t>(t)] = {schedule.u, schedule.v};
        }
      }
      break;
    case WindSchedule::Kind::File: {
      const auto loaded =
          io::read_winds(fs::path(base_dir) / schedule.path);
      if (static_cast<int>(loaded.size()) < steps) {
        throw ConfigError("config: wind file " + schedule.path + " has " +
                          std::to_string(loaded.size()) + " steps, need " +
                          std::to_string(steps));
      }
      for (int t = 0; t < steps; ++t) {
        winds[static_cast<std::size_t>(t)] = loaded[static_cast<std::size_t>(t)];
      }
      break;
    }
  }
  return winds;
}

std::vector<std::int8_t> resolve_initial(const InitialStateSpec& spec,
                                         const GridSpec& grid,
                                         const std::string& base_dir) {
  std::vector<std::int8_t> initial(static_cast<std::size_t>(grid.cells()),
                                   kUnburnt);
  if (spec.kind == InitialStateSpec::Kind::Block) {
    if (!grid.contains(spec.col, spec.row) ||
        !grid.contains(spec.col + spec.width - 1, spec.row + spec.height - 1)) {
      throw ConfigError("config: simulate.initial block leaves the grid");
    }
    for (int r = spec.row; r < spec.row + spec.height; ++r) {
      for (int c = spec.col; c < spec.col + spec.width; ++c) {
        initial[static_cast<std::size_t>(grid.cell_index(c, r))] = kBurning;
      }
    }
  } else {
    const StateField sf = io::read_statefield(fs::path(base_dir) / spec.path);
    if (sf.cells() != grid.cells()) {
      throw ConfigError("config: simulate.initial file does not match grid");
    }
    for (int i = 0; i < grid.cells(); ++i) initial[static_cast<std::size_t>(i)] = sf.at(0, i);
  }
  return initial;
}

RunConfig parse_run_config(const std::string& json_text,
                           const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (j.contains("effective_config")) j = j.at("effective_config");

  RunConfig cfg;
  cfg.base_dir = base_dir;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number()) fail("seed", "expected an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.seed_set = true;
  }
  cfg.out = str_or(j, "out", ".", "");

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    cfg.grid.nx = int_or(g, "nx", 0, "grid");
    cfg.grid.ny = int_or(g, "ny", 0, "grid");
    cfg.grid.validate();
  }
  if (j.contains("neighborhood")) {
    const json& g = j.at("neighborhood");
    cfg.neighborhood.wind_threshold =
        num_or(g, "wind_threshold", 2.0, "neighborhood");
    cfg.neighborhood.extend_upwind =
        bool_or(g, "extend_upwind", true, "neighborhood");
    cfg.neighborhood.validate();
  }

  if (j.contains("simulate")) {
    const json& s = j.at("simulate");
    SimulateSection sim;
    sim.steps = int_or(s, "steps", 1, "simulate");
    const json& init = member(s, "initial", "simulate");
    const std::string ikind = str_or(init, "kind", "block", "simulate.initial");
    if (ikind == "block") {
      sim.initial.kind = InitialStateSpec::Kind::Block;
      sim.initial.col = int_or(init, "col", 0, "simulate.initial");
      sim.initial.row = int_or(init, "row", 0, "simulate.initial");
      sim.initial.width = int_or(init, "width", 1, "simulate.initial");
      sim.initial.height = int_or(init, "height", 1, "simulate.initial");
    } else if (ikind == "file") {
      sim.initial.kind = InitialStateSpec::Kind::File;
      sim.initial.path = str_or(init, "path", "", "simulate.initial");
    } else {
      fail("simulate.initial.kind", "expected block | file");
    }
    const json& rules = member(s, "rules", "simulate");
    sim.ignite = parse_rule(member(rules, "ignite", "simulate.rules"),
                            "simulate.rules.ignite");
    sim.extinguish =
        parse_rule(member(rules, "extinguish", "simulate.rules"),
                   "simulate.rules.extinguish");
    if (s.contains("wind")) sim.wind = parse_wind(s.at("wind"), "simulate.wind");
    cfg.simulate = sim;
  }

  if (j.contains("classify")) {
    const json& s = j.at("classify");
    ClassifySection cl;
    cl.raster = str_or(s, "raster", "", "classify");
    cl.raster_manifest = str_or(s, "raster_manifest", "", "classify");
    if (cl.raster.empty() == cl.raster_manifest.empty()) {
      fail("classify", "need exactly one of raster | raster_manifest");
    }
    if (s.contains("coarsen")) {
      cl.coarsen_x = int_or(s.at("coarsen"), "x", 1, "classify.coarsen");
      cl.coarsen_y = int_or(s.at("coarsen"), "y", 1, "classify.coarsen");
    }
    if (s.contains("classifier")) {
      const json& c = s.at("classifier");
      cl.classifier.background_temp =
          num_or(c, "background_temp", 300.0, "classify.classifier");
      cl.classifier.ignition_threshold =
          num_or(c, "ignition_threshold", 100.0, "classify.classifier");
      cl.classifier.extinction_temp =
          num_or(c, "extinction_temp", 300.0, "classify.classifier");
    }
    cl.classifier.validate();
    cfg.classify = cl;
  }

  if (j.contains("basis")) {
    const json& s = j.at("basis");
    BasisSection b;
    b.kind = str_or(s, "kind", "eof", "basis");
    if (b.kind != "eof" && b.kind != "bisquare") {
      fail("basis.kind", "expected eof | bisquare");
    }
    b.states = str_or(s, "states", "", "basis");
    b.temps = str_or(s, "temps", "", "basis");
    b.winds = str_or(s, "winds", "", "basis");
    b.train_steps = int_or(s, "train_steps", 0, "basis");
    b.horizon = int_or(s, "horizon", 5, "basis");
    b.rank = int_or(s, "rank", 5, "basis");
    b.bandwidth = num_or(s, "bandwidth", 0.0, "basis");
    if (s.contains("knots") && s.at("knots").is_object()) {
      b.knots_x = int_or(s.at("knots"), "x", 3, "basis.knots");
      b.knots_y = int_or(s.at("knots"), "y", 2, "basis.knots");
    } else if (s.contains("knots") && s.at("knots").is_array()) {
      for (const auto& kj : s.at("knots")) {
        if (!kj.is_array() || kj.size() != 2) {
          fail("basis.knots", "expected [[col,row],...] knot coordinates");
        }
        b.knots.emplace_back(kj.at(0).get<double>(), kj.at(1).get<double>());
      }
    }
    cfg.basis = b;
  }

  if (j.contains("fit")) {
    const json& s = j.at("fit");
    FitSection f;
    f.states = str_or(s, "states", "", "fit");
    f.winds = str_or(s, "winds", "", "fit");
    f.basis = str_or(s, "basis", "", "fit");
    f.train_steps = int_or(s, "train_steps", 0, "fit");
    f.iterations = int_or(s, "iterations", 10000, "fit");
    f.burn_in = int_or(s, "burn_in", f.iterations / 2, "fit");
    f.thinning = int_or(s, "thinning", 1, "fit");
    f.chains = int_or(s, "chains", 1, "fit");
    f.store_z_every = int_or(s, "store_z_every", 0, "fit");
    f.monotone_likelihood = bool_or(s, "monotone_likelihood", true, "fit");
    if (f.states.empty()) fail("fit.states", "missing");
    if (s.contains("priors")) {
      const json& p = s.at("priors");
      f.priors.sigma_b = num_or(p, "sigma_b", 2.0, "fit.priors");
      f.priors.sigma_m = num_or(p, "sigma_m", 2.0, "fit.priors");
      f.priors.sigma_0 = num_or(p, "sigma_0", 5.0, "fit.priors");
      f.priors.nu_q = num_or(p, "nu_q", 1.0, "fit.priors");
      f.priors.c_q_scale = num_or(p, "c_q_scale", 0.0, "fit.priors");
      f.priors.lambda_upper = num_or(p, "lambda_upper", 0.0, "fit.priors");
    }
    cfg.fit = f;
  }

  if (j.contains("forecast")) {
    const json& s = j.at("forecast");
    ForecastSection f;
    f.posterior = str_or(s, "posterior", "", "forecast");
    f.states = str_or(s, "states", "", "forecast");
    f.winds = str_or(s, "winds", "", "forecast");
    f.basis = str_or(s, "basis", "", "forecast");
    f.wind_forecast = str_or(s, "wind_forecast", "", "forecast");
    f.train_steps = int_or(s, "train_steps", 0, "forecast");
    f.horizon = int_or(s, "horizon", 5, "forecast");
    f.draws = int_or(s, "draws", 500, "forecast");
    if (f.posterior.empty()) fail("forecast.posterior", "missing");
    if (f.states.empty()) fail("forecast.states", "missing");
    cfg.forecast = f;
  }

  if (j.contains("score")) {
    const json& s = j.at("score");
    ScoreSection sc;
    sc.forecast = str_or(s, "forecast", "", "score");
    sc.truth = str_or(s, "truth", "", "score");
    sc.offset = int_or(s, "offset", 0, "score");
    if (sc.forecast.empty()) fail("score.forecast", "missing");
    if (sc.truth.empty()) fail("score.truth", "missing");
    cfg.score = sc;
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string dir = fs::path(path).parent_path().string();
  return parse_run_config(ss.str(), dir.empty() ? "." : dir);
}

std::string effective_config_json(const RunConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  if (cfg.grid.nx > 0) j["grid"] = {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}};
  j["neighborhood"] = {{"wind_threshold", cfg.neighborhood.wind_threshold},
                       {"extend_upwind", cfg.neighborhood.extend_upwind}};
  if (cfg.simulate) {
    const auto& s = *cfg.simulate;
    json init;
    if (s.initial.kind == InitialStateSpec::Kind::Block) {
      init = {{"kind", "block"},
              {"col", s.initial.col},
              {"row", s.initial.row},
              {"width", s.initial.width},
              {"height", s.initial.height}};
    } else {
      init = {{"kind", "file"}, {"path", s.initial.path}};
    }
    j["simulate"] = {{"steps", s.steps},
                     {"initial", init},
                     {"rules",
                      {{"ignite", rule_to_json(s.ignite)},
                       {"extinguish", rule_to_json(s.extinguish)}}},
                     {"wind", wind_to_json(s.wind)}};
  }
  if (cfg.classify) {
    const auto& s = *cfg.classify;
    json c = {{"coarsen", {{"x", s.coarsen_x}, {"y", s.coarsen_y}}},
              {"classifier",
               {{"background_temp", s.classifier.background_temp},
                {"ignition_threshold", s.classifier.ignition_threshold},
                {"extinction_temp", s.classifier.extinction_temp}}}};
    if (!s.raster.empty()) c["raster"] = s.raster;
    if (!s.raster_manifest.empty()) c["raster_manifest"] = s.raster_manifest;
    j["classify"] = c;
  }
  if (cfg.basis) {
    const auto& s = *cfg.basis;
    json b = {{"kind", s.kind},         {"states", s.states},
              {"temps", s.temps},       {"winds", s.winds},
              {"train_steps", s.train_steps}, {"horizon", s.horizon},
              {"rank", s.rank},         {"bandwidth", s.bandwidth}};
    if (!s.knots.empty()) {
      json arr = json::array();
      for (const auto& [x, y] : s.knots) arr.push_back({x, y});
      b["knots"] = arr;
    } else {
      b["knots"] = {{"x", s.knots_x}, {"y", s.knots_y}};
    }
    j["basis"] = b;
  }
  if (cfg.fit) {
    const auto& s = *cfg.fit;
    j["fit"] = {{"states", s.states},
                {"winds", s.winds},
                {"basis", s.basis},
                {"train_steps", s.train_steps},
                {"iterations", s.iterations},
                {"burn_in", s.burn_in},
                {"thinning", s.thinning},
                {"chains", s.chains},
                {"store_z_every", s.store_z_every},
                {"monotone_likelihood", s.monotone_likelihood},
                {"priors",
                 {{"sigma_b", s.priors.sigma_b},
                  {"sigma_m", s.priors.sigma_m},
                  {"sigma_0", s.priors.sigma_0},
                  {"nu_q", s.priors.nu_q},
                  {"c_q_scale", s.priors.c_q_scale},
                  {"lambda_upper", s.priors.lambda_upper}}}};
  }
  if (cfg.forecast) {
    const auto& s = *cfg.forecast;
    j["forecast"] = {{"posterior", s.posterior},
                     {"states", s.states},
                     {"winds", s.winds},
                     {"basis", s.basis},
                     {"wind_forecast", s.wind_forecast},
                     {"train_steps", s.train_steps},
                     {"horizon", s.horizon},
                     {"draws", s.draws}};
  }
  if (cfg.score) {
    const auto& s = *cfg.score;
    j["score"] = {{"forecast", s.forecast},
                  {"truth", s.truth},
                  {"offset", s.offset}};
  }
  return j.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& cfg) {
  return fnv1a64(effective_config_json(cfg));
}

}  // namespace firecast
