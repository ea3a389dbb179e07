// firecast: simulate / classify / build-basis / fit / forecast / score
// pipeline driver. Every command reads one JSON config (or a previous run's
// manifest), writes its outputs plus the resolved effective config and a
// run manifest, and is bit-reproducible from (config, seed).

#include <chrono>
#include <ctime>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "firecast/basis.hpp"
#include "firecast/errors.hpp"
#include "firecast/eval.hpp"
#include "firecast/forecast.hpp"
#include "firecast/grid.hpp"
#include "firecast/inference.hpp"
#include "firecast/io.hpp"
#include "firecast/run_config.hpp"
#include "firecast/simulator.hpp"
#include "firecast/stats.hpp"

namespace fs = std::filesystem;
using namespace firecast;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int chains_override = 0;
  bool quiet = false;
};

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunContext {
  RunConfig cfg;
  fs::path out;
  io::RunManifest manifest;
  bool quiet = false;

  void add_output(const fs::path& path) {
    io::ManifestOutput o;
    o.path = fs::relative(path, out).string();
    o.bytes = fs::file_size(path);
    o.fnv1a64_hex = io::hex64(io::file_fnv1a64(path));
    manifest.outputs.push_back(std::move(o));
  }

  void note(const std::string& text) {
    manifest.notes.push_back(text);
    if (!quiet) std::cout << "note: " << text << "\n";
  }

  void finish(const std::string& command) {
    manifest.command = command;
    manifest.version = kVersion;
    manifest.seed = cfg.seed;
    manifest.config_hash_hex = io::hex64(config_hash(cfg));
    manifest.effective_config_json = effective_config_json(cfg);
    manifest.finished_utc = utc_now();
    io::write_manifest(out / "manifest.json", manifest);
    if (!quiet) {
      std::cout << command << ": wrote " << manifest.outputs.size()
                << " output file(s) under " << out.string() << "\n";
    }
  }
};

RunContext make_context(const CommonArgs& args) {
  RunContext ctx;
  ctx.cfg = load_run_config(args.config_path);
  if (args.seed_given) {
    ctx.cfg.seed = args.seed_override;
    ctx.cfg.seed_set = true;
  }
  if (!ctx.cfg.seed_set) {
    throw ConfigError(
        "config: seed: missing (set \"seed\" in the config or pass --seed)");
  }
  if (!args.out_override.empty()) ctx.cfg.out = args.out_override;
  if (args.chains_override > 0 && ctx.cfg.fit) {
    ctx.cfg.fit->chains = args.chains_override;
  }
  ctx.out = fs::path(ctx.cfg.out);
  fs::create_directories(ctx.out);
  ctx.quiet = args.quiet;
  ctx.manifest.started_utc = utc_now();
  // The resolved configuration is an output in its own right.
  io::atomic_write_text(ctx.out / "effective_config.json",
                        effective_config_json(ctx.cfg));
  return ctx;
}

fs::path resolve_input(const RunContext& ctx, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute() || fs::exists(p)) return p;
  const fs::path rel = fs::path(ctx.cfg.base_dir) / p;
  if (fs::exists(rel)) return rel;
  const fs::path in_out = ctx.out / p;
  if (fs::exists(in_out)) return in_out;
  throw DataError("input not found: " + path);
}

StateField load_training_states(const RunContext& ctx, const std::string& path,
                                int train_steps) {
  StateField sf = io::read_statefield(resolve_input(ctx, path));
  if (train_steps > 0) {
    if (train_steps > sf.steps()) {
      throw ConfigError("config: train_steps exceeds the state record");
    }
    StateField head(train_steps, sf.cells());
    head.values = sf.values.topRows(train_steps);
    return head;
  }
  return sf;
}

int run_simulate(const CommonArgs& args) {
  RunContext ctx = make_context(args);
  if (!ctx.cfg.simulate) throw ConfigError("config: simulate: missing");
  const auto& sec = *ctx.cfg.simulate;
  ctx.cfg.grid.validate();

  SimConfig sim;
  sim.grid = ctx.cfg.grid;
  sim.steps = sec.steps;
  sim.neighborhood = ctx.cfg.neighborhood;
  sim.seed = ctx.cfg.seed;
  sim.winds = resolve_winds(sec.wind, sec.steps, ctx.cfg.base_dir);
  sim.initial = resolve_initial(sec.initial, ctx.cfg.grid, ctx.cfg.base_dir);

  RuleTable rules{sec.ignite, sec.extinguish};
  const StateField sf = simulate_fire(rules, sim);

  io::write_statefield(ctx.out / "states.csv", sf);
  io::write_winds(ctx.out / "winds.csv", sim.winds);
  ctx.add_output(ctx.out / "states.csv");
  ctx.add_output(ctx.out / "winds.csv");
  ctx.add_output(ctx.out / "effective_config.json");
  ctx.finish("simulate");
  return 0;
}

int run_classify(const CommonArgs& args) {
  RunContext ctx = make_context(args);
  if (!ctx.cfg.classify) throw ConfigError("config: classify: missing");
  const auto& sec = *ctx.cfg.classify;

  TemperatureRaster raster =
      !sec.raster.empty()
          ? io::read_raster_long(resolve_input(ctx, sec.raster))
          : io::read_raster_manifest(resolve_input(ctx, sec.raster_manifest));
  if (sec.coarsen_x > 1 || sec.coarsen_y > 1) {
    raster = coarsen_raster(raster, sec.coarsen_x, sec.coarsen_y);
  }
  const StateField sf = classify_states(raster, sec.classifier);
  const auto violations = validate_statefield(sf);
  if (!violations.empty()) {
    throw DataError("classify: produced an invalid state field");
  }

  io::write_statefield(ctx.out / "states.csv", sf);
  io::write_raster_long(ctx.out / "temps.csv", raster);
  ctx.add_output(ctx.out / "states.csv");
  ctx.add_output(ctx.out / "temps.csv");
  ctx.add_output(ctx.out / "effective_config.json");
  ctx.finish("classify");
  return 0;
}

int run_build_basis(const CommonArgs& args) {
  RunContext ctx = make_context(args);
  if (!ctx.cfg.basis) throw ConfigError("config: basis: missing");
  const auto& sec = *ctx.cfg.basis;
  ctx.cfg.grid.validate();

  BasisMatrix basis;
  if (sec.kind == "bisquare") {
    std::vector<std::pair<double, double>> knots = sec.knots;
    double bandwidth = sec.bandwidth;
    if (knots.empty()) {
      knots = equally_spaced_knots(ctx.cfg.grid, sec.knots_x, sec.knots_y);
      if (bandwidth <= 0.0) {
        bandwidth =
            default_bisquare_bandwidth(ctx.cfg.grid, sec.knots_x, sec.knots_y);
      }
    }
    if (bandwidth <= 0.0) {
      throw ConfigError("config: basis.bandwidth: required for explicit knots");
    }
    for (std::size_t k = 0; k < knots.size(); ++k) {
      if (!ctx.cfg.grid.contains(static_cast<int>(knots[k].first),
                                 static_cast<int>(knots[k].second))) {
        ctx.note("knot " + std::to_string(k + 1) + " lies outside the grid");
      }
    }
    basis = bisquare_basis(ctx.cfg.grid, knots, bandwidth);
  } else {
    if (sec.states.empty() || sec.temps.empty()) {
      throw ConfigError("config: basis.states/temps: required for kind=eof");
    }
    const StateField sf =
        load_training_states(ctx, sec.states, sec.train_steps);
    const TemperatureRaster raster =
        io::read_raster_long(resolve_input(ctx, sec.temps));
    Eigen::MatrixXd temps = io::raster_to_matrix(raster);
    if (temps.rows() < sf.steps()) {
      throw DataError("basis: temperature record shorter than states");
    }
    temps.conservativeResize(sf.steps(), Eigen::NoChange);
    std::vector<WindRecord> winds;
    if (!sec.winds.empty()) {
      winds = io::read_winds(resolve_input(ctx, sec.winds));
    }
    basis = construct_eofs(sf, temps, sec.horizon, sec.rank, winds,
                           ctx.cfg.neighborhood, ctx.cfg.grid, ctx.cfg.seed);
  }

  io::write_basis(ctx.out / "basis.csv", basis);
  ctx.add_output(ctx.out / "basis.csv");
  ctx.add_output(ctx.out / "effective_config.json");
  ctx.finish("build-basis");
  return 0;
}

int run_fit(const CommonArgs& args) {
  RunContext ctx = make_context(args);
  if (!ctx.cfg.fit) throw ConfigError("config: fit: missing");
  const auto& sec = *ctx.cfg.fit;

  const StateField sf = load_training_states(ctx, sec.states, sec.train_steps);
  std::vector<WindRecord> winds;
  if (!sec.winds.empty()) {
    winds = io::read_winds(resolve_input(ctx, sec.winds));
  }
  ctx.cfg.grid.validate();
  if (ctx.cfg.grid.cells() != sf.cells()) {
    throw ConfigError("config: grid does not match the state record");
  }

  BasisMatrix basis;
  const BasisMatrix* basis_ptr = nullptr;
  if (!sec.basis.empty()) {
    basis = io::read_basis(resolve_input(ctx, sec.basis));
    basis_ptr = &basis;
  }
  const int r = basis_ptr != nullptr ? basis.rank() : 0;

  Priors priors = Priors::defaults(3, r);
  priors.sigma_b = sec.priors.sigma_b * Eigen::MatrixXd::Identity(3, 3);
  if (r > 0) {
    priors.sigma_m =
        sec.priors.sigma_m * Eigen::MatrixXd::Identity(r * r, r * r);
    priors.sigma_0 = sec.priors.sigma_0 * Eigen::MatrixXd::Identity(r, r);
    priors.nu_q = sec.priors.nu_q;
    const double cq = sec.priors.c_q_scale > 0.0 ? sec.priors.c_q_scale
                                                 : static_cast<double>(r);
    priors.c_q = cq * Eigen::MatrixXd::Identity(r, r);
  }
  if (sec.priors.lambda_upper > 0.0) {
    priors.lambda_upper = sec.priors.lambda_upper;
  }

  ChainConfig chain;
  chain.iterations = sec.iterations;
  chain.burn_in = sec.burn_in;
  chain.thinning = sec.thinning;
  chain.store_z_every = sec.store_z_every;
  chain.monotone_likelihood = sec.monotone_likelihood;

  const int chains = std::max(1, sec.chains);
  std::vector<std::future<PosteriorSamples>> futures;
  futures.reserve(static_cast<std::size_t>(chains));
  for (int c = 0; c < chains; ++c) {
    ChainConfig cc = chain;
    cc.seed = chains == 1
                  ? ctx.cfg.seed
                  : RngStream::derive(ctx.cfg.seed, "chain",
                                      static_cast<std::uint64_t>(c))
                        .next_u64();
    futures.push_back(std::async(std::launch::async, [&, cc]() {
      return run_gibbs(sf, winds, ctx.cfg.neighborhood, ctx.cfg.grid,
                       basis_ptr, priors, cc);
    }));
  }
  for (int c = 0; c < chains; ++c) {
    const PosteriorSamples post = futures[static_cast<std::size_t>(c)].get();
    const fs::path dir =
        chains == 1 ? ctx.out / "posterior"
                    : ctx.out / ("posterior_chain" + std::to_string(c + 1));
    io::write_posterior(dir, post);
    for (const auto& entry : fs::directory_iterator(dir)) {
      ctx.add_output(entry.path());
    }
    if (post.lambda_retained > 0) {
      ctx.note("cutpoint update skipped on " +
               std::to_string(post.lambda_retained) + " sweep(s)");
    }
  }
  ctx.add_output(ctx.out / "effective_config.json");
  ctx.finish("fit");
  return 0;
}

int run_forecast(const CommonArgs& args) {
  RunContext ctx = make_context(args);
  if (!ctx.cfg.forecast) throw ConfigError("config: forecast: missing");
  const auto& sec = *ctx.cfg.forecast;
  ctx.cfg.grid.validate();

  const PosteriorSamples post =
      io::read_posterior(resolve_input(ctx, sec.posterior));
  const StateField sf = load_training_states(ctx, sec.states, sec.train_steps);
  if (sf.cells() != ctx.cfg.grid.cells()) {
    throw ConfigError("config: grid does not match the state record");
  }

  BasisMatrix basis;
  const BasisMatrix* basis_ptr = nullptr;
  if (!sec.basis.empty()) {
    basis = io::read_basis(resolve_input(ctx, sec.basis));
    basis_ptr = &basis;
  }

  ForecastConfig fc;
  fc.horizon = sec.horizon;
  fc.max_draws = sec.draws;
  fc.seed = RngStream::derive(ctx.cfg.seed, "forecast-cmd").next_u64();
  if (!sec.wind_forecast.empty()) {
    fc.winds = io::read_winds(resolve_input(ctx, sec.wind_forecast));
    if (static_cast<int>(fc.winds.size()) < sec.horizon) {
      throw ConfigError("config: forecast.wind_forecast shorter than horizon");
    }
  } else if (!sec.winds.empty()) {
    const auto observed = io::read_winds(resolve_input(ctx, sec.winds));
    const std::size_t last = std::min<std::size_t>(
        observed.size(), static_cast<std::size_t>(sf.steps()));
    if (last > 0) fc.winds.assign(1, observed[last - 1]);
    ctx.note("wind forecast defaulted to persistence of the last observed "
             "record");
  } else {
    ctx.note("no winds supplied; forecasting under calm conditions");
  }

  const ForecastDistribution fd =
      forecast(post, sf.row(sf.steps() - 1), basis_ptr, fc,
               ctx.cfg.neighborhood, ctx.cfg.grid);

  io::write_forecast(ctx.out / "forecast.csv", fd);
  ctx.add_output(ctx.out / "forecast.csv");
  for (const auto& p :
       io::write_forecast_rasters(ctx.out / "rasters", fd, ctx.cfg.grid)) {
    ctx.add_output(p);
  }
  ctx.add_output(ctx.out / "effective_config.json");
  ctx.finish("forecast");
  return 0;
}

int run_score(const CommonArgs& args) {
  RunContext ctx = make_context(args);
  if (!ctx.cfg.score) throw ConfigError("config: score: missing");
  const auto& sec = *ctx.cfg.score;

  const ForecastDistribution fd =
      io::read_forecast(resolve_input(ctx, sec.forecast));
  const StateField all_truth = io::read_statefield(resolve_input(ctx, sec.truth));
  if (sec.offset + fd.horizon > all_truth.steps()) {
    throw DataError("score: truth record too short for offset + horizon");
  }
  if (all_truth.cells() != fd.cells) {
    throw DataError("score: forecast and truth cell counts differ");
  }
  StateField truth(fd.horizon, fd.cells);
  truth.values = all_truth.values.middleRows(sec.offset, fd.horizon);

  const ScoreReport report = score_forecast(fd, truth);
  io::write_score(ctx.out / "score.csv", report);
  ctx.add_output(ctx.out / "score.csv");
  ctx.add_output(ctx.out / "effective_config.json");
  if (!ctx.quiet) std::cout << io::format_score_table(report);
  ctx.finish("score");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic cellular-automata wildfire modeling toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&args](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required();
    cmd->add_option("--seed", args.seed_override, "override the config seed")
        ->each([&args](const std::string&) { args.seed_given = true; });
    cmd->add_option("--out", args.out_override, "override the output directory");
    cmd->add_option("--chains", args.chains_override,
                    "number of independent chains (fit only)");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic fire");
  CLI::App* classify =
      app.add_subcommand("classify", "rasters -> coarsen -> three-state field");
  CLI::App* build_basis =
      app.add_subcommand("build-basis", "construct a spatial basis");
  CLI::App* fit = app.add_subcommand("fit", "run the Gibbs sampler");
  CLI::App* forecast_cmd =
      app.add_subcommand("forecast", "propagate the fitted model forward");
  CLI::App* score = app.add_subcommand("score", "verify a forecast");
  for (CLI::App* cmd :
       {simulate, classify, build_basis, fit, forecast_cmd, score}) {
    add_common(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(args);
    if (classify->parsed()) return run_classify(args);
    if (build_basis->parsed()) return run_build_basis(args);
    if (fit->parsed()) return run_fit(args);
    if (forecast_cmd->parsed()) return run_forecast(args);
    if (score->parsed()) return run_score(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
