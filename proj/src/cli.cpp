#include "eofkit/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "eofkit/oracle.hpp"
#include "eofkit/random.hpp"

namespace eofkit::cli {

namespace {

using Clock = std::chrono::steady_clock;

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConfigError:
    case ErrorKind::ParamOutOfRange:
    case ErrorKind::RankMismatch:
      return false;
    default:
      return true;
  }
}

int exit_code_for(const Error& e) { return is_input_error(e.kind()) ? kInputInvalid : kConfigInvalid; }

bool finite(double x) { return std::isfinite(x); }

io::Json config_to_json(const EofConfig& cfg, int resolved_cardinality) {
  io::Json j;
  j["cardinality"] = resolved_cardinality;
  j["restarts"] = cfg.restarts;
  j["max_iterations"] = cfg.max_iterations;
  j["objective_tolerance"] = cfg.objective_tolerance;
  j["seed"] = cfg.seed;
  return j;
}

std::vector<Report> demo_werner_sweep(const DemoOptions& opts) {
  if (opts.grid < 1) throw Error(ErrorKind::ParamOutOfRange, "grid must be >= 1");
  std::vector<Report> out;
  for (int i = 0; i <= opts.grid; ++i) {
    const double p = static_cast<double>(i) / opts.grid;
    Report r = make_report("demo:werner-sweep", oracle::werner_state(p), opts.config, opts.report);
    r.extra["p"] = p;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Report> demo_tiles(const DemoOptions& opts) {
  const DensityMatrix rho = tiles_upb_state();
  Report r = make_report("demo:tiles", rho, opts.config, opts.report);
  const double overlap =
      max_product_overlap(tiles_complement_projector(), {3, 3}, {200, opts.config.seed, 1000});
  double upb_expectation = 0.0;
  for (const CVector& v : tiles_upb_vectors()) {
    upb_expectation = std::max(upb_expectation, std::abs(v.dot(rho.matrix() * v)));
  }
  r.extra["max_product_overlap"] = overlap;
  r.extra["overlap_ceiling"] = 1.0 - kTilesOverlapMargin;
  r.extra["eof_floor"] = kTilesEofFloor;
  r.extra["max_upb_expectation"] = upb_expectation;
  r.extra["rank"] = numerical_rank(rho);
  return {std::move(r)};
}

std::vector<Report> demo_subadditivity(const DemoOptions& opts) {
  const DensityMatrix rho = random_density({2, 2}, 2, opts.config.seed);
  const SubadditivityTerms terms = subadditivity_terms(rho, opts.config);
  Report r = make_report("demo:subadditivity", rho, opts.config, opts.report, terms.single);
  r.extra["eof_doubled"] = terms.doubled.value;
  r.extra["twice_eof"] = 2.0 * terms.single.value;
  r.extra["excess"] = terms.excess();
  return {std::move(r)};
}

std::vector<Report> demo_convexity(const DemoOptions& opts) {
  constexpr int kPairs = 4;
  std::vector<Report> out;
  for (int k = 0; k < kPairs; ++k) {
    const auto base = static_cast<std::uint64_t>(3 * k);
    const DensityMatrix rho1 = random_density({2, 2}, 1 + k % 4, derive_seed(opts.config.seed, base));
    const DensityMatrix rho2 = random_density({2, 2}, 4 - k % 4, derive_seed(opts.config.seed, base + 1));
    Rng rng(derive_seed(opts.config.seed, base + 2));
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const ConvexityTerms terms = convexity_terms(rho1, rho2, lambda, opts.config);
    const DensityMatrix mixture =
        validate_density(lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix(), rho1.dims());
    Report r = make_report("demo:convexity", mixture, opts.config, opts.report, terms.mixture);
    r.extra["lambda"] = lambda;
    r.extra["eof_first"] = terms.first.value;
    r.extra["eof_second"] = terms.second.value;
    r.extra["eof_mixture"] = terms.mixture.value;
    r.extra["gap"] = terms.gap();
    out.push_back(std::move(r));
  }
  return out;
}

DensityMatrix named_state(const std::string& name, int d, double p, int rank, std::uint64_t seed) {
  if (name == "singlet") return singlet().density();
  if (name == "maxent") return max_entangled(d).density();
  if (name == "werner") return oracle::werner_state(p);
  if (name == "mixed") return maximally_mixed({d, d});
  if (name == "tiles") return tiles_upb_state();
  if (name == "product") {
    Rng rng(seed);
    return product_state(random_unit_vector(rng, d), random_unit_vector(rng, d)).density();
  }
  if (name == "random") return random_density({d, d}, rank, seed);
  if (name == "separable") return random_separable({d, d}, rank, seed);
  throw Error(ErrorKind::ParamOutOfRange, "unknown state name '" + name + "'");
}

}  // namespace

Report make_report(const std::string& input, const DensityMatrix& rho, const EofConfig& cfg,
                   const ReportOptions& opts, const std::optional<EofResult>& precomputed) {
  const auto start = Clock::now();
  Report r;
  r.input = input;
  r.dims = rho.dims();
  r.config = cfg;
  r.resolved_cardinality = resolve_cardinality(cfg, numerical_rank(rho), rho.dims());
  const EofResult estimate = precomputed ? *precomputed : eof_estimate(rho, cfg);
  r.eof_value = estimate.value;
  r.converged = estimate.converged;
  if (opts.emit_witness) r.witness = estimate.witness;
  r.spectral_upper_bound = spectral_upper_bound(rho);
  r.cnt_entropy = cnt_entropy(rho, estimate);
  r.separability = ppt_check(rho);
  if (rho.dims() == BipartiteDims{2, 2}) {
    r.oracle = OracleValues{oracle::wootters_eof(rho), oracle::brute_force_eof(rho, opts.oracle_budget, cfg.seed),
                            opts.oracle_budget};
  }
  r.wall_time_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

io::Json report_to_json(const Report& r) {
  io::Json j;
  j["schema"] = io::kSchemaVersion;
  j["toolkit_version"] = kToolkitVersion;
  j["input"] = r.input;
  j["dims"] = {{"d1", r.dims.d1}, {"d2", r.dims.d2}};
  j["eof_value"] = r.eof_value;
  j["converged"] = r.converged;
  j["spectral_upper_bound"] = r.spectral_upper_bound;
  j["cnt_entropy"] = r.cnt_entropy;
  j["separability"] = io::verdict_to_json(r.separability);
  if (r.oracle) {
    j["oracle"] = {{"wootters_eof", r.oracle->wootters_eof},
                   {"brute_force_eof", r.oracle->brute_force_eof},
                   {"brute_force_budget", r.oracle->brute_force_budget}};
  }
  j["config"] = config_to_json(r.config, r.resolved_cardinality);
  if (r.witness) j["witness"] = io::ensemble_to_json(*r.witness);
  if (!r.extra.empty()) j["extra"] = r.extra;
  j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

std::vector<std::string> report_violations(const Report& r) {
  std::vector<std::string> out;
  if (!finite(r.eof_value) || !finite(r.spectral_upper_bound) || !finite(r.cnt_entropy) ||
      !finite(r.separability.min_pt_eigenvalue)) {
    out.emplace_back("non-finite numeric field");
  }
  if (r.oracle && (!finite(r.oracle->wootters_eof) || !finite(r.oracle->brute_force_eof))) {
    out.emplace_back("non-finite oracle value");
  }
  if (r.eof_value > r.spectral_upper_bound + 1e-8) out.emplace_back("eof_value exceeds spectral_upper_bound");
  if (r.eof_value < 0.0) out.emplace_back("negative eof_value");
  if (r.eof_value > std::log(static_cast<double>(r.dims.d1)) + 1e-9) out.emplace_back("eof_value exceeds ln d1");
  return out;
}

std::vector<Report> run_demo(const std::string& name, const DemoOptions& opts) {
  if (name == "singlet") return {make_report("demo:singlet", singlet().density(), opts.config, opts.report)};
  if (name == "maxent-d") {
    if (opts.d < 1 || opts.d > 6) throw Error(ErrorKind::ParamOutOfRange, "--d must lie in [1, 6]");
    return {make_report("demo:maxent-d", max_entangled(opts.d).density(), opts.config, opts.report)};
  }
  if (name == "werner-sweep") return demo_werner_sweep(opts);
  if (name == "tiles") return demo_tiles(opts);
  if (name == "subadditivity") return demo_subadditivity(opts);
  if (name == "convexity") return demo_convexity(opts);
  throw Error(ErrorKind::ParamOutOfRange, "unknown demo '" + name + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of formation toolkit", "eofkit"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to standard error");

  std::string state_path, config_path, demo_name, state_name;
  std::optional<int> restarts, cardinality, max_iterations;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  ReportOptions report_opts;
  int demo_d = 3, demo_grid = 10, state_rank = 1;
  double state_p = 1.0;

  auto add_config_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Key-value config file");
    sub->add_option("--restarts", restarts, "Number of random restarts");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--cardinality", cardinality, "Decomposition size (default rank^2)");
    sub->add_option("--max-iterations", max_iterations, "Iteration cap per restart");
    sub->add_option("--tolerance", tolerance, "Objective tolerance");
    sub->add_flag("--emit-witness", report_opts.emit_witness, "Include the optimal ensemble");
    sub->add_option("--oracle-budget", report_opts.oracle_budget, "Brute-force oracle budget for 2x2 states");
  };

  CLI::App* compute = app.add_subcommand("compute", "Estimate EoF and related quantities for a state file");
  compute->add_option("state", state_path, "State file (JSON)")->required();
  add_config_flags(compute);

  CLI::App* demo = app.add_subcommand("demo", "Reproduce one of the named examples");
  demo->add_option("name", demo_name, "singlet | maxent-d | werner-sweep | tiles | subadditivity | convexity")
      ->required();
  demo->add_option("--d", demo_d, "Local dimension for maxent-d");
  demo->add_option("--grid", demo_grid, "Grid intervals for werner-sweep");
  add_config_flags(demo);

  CLI::App* check = app.add_subcommand("check", "PPT separability verdict for a state file");
  check->add_option("state", state_path, "State file (JSON)")->required();

  CLI::App* state = app.add_subcommand("state", "Write a named state as a state file");
  state->add_option("name", state_name, "singlet | maxent | werner | mixed | tiles | product | random | separable")
      ->required();
  state->add_option("--d", demo_d, "Local dimension (d x d)");
  state->add_option("--p", state_p, "Werner parameter");
  state->add_option("--rank", state_rank, "Rank (random) or number of product terms (separable)");
  state->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kConfigInvalid;
  }

  auto log = [&](const std::string& msg) {
    if (verbose) err << "[eofkit] " << msg << '\n';
  };

  auto resolve_config = [&]() {
    EofConfig cfg;
    if (!config_path.empty()) cfg = io::read_config_file(config_path, cfg);
    if (restarts) cfg.restarts = *restarts;
    if (seed) cfg.seed = *seed;
    if (cardinality) cfg.cardinality = *cardinality;
    if (max_iterations) cfg.max_iterations = *max_iterations;
    if (tolerance) cfg.objective_tolerance = *tolerance;
    if (report_opts.oracle_budget < 1) throw Error(ErrorKind::ConfigError, "--oracle-budget must be >= 1");
    return cfg;
  };

  if (demo->parsed()) {
    if (std::find(kDemoNames.begin(), kDemoNames.end(), demo_name) == kDemoNames.end()) {
      err << "error: unknown demo '" << demo_name << "'\n";
      return kUnknownDemo;
    }
  }

  // Input problems are reported before config problems.
  std::optional<DensityMatrix> rho;
  if (compute->parsed() || check->parsed()) {
    try {
      log("reading " + state_path);
      rho = io::read_state_file(state_path);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kInputInvalid;
    }
  }

  try {
    if (check->parsed()) {
      io::Json j;
      j["schema"] = io::kSchemaVersion;
      j["input"] = state_path;
      j.update(io::verdict_to_json(ppt_check(*rho)));
      out << j.dump(2) << '\n';
      return kOk;
    }
    if (state->parsed()) {
      out << io::state_to_json(named_state(state_name, demo_d, state_p, state_rank, seed.value_or(0))).dump()
          << '\n';
      return kOk;
    }
    const EofConfig cfg = resolve_config();
    if (compute->parsed()) {
      log("estimating EoF");
      const Report r = make_report(state_path, *rho, cfg, report_opts);
      out << report_to_json(r).dump(2) << '\n';
      return kOk;
    }
    DemoOptions opts{demo_d, demo_grid, cfg, report_opts};
    log("running demo " + demo_name);
    io::Json arr = io::Json::array();
    for (const Report& r : run_demo(demo_name, opts)) arr.push_back(report_to_json(r));
    out << arr.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace eofkit::cli
