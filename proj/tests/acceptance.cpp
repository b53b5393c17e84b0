// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eofkit/cli.hpp"
#include "eofkit/oracle.hpp"
#include "eofkit/random.hpp"

using namespace eofkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;  // <= 0 means no bound
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<DensityMatrix> random_corpus(BipartiteDims dims, int count, std::uint64_t seed) {
  std::vector<DensityMatrix> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(random_density(dims, 1 + i % dims.total(), derive_seed(seed, static_cast<std::uint64_t>(i))));
  }
  return out;
}

std::string run_cli_capture(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "eofkit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

std::string strip_wall_time(const std::string& s) {
  std::istringstream in(s);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.find("wall_time_seconds") == std::string::npos) kept += line + '\n';
  return kept;
}

cli::DemoOptions demo_options() {
  cli::DemoOptions opts;
  return opts;
}

Outcome singlet_eof() {
  const auto reports = cli::run_demo("singlet", demo_options());
  const double err = std::abs(reports.at(0).eof_value - std::log(2.0));
  return {err <= 1e-6, fmt("|E - ln 2| = %.3e", err)};
}

Outcome maxent_eof() {
  double worst = 0.0;
  for (int d : {2, 3, 4}) {
    cli::DemoOptions opts = demo_options();
    opts.d = d;
    const auto reports = cli::run_demo("maxent-d", opts);
    worst = std::max(worst, std::abs(reports.at(0).eof_value - std::log(static_cast<double>(d))));
  }
  return {worst <= 1e-6, fmt("max |E - ln d| = %.3e", worst)};
}

Outcome ceiling() {
  double worst = -1e300;
  int count = 0;
  for (BipartiteDims dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}}) {
    for (const DensityMatrix& rho : random_corpus(dims, 100, 3000 + static_cast<std::uint64_t>(dims.d2))) {
      const double e = eof_estimate(rho).value;
      worst = std::max(worst, e - std::log(static_cast<double>(dims.d1)));
      ++count;
    }
  }
  return {count == 200 && worst <= 1e-9, fmt("max (E - ln d1) = %.3e", worst)};
}

Outcome separable_iff_zero() {
  double worst_sep = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_separable({2, 2}, 4, derive_seed(4000, static_cast<std::uint64_t>(i)));
    worst_sep = std::max(worst_sep, eof_estimate(rho).value);
  }
  double least_npt = 1e300, least_oracle = 1e300;
  int npt = 0;
  for (std::uint64_t i = 0; npt < 50; ++i) {
    const DensityMatrix rho = random_density({2, 2}, 1 + static_cast<int>(i % 4), derive_seed(4100, i));
    if (ppt_check(rho).ppt) continue;
    ++npt;
    least_npt = std::min(least_npt, eof_estimate(rho).value);
    least_oracle = std::min(least_oracle, oracle::wootters_eof(rho));
  }
  const bool ok = worst_sep <= 1e-4 && least_npt >= 1e-3 && least_oracle > 0.0;
  return {ok, fmt("max E(separable) = %.3e", worst_sep) + fmt(", min E(NPT) = %.3e", least_npt) +
                  fmt(", min oracle(NPT) = %.3e", least_oracle)};
}

Outcome oracle_agreement() {
  cli::DemoOptions opts = demo_options();
  opts.grid = 10;
  opts.config.restarts = 32;
  opts.config.cardinality = 4;
  opts.report.oracle_budget = 2000;
  const auto rows = cli::run_demo("werner-sweep", opts);
  double est = 0.0, orc = 0.0;
  for (const cli::Report& r : rows) {
    est = std::max(est, std::abs(r.eof_value - r.oracle->wootters_eof));
    orc = std::max(orc, std::abs(r.oracle->wootters_eof - r.oracle->brute_force_eof));
  }
  return {rows.size() == 11 && est <= 5e-3 && orc <= 5e-3,
          fmt("max |E - wootters| = %.3e", est) + fmt(", max |wootters - brute| = %.3e", orc)};
}

Outcome spectral_ordering() {
  double worst = -1e300;
  for (const DensityMatrix& rho : random_corpus({2, 3}, 50, 6000))
    worst = std::max(worst, eof_estimate(rho).value - spectral_upper_bound(rho));
  for (const DensityMatrix& rho : random_corpus({2, 2}, 50, 6100))
    worst = std::max(worst, eof_estimate(rho).value - spectral_upper_bound(rho));
  const DensityMatrix w = oracle::werner_state(0.8);
  const double gap = spectral_upper_bound(w) - oracle::wootters_eof(w);
  return {worst <= 1e-8 && gap >= 0.01, fmt("max (E - spectral) = %.3e", worst) + fmt(", Werner(0.8) gap = %.4f", gap)};
}

Outcome convexity() {
  double worst = 1e300;
  Rng rng(7000);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    const DensityMatrix a = random_density({2, 2}, 1 + i % 4, derive_seed(7100, k));
    const DensityMatrix b = random_density({2, 2}, 1 + (i / 4) % 4, derive_seed(7200, k));
    worst = std::min(worst, convexity_gap(a, b, unit(rng)));
  }
  return {worst >= -1e-8, fmt("min gap = %.3e", worst)};
}

Outcome subadditivity() {
  double pure = 0.0, mixed = -1e300;
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho = random_density({2, 2}, 1, derive_seed(8000, static_cast<std::uint64_t>(i)));
    pure = std::max(pure, std::abs(subadditivity_terms(rho).excess()));
  }
  for (int i = 0; i < 3; ++i) {
    const DensityMatrix rho = random_density({2, 2}, 2 + i % 2, derive_seed(8100, static_cast<std::uint64_t>(i)));
    mixed = std::max(mixed, subadditivity_terms(rho).excess());
  }
  return {pure <= 1e-4 && mixed <= 1e-3,
          fmt("pure max |excess| = %.3e", pure) + fmt(", mixed max excess = %.3e", mixed)};
}

Outcome pt_invariance() {
  double worst = 0.0;
  int i = 0;
  for (BipartiteDims dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}, BipartiteDims{3, 3}, BipartiteDims{3, 2}}) {
    for (const DensityMatrix& rho : random_corpus(dims, 25, 9000 + static_cast<std::uint64_t>(i++))) {
      const CMatrix diff = reduce_to_first(partial_transpose(rho), dims) - partial_trace(rho, Subsystem::first).matrix();
      worst = std::max(worst, max_abs(diff));
    }
  }
  return {worst <= 1e-12, fmt("max entrywise difference = %.3e", worst)};
}

Outcome tiles() {
  double least_eof = 1e300, most_overlap = 0.0;
  bool ppt = true;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    cli::DemoOptions opts = demo_options();
    opts.config.seed = seed;
    const cli::Report r = cli::run_demo("tiles", opts).at(0);
    ppt = ppt && r.separability.ppt;
    least_eof = std::min(least_eof, r.eof_value);
    most_overlap = std::max(most_overlap, r.extra["max_product_overlap"].get<double>());
  }
  const bool ok = ppt && most_overlap <= 1.0 - cli::kTilesOverlapMargin && least_eof >= cli::kTilesEofFloor;
  return {ok, std::string("ppt = ") + (ppt ? "true" : "false") + fmt(", max overlap = %.6f", most_overlap) +
                  fmt(", min E = %.6f", least_eof)};
}

Outcome cnt() {
  const double s = cnt_entropy(singlet().density());
  const double m = cnt_entropy(maximally_mixed({2, 2}));
  const bool ok = std::abs(s) <= 1e-6 && std::abs(m - std::log(2.0)) <= 1e-4;
  return {ok, fmt("H(singlet) = %.3e", s) + fmt(", H(I/4) - ln 2 = %.3e", m - std::log(2.0))};
}

Outcome continuity() {
  double worst = 0.0, worst_distance = 0.0;
  int i = 0;
  for (const DensityMatrix& rho : random_corpus({2, 2}, 20, 10000)) {
    const DensityMatrix noise = random_density({2, 2}, 4, derive_seed(10100, static_cast<std::uint64_t>(i++)));
    const DensityMatrix moved = validate_density((1 - 1e-3) * rho.matrix() + 1e-3 * noise.matrix(), {2, 2});
    worst_distance = std::max(worst_distance, trace_distance(rho, moved));
    worst = std::max(worst, std::abs(eof_estimate(rho).value - eof_estimate(moved).value));
  }
  return {worst_distance <= 1e-3 && worst <= 0.05,
          fmt("max trace distance = %.3e", worst_distance) + fmt(", max |dE| = %.3e", worst)};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"demo", "singlet"},
      {"demo", "convexity", "--seed", "3", "--restarts", "8", "--oracle-budget", "200", "--emit-witness"},
      {"demo", "subadditivity", "--seed", "5", "--restarts", "8", "--oracle-budget", "200"},
      {"demo", "werner-sweep", "--grid", "4", "--restarts", "8", "--oracle-budget", "200"},
      {"demo", "tiles", "--seed", "1", "--restarts", "8"},
      {"state", "random", "--d", "3", "--rank", "3", "--seed", "11"},
  };
  int differing = 0;
  for (const auto& cmd : commands) {
    int c1 = 0, c2 = 0;
    const std::string a = run_cli_capture(cmd, c1), b = run_cli_capture(cmd, c2);
    if (c1 != 0 || c1 != c2 || strip_wall_time(a) != strip_wall_time(b) || a.empty()) ++differing;
  }
  return {differing == 0, std::to_string(commands.size()) + " commands, " + std::to_string(differing) + " differing"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "singlet EoF = ln 2", 1.0, singlet_eof},
      {2, "maximally entangled EoF = ln d (d = 2, 3, 4)", 5.0, maxent_eof},
      {3, "ceiling E <= ln d1 on 200 random states", 600.0, ceiling},
      {4, "separable <=> zero EoF (2x2)", 600.0, separable_iff_zero},
      {5, "Werner sweep agrees with both oracles", 300.0, oracle_agreement},
      {6, "spectral bound ordering and strict gap", 600.0, spectral_ordering},
      {7, "convexity gap >= 0 on 50 triples", 900.0, convexity},
      {8, "subadditivity on two copies", 1800.0, subadditivity},
      {9, "partial transpose leaves reduced state unchanged", 60.0, pt_invariance},
      {10, "tiles state: PPT, no product vector, positive EoF", 600.0, tiles},
      {11, "CNT entropy of singlet and I/4", 0.0, cnt},
      {12, "continuity under 1e-3 perturbations", 0.0, continuity},
      {13, "byte-identical reports for repeated commands", 0.0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_seconds > 0 && secs >= c.time_limit_seconds) {
      o.ok = false;
      o.detail += fmt(" [over time limit %.0f s]", c.time_limit_seconds);
    }
    if (!o.ok) ++failed;
    std::printf("%s %2d %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
