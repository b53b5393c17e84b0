#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eofkit/cli.hpp"
#include "eofkit/oracle.hpp"
#include "test_support.hpp"

using namespace eofkit;
using namespace eofkit::testing;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "eofkit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("eofkit_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

io::Json without_wall_time(io::Json j) {
  if (j.is_array()) {
    for (auto& e : j) e.erase("wall_time_seconds");
  } else {
    j.erase("wall_time_seconds");
  }
  return j;
}

}  // namespace

TEST_CASE("state round trip is exact") {
  for (const DensityMatrix& rho : random_states({2, 3}, 10, 1)) {
    const DensityMatrix back = io::read_state(io::write_state(rho));
    CHECK(back.dims() == rho.dims());
    CHECK(max_abs(back.matrix() - rho.matrix()) <= 1e-15);
  }
  const DensityMatrix t = tiles_upb_state();
  CHECK(max_abs(io::read_state(io::write_state(t)).matrix() - t.matrix()) <= 1e-15);
}

TEST_CASE("state parsing errors") {
  auto kind_of = [](const std::string& text) {
    try {
      io::read_state(text);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ParseError;
  };
  CHECK(kind_of("not json") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"schema": 2, "d1": 1, "d2": 1, "matrix": [[1, 0]]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"schema": 1, "d1": 2, "matrix": [[1, 0]]})") == ErrorKind::ParseError);
  CHECK(kind_of(R"({"schema": 1, "d1": 1, "d2": 2, "matrix": [[1, 0]]})") == ErrorKind::DimensionMismatch);
  CHECK(kind_of(R"({"schema": 1, "d1": 1, "d2": 1, "matrix": [[0.9, 0]]})") == ErrorKind::TraceNotOne);
  CHECK(kind_of(R"({"schema": 1, "d1": 1, "d2": 2, "matrix": [[0.5,0],[0.5,0],[0,0],[0.5,0]]})") ==
        ErrorKind::NotHermitian);
}

TEST_CASE("config parsing") {
  const EofConfig cfg = io::parse_config(
      "# comment\n"
      "restarts = 5\n"
      "cardinality=7  # trailing\n"
      "\n"
      "max_iterations = 100\n"
      "objective_tolerance = 1e-6\n"
      "seed = 12345678901\n");
  CHECK(cfg.restarts == 5);
  CHECK(cfg.cardinality == 7);
  CHECK(cfg.max_iterations == 100);
  CHECK(cfg.objective_tolerance == 1e-6);
  CHECK(cfg.seed == 12345678901ULL);

  EofConfig base;
  base.restarts = 3;
  CHECK(io::parse_config("seed = 4", base).restarts == 3);

  for (const char* bad : {"unknown = 1", "restarts", "restarts = five", "restarts = 2x", "seed = -1"}) {
    try {
      io::parse_config(bad);
      FAIL("expected ConfigError for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
    }
  }
}

TEST_CASE("ensemble export uses parallel arrays") {
  const io::Json j = io::ensemble_to_json(spectral_ensemble(oracle::werner_state(0.8)));
  CHECK(j["d1"] == 2);
  CHECK(j["d2"] == 2);
  REQUIRE(j["weights"].size() == 4);
  REQUIRE(j["members"].size() == 4);
  CHECK(j["members"][0].size() == 4);
  CHECK(j["members"][0][0].size() == 2);
}

TEST_CASE("compute on state files") {
  TempDir dir;
  const std::string singlet_path = dir.write("singlet.json", io::write_state(singlet().density()));
  const RunResult r = run({"compute", singlet_path, "--restarts", "4", "--oracle-budget", "200"});
  REQUIRE(r.code == cli::kOk);
  const io::Json j = io::Json::parse(r.out);
  CHECK(j["eof_value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(j["separability"]["ppt"] == false);
  CHECK(j.contains("oracle"));
  CHECK(j["toolkit_version"] == cli::kToolkitVersion);
  CHECK_FALSE(j.contains("witness"));

  const std::string mixed_path = dir.write("mixed.json", io::write_state(maximally_mixed({2, 2})));
  const RunResult m = run({"compute", mixed_path, "--restarts", "4", "--oracle-budget", "200", "--emit-witness"});
  REQUIRE(m.code == cli::kOk);
  const io::Json mj = io::Json::parse(m.out);
  CHECK(mj["eof_value"].get<double>() <= 1e-6);
  CHECK(mj["separability"]["ppt"] == true);
  CHECK(mj.contains("witness"));

  const std::string cfg_path = dir.write("cfg.txt", "restarts = 2\nseed = 9\n");
  const RunResult c = run({"compute", mixed_path, "--config", cfg_path, "--restarts", "3", "--oracle-budget", "10"});
  REQUIRE(c.code == cli::kOk);
  const io::Json cj = io::Json::parse(c.out);
  CHECK(cj["config"]["restarts"] == 3);
  CHECK(cj["config"]["seed"] == 9);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const std::string bad_trace =
      dir.write("bad.json", R"({"schema": 1, "d1": 1, "d2": 2, "matrix": [[0.5,0],[0,0],[0,0],[0.4,0]]})");
  const RunResult r = run({"compute", bad_trace});
  CHECK(r.code == cli::kInputInvalid);
  CHECK(r.err.find("TraceNotOne") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(run({"compute", (fs::temp_directory_path() / "eofkit_missing.json").string()}).code == cli::kInputInvalid);
  CHECK(run({"check", bad_trace}).code == cli::kInputInvalid);

  const std::string good = dir.write("good.json", io::write_state(maximally_mixed({2, 2})));
  CHECK(run({"compute", good, "--cardinality", "2"}).code == cli::kConfigInvalid);
  CHECK(run({"compute", good, "--restarts", "0"}).code == cli::kConfigInvalid);
  CHECK(run({"compute", good, "--config", dir.write("c.txt", "bogus = 1\n")}).code == cli::kConfigInvalid);
  CHECK(run({"compute", good, "--restarts", "many"}).code == cli::kConfigInvalid);

  CHECK(run({"demo", "no-such-demo"}).code == cli::kUnknownDemo);
  CHECK(run({"demo", "maxent-d", "--d", "0"}).code == cli::kConfigInvalid);
}

TEST_CASE("check subcommand") {
  TempDir dir;
  auto verdict = [&](const DensityMatrix& rho) {
    const RunResult r = run({"check", dir.write("s.json", io::write_state(rho))});
    REQUIRE(r.code == cli::kOk);
    return io::Json::parse(r.out);
  };
  const io::Json s = verdict(singlet().density());
  CHECK(s["ppt"] == false);
  CHECK(s["conclusive"] == true);
  Rng rng(2);
  CHECK(verdict(product_state(random_unit_vector(rng, 2), random_unit_vector(rng, 2)).density())["ppt"] == true);
  const io::Json t = verdict(tiles_upb_state());
  CHECK(t["ppt"] == true);
  CHECK(t["conclusive"] == false);
}

TEST_CASE("state subcommand output re-ingests") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"state", "singlet"}, {"state", "werner", "--p", "0.7"}, {"state", "tiles"},
        {"state", "random", "--d", "3", "--rank", "2", "--seed", "5"}, {"state", "separable", "--rank", "3"}}) {
    const RunResult r = run(args);
    REQUIRE(r.code == cli::kOk);
    CHECK_NOTHROW(io::read_state(r.out));
  }
  const DensityMatrix w = io::read_state(run({"state", "werner", "--p", "0.7"}).out);
  CHECK(max_abs(w.matrix() - oracle::werner_state(0.7).matrix()) <= 1e-15);
  CHECK(run({"state", "werner", "--p", "2"}).code == cli::kConfigInvalid);
}

TEST_CASE("demos") {
  SUBCASE("singlet") {
    const RunResult r = run({"demo", "singlet"});
    REQUIRE(r.code == cli::kOk);
    const io::Json j = io::Json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["eof_value"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  }
  SUBCASE("maxent-d") {
    const io::Json j = io::Json::parse(run({"demo", "maxent-d", "--d", "3"}).out);
    CHECK(j[0]["eof_value"].get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  }
  SUBCASE("werner-sweep") {
    const RunResult r = run({"demo", "werner-sweep", "--grid", "4", "--restarts", "4", "--oracle-budget", "300"});
    REQUIRE(r.code == cli::kOk);
    const io::Json j = io::Json::parse(r.out);
    CHECK(j.size() == 5);
    for (const auto& row : j) {
      CHECK(std::abs(row["eof_value"].get<double>() - row["oracle"]["wootters_eof"].get<double>()) <= 5e-3);
    }
  }
  SUBCASE("tiles") {
    const io::Json j = io::Json::parse(run({"demo", "tiles", "--restarts", "8"}).out);
    CHECK(j[0]["separability"]["ppt"] == true);
    CHECK(j[0]["extra"]["max_product_overlap"].get<double>() <= 0.99);
    CHECK(j[0]["eof_value"].get<double>() >= 0.05);
  }
}

TEST_CASE("reports are deterministic apart from wall time") {
  TempDir dir;
  const std::string path = dir.write("r.json", io::write_state(random_density({2, 2}, 3, 4)));
  const std::vector<std::string> args{"compute", path, "--restarts", "6", "--seed", "3", "--emit-witness",
                                      "--oracle-budget", "100"};
  const RunResult a = run(args), b = run(args);
  REQUIRE(a.code == cli::kOk);
  CHECK(without_wall_time(io::Json::parse(a.out)).dump() == without_wall_time(io::Json::parse(b.out)).dump());
  // Byte-level: the outputs differ at most inside the wall-time line.
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, kept;
    while (std::getline(in, line))
      if (line.find("wall_time_seconds") == std::string::npos) kept += line + '\n';
    return kept;
  };
  CHECK(strip(a.out) == strip(b.out));

  const std::vector<std::string> demo{"demo", "convexity", "--restarts", "4", "--seed", "1", "--oracle-budget", "50"};
  CHECK(strip(run(demo).out) == strip(run(demo).out));
}

TEST_CASE("report invariants") {
  cli::ReportOptions opts;
  opts.oracle_budget = 100;
  EofConfig cfg;
  cfg.restarts = 4;
  for (const DensityMatrix& rho : random_states({2, 3}, 6, 5)) {
    const cli::Report r = cli::make_report("random", rho, cfg, opts);
    CHECK(cli::report_violations(r).empty());
    CHECK(r.eof_value <= r.spectral_upper_bound + 1e-8);
    CHECK_FALSE(r.oracle.has_value());
  }
  const cli::Report w = cli::make_report("werner", oracle::werner_state(0.6), cfg, opts);
  REQUIRE(w.oracle.has_value());
  CHECK(w.oracle->brute_force_budget == 100);

  cli::Report broken = w;
  broken.eof_value = w.spectral_upper_bound + 1.0;
  CHECK_FALSE(cli::report_violations(broken).empty());
  broken = w;
  broken.cnt_entropy = std::nan("");
  CHECK_FALSE(cli::report_violations(broken).empty());
}
