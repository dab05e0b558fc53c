#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <unistd.h>
#include <sstream>

#include "oracles.hpp"
#include "sparsebound/cli.hpp"
#include "sparsebound/config.hpp"
#include "sparsebound/csv.hpp"

namespace fs = std::filesystem;
using namespace sparsebound;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sparsebound");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// "key value" rows or "key=value" lines.
std::map<std::string, std::string> parse_rows(const std::string& text) {
  std::map<std::string, std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      rows[line.substr(0, eq)] = line.substr(eq + 1);
      continue;
    }
    std::istringstream ls(line);
    std::string k, v;
    ls >> k >> v;
    rows[k] = v;
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sparsebound_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("coherence subcommand") {
  auto r = run({"coherence", "--m", "1024"});
  CHECK(r.code == 0);
  CHECK(r.out == "M=1024\nN=2048\nmu_max=0.031250\n");
  CHECK(parse_rows(run({"coherence", "--m", "2"}).out)["mu_max"] == "0.707107");
  CHECK(parse_rows(run({"coherence", "--m", "4096"}).out)["mu_max"] == "0.015625");
  r = run({"coherence", "--m", "100"});
  CHECK(r.code != 0);
  CHECK(r.err.find("power of two") != std::string::npos);
}

TEST_CASE("bound subcommand") {
  SUBCASE("violated conditions print zero probabilities") {
    const auto r = run({"bound", "--m", "1024", "--tau", "40", "--s-min", "0.1", "--s-max", "1",
                        "--sigma", "0.05", "--beta", "0.2"});
    REQUIRE(r.code == 0);
    auto rows = parse_rows(r.out);
    CHECK(rows["thm1_condition"] == "false");
    CHECK(rows["thm2_condition"] == "false");
    CHECK(rows["thm1_prob"] == "0");
    CHECK(rows["thm2_prob"] == "0");
  }
  SUBCASE("noiseless lambda is one") {
    const auto r = run({"bound", "--n", "2048", "--mu", "0.03125", "--tau", "5", "--s-min", "0.5",
                        "--s-max", "1", "--sigma", "0", "--beta", "0"});
    REQUIRE(r.code == 0);
    CHECK(parse_rows(r.out)["lambda_lb"] == "1");
  }
  SUBCASE("matches the high-precision evaluation to 12 digits") {
    const auto r = run({"bound", "--n", "2048", "--mu", "0.0313", "--tau", "10", "--s-min", "0.5",
                        "--s-max", "1", "--sigma", "0.001", "--beta", "0.01"});
    REQUIRE(r.code == 0);
    const double got = std::stod(parse_rows(r.out)["thm2_prob"]);
    const auto want = oracle::thm2(2048, 10, oracle::Real("0.0313"), oracle::Real("0.5"), 1,
                                   oracle::Real("0.001"), oracle::Real("0.01"));
    CHECK(oracle::rel_diff(got, want.probability) < 1e-12);
  }
  SUBCASE("alpha instead of beta") {
    const auto r = run({"bound", "--m", "1024", "--tau", "5", "--s-min", "0.5", "--s-max", "1",
                        "--sigma-sq", "1e-4", "--alpha", "1"});
    REQUIRE(r.code == 0);
    auto rows = parse_rows(r.out);
    CHECK(rows["alpha"] == "1");
    CHECK(std::stod(rows["beta"]) == doctest::Approx(0.01 * std::sqrt(4 * std::log(2048.0))));
  }
  SUBCASE("missing flags are listed") {
    const auto r = run({"bound", "--tau", "3"});
    CHECK(r.code == 2);
    for (const char* flag : {"--n", "--mu", "--s-min", "--s-max", "--sigma", "--beta"}) {
      CHECK(r.err.find(flag) != std::string::npos);
    }
  }
}

TEST_CASE("beta subcommand") {
  auto zero = parse_rows(run({"beta", "--m", "64", "--sigma", "0"}).out);
  CHECK(zero["beta"] == "0");
  CHECK(zero["alpha"] == "undefined");
  CHECK(zero["draws"] == "10000");

  auto a = parse_rows(run({"beta", "--m", "64", "--sigma", "0.01", "--draws", "500", "--seed", "3"}).out);
  auto b = parse_rows(run({"beta", "--m", "64", "--sigma", "0.02", "--draws", "500", "--seed", "3"}).out);
  CHECK(std::stod(b["beta"]) == 2.0 * std::stod(a["beta"]));
  CHECK(a["alpha_valid"] == "true");
}

TEST_CASE("value lists and config parsing") {
  CHECK(cli::parse_value_list("1, 2,3") == std::vector<double>{1, 2, 3});
  CHECK(cli::parse_value_list("5:20:5") == std::vector<double>{5, 10, 15, 20});
  CHECK_THROWS_AS(cli::parse_value_list("1,x"), std::invalid_argument);

  const auto kv = cli::parse_key_values("# comment\n m = 64 \n\nsweep=tau # trailing\nvalues=1,2\n", "test");
  CHECK(kv.at("m") == "64");
  CHECK(kv.at("sweep") == "tau");
  const auto cfg = cli::build_experiment_config(kv);
  CHECK(cfg.m == 64);
  CHECK(cfg.trials == 5000);
  CHECK(cfg.beta_draws == 10000);

  auto with_var = kv;
  with_var["sigma_sq"] = "1e-4";
  CHECK(cli::build_experiment_config(with_var).fixed.sigma == doctest::Approx(0.01));
  auto var_sweep = kv;
  var_sweep["sweep"] = "sigma_sq";
  var_sweep["values"] = "1e-6,1e-4";
  const auto vs = cli::build_experiment_config(var_sweep);
  CHECK(vs.sweep == SweepKind::Sigma);
  CHECK(vs.sweep_values[1] == doctest::Approx(0.01));

  auto unknown = kv;
  unknown["colour"] = "red";
  CHECK_THROWS_AS(cli::build_experiment_config(unknown), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_key_values("novalue\n", "test"), std::invalid_argument);
}

TEST_CASE("sweep subcommand") {
  TempDir tmp;
  const fs::path config = tmp.path / "sweep.cfg";
  {
    std::ofstream out(config);
    out << "# small tau sweep\nm=64\nsweep=tau\nvalues=1,2,4\ns_min=0.5\ns_max=1\nsigma_sq=1e-4\n"
           "trials=100\nbeta_draws=200\nseed=5\n";
  }

  SUBCASE("csv schema, plot script and determinism") {
    const fs::path a = tmp.path / "a.csv", b = tmp.path / "b.csv", plot = tmp.path / "a.gp";
    auto r = run({"sweep", "--config", config.string(), "--output", a.string(), "--plot", plot.string(),
                  "--threads", "1"});
    REQUIRE(r.code == 0);
    r = run({"sweep", "--config", config.string(), "--output", b.string(), "--threads", "3"});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(a);
    CHECK(csv == slurp(b));
    CHECK(csv.substr(0, csv.find('\n')) == cli::kCsvHeader);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("\ntau,1,64,128,1,0.5,1,0.01,") != std::string::npos);
    const std::string gp = slurp(plot);
    for (const char* col : {"empirical_prob", "thm1_prob", "thm2_prob", "param_value"}) {
      CHECK(gp.find(col) != std::string::npos);
    }
    CHECK(gp.find(a.string()) != std::string::npos);
  }
  SUBCASE("--set and --seed override the file") {
    const fs::path a = tmp.path / "a.csv", b = tmp.path / "b.csv";
    REQUIRE(run({"sweep", "--config", config.string(), "--set", "values=2", "--output", a.string()}).code == 0);
    REQUIRE(run({"sweep", "--config", config.string(), "--set", "values=2", "--seed", "6", "--output",
                 b.string()})
                .code == 0);
    const std::string ca = slurp(a);
    CHECK(std::count(ca.begin(), ca.end(), '\n') == 2);
    CHECK(ca != slurp(b));
  }
  SUBCASE("invalid config leaves no output") {
    const fs::path out = tmp.path / "bad.csv";
    auto r = run({"sweep", "--config", config.string(), "--set", "trials=0", "--output", out.string()});
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(out));
    r = run({"sweep", "--config", config.string(), "--set", "bogus=1", "--output", out.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);
    CHECK_FALSE(fs::exists(out));
  }
  SUBCASE("unwritable output path") {
    const fs::path out = tmp.path / "missing_dir" / "x.csv";
    const auto r = run({"sweep", "--config", config.string(), "--output", out.string()});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(out));
    CHECK(fs::is_empty(tmp.path) == false);
    for (const auto& entry : fs::directory_iterator(tmp.path)) {
      CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
    }
  }
  SUBCASE("missing config file") {
    const auto r = run({"sweep", "--config", (tmp.path / "nope.cfg").string(), "--output",
                        (tmp.path / "o.csv").string()});
    CHECK(r.code != 0);
  }
}

TEST_CASE("format_real round-trips") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 0.031250, 123456.789}) {
    CHECK(std::stod(cli::format_real(v)) == v);
  }
  CHECK(cli::format_real(0.1) == "0.1");
}
