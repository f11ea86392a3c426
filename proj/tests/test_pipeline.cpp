#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "rivol/errors.hpp"
#include "rivol/pipeline.hpp"
#include "rivol/synth.hpp"

using namespace rivol;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("rivol_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_synthetic_ticks(const fs::path& dir, const std::string& name,
                               std::uint64_t seed, int days = 30) {
  TickPathSpec spec;
  spec.sessions = parse_session_spec({"09:30-11:30,13:00-15:00"});
  spec.days = days;
  spec.seed = seed;
  spec.tick_return_sigma = 2e-4;
  const TickSeries ts = gen_tick_path(spec);
  const fs::path file = dir / (name + ".csv");
  std::ofstream out(file);
  write_ticks_csv(out, ts);
  return file;
}

std::map<fs::path, std::string> snapshot(const fs::path& dir) {
  std::map<fs::path, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    files[fs::relative(e.path(), dir)] = buf.str();
  }
  return files;
}

}  // namespace

TEST_CASE("config file parsing") {
  const fs::path dir = fresh_dir("cfg");
  const fs::path cfg_file = dir / "run.cfg";
  {
    std::ofstream out(cfg_file);
    out << "# comment line\n"
        << "input = a.csv\n"
        << "input = b.csv\n"
        << "session = 09:30-11:30,13:00-15:00\n"
        << "kind = R1\n"
        << "q_list = 2,3.5\n"
        << "replicas = 50\n"
        << "seed = 9\n"
        << "bins_per_decade = 25\n"
        << "output_dir = " << (dir / "out").string() << "\n";
  }
  const RunConfig cfg = load_config(cfg_file);
  CHECK(cfg.inputs.size() == 2);
  CHECK(cfg.inputs[1] == "b.csv");
  CHECK(cfg.kind == VolatilityKind::R1);
  CHECK(cfg.q_list == std::vector<double>{2.0, 3.5});
  CHECK(cfg.bootstrap_replicas == 50);
  CHECK(cfg.seed == 9);
  CHECK(cfg.bins_per_decade == 25);
  CHECK(cfg.output_dir == dir / "out");
}

TEST_CASE("unknown config keys are rejected") {
  RunConfig cfg;
  CHECK_THROWS_AS(apply_config_line(cfg, "qlist", "2,3"), config_error);
  CHECK_THROWS_AS(apply_config_line(cfg, "kind", "r3"), config_error);
  apply_config_line(cfg, "significance", "0.10");
  cfg.inputs = {"a.csv"};
  CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("output dir environment override") {
  const fs::path dir = fresh_dir("env");
  const fs::path cfg_file = dir / "run.cfg";
  {
    std::ofstream out(cfg_file);
    out << "input = a.csv\noutput_dir = ignored\n";
  }
  setenv("RIVOL_OUTPUT_DIR", (dir / "env_out").c_str(), 1);
  const RunConfig cfg = load_config(cfg_file);
  unsetenv("RIVOL_OUTPUT_DIR");
  CHECK(cfg.output_dir == dir / "env_out");
}

TEST_CASE("config hash is stable and order-sensitive") {
  RunConfig a, b;
  a.inputs = {"x.csv"};
  b.inputs = {"x.csv"};
  CHECK(a.config_hash() == b.config_hash());
  b.seed = 2;
  CHECK(a.config_hash() != b.config_hash());
  CHECK(a.canonical_text() != b.canonical_text());
}

TEST_CASE("write_file_atomic replaces content completely") {
  const fs::path dir = fresh_dir("atomic");
  const fs::path f = dir / "x.txt";
  write_file_atomic(f, "first\n");
  write_file_atomic(f, "s\n");
  std::ifstream in(f);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "s\n");
  // No temp droppings left behind.
  std::size_t count = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++count;
  CHECK(count == 1);
}

TEST_CASE("cross_stock_collapse self comparison is exactly zero") {
  IntervalSample s = make_interval_sample(2.0, {3, 5, 8, 13, 21, 34});
  const auto cells = cross_stock_collapse({{"a", s}, {"b", s}});
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].a == "a");
  CHECK(cells[0].b == "b");
  CHECK(cells[0].ks == 0.0);
  CHECK(cells[0].verdict == Verdict::scaling);
}

TEST_CASE("run_analysis produces the full bundle and isolates failures") {
  const fs::path dir = fresh_dir("run");
  RunConfig cfg;
  cfg.inputs.push_back(write_synthetic_ticks(dir, "alpha", 101));
  cfg.inputs.push_back(dir / "missing.csv");  // must fail in isolation
  cfg.inputs.push_back(write_synthetic_ticks(dir, "beta", 202));
  cfg.q_list = {1.0, 2.0};
  cfg.bootstrap_replicas = 10;
  cfg.output_dir = dir / "out";

  const RunResult res = run_analysis(cfg);
  REQUIRE(res.instruments.size() == 3);
  CHECK_FALSE(res.instruments[0].failed);
  CHECK(res.instruments[1].failed);
  CHECK(!res.instruments[1].error_message.empty());
  CHECK_FALSE(res.instruments[2].failed);
  CHECK(res.any_hard_error);

  const auto& ok = res.instruments[0];
  CHECK(ok.intervals.count(1.0) == 1);
  CHECK(ok.intervals.count(2.0) == 1);
  CHECK(ok.scaling.m > 0);
  CHECK(!ok.gof.empty());
  CHECK(!ok.vol_dfa.scales.empty());

  CHECK(fs::exists(cfg.output_dir / "index.json"));
  CHECK(fs::exists(cfg.output_dir / "alpha" / "report.json"));
  CHECK(fs::exists(cfg.output_dir / "beta" / "report.json"));
  CHECK(fs::exists(cfg.output_dir / "cross_stock.csv"));
  // q tags replace the decimal point.
  CHECK(fs::exists(cfg.output_dir / "alpha" / "intervals_q1.csv"));
}

TEST_CASE("run_analysis is byte-identical across repeated runs") {
  const fs::path dir = fresh_dir("det");
  RunConfig cfg;
  cfg.inputs.push_back(write_synthetic_ticks(dir, "gamma", 77, 20));
  cfg.q_list = {1.0, 1.5};
  cfg.bootstrap_replicas = 5;

  cfg.output_dir = dir / "out1";
  run_analysis(cfg);
  const auto first = snapshot(cfg.output_dir);
  cfg.output_dir = dir / "out2";
  run_analysis(cfg);
  const auto second = snapshot(cfg.output_dir);
  CHECK(first == second);
}

TEST_CASE("cli smoke test") {
  const fs::path dir = fresh_dir("cli");
  const fs::path ticks = write_synthetic_ticks(dir, "smoke", 55, 15);
  const std::string cli = RIVOL_CLI_PATH;

  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " > " + (dir / "stdout.txt").string() +
                        " 2> " + (dir / "stderr.txt").string())
                           .c_str());
  };

  CHECK(run("--help") == 0);
  CHECK(run("ingest --input " + ticks.string() +
            " --session 09:30-11:30,13:00-15:00 --output -") == 0);
  const fs::path vol = dir / "vol.csv";
  CHECK(run("volatility --input " + ticks.string() +
            " --session 09:30-11:30,13:00-15:00 --kind R2 --output " + vol.string()) == 0);
  CHECK(fs::exists(vol));
  CHECK(run("intervals --input " + vol.string() + " -q 1.0 --output " +
            (dir / "iv.csv").string()) == 0);
  CHECK(fs::exists(dir / "iv.csv"));
  CHECK(run("dfa --input " + vol.string() + " --output -") == 0);
  CHECK(run("synth --kind fgn --hurst 0.7 -n 1024 --seed 3 --output -") == 0);
  // Unknown subcommand and missing file exit nonzero.
  CHECK(run("frobnicate") != 0);
  CHECK(run("volatility --input " + (dir / "nope.csv").string() + " --output -") != 0);
}
