// rivol — return-interval statistics of realized volatility.
//
// Subcommands cover the analysis chain end to end: tick ingestion,
// volatility construction, interval extraction, scaling tests, stretched
// exponential fits, bootstrap goodness-of-fit, conditional PDFs, DFA, and
// surrogate generation. `run-all` produces the full report bundle.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rivol/dfa.hpp"
#include "rivol/errors.hpp"
#include "rivol/intervals.hpp"
#include "rivol/ks.hpp"
#include "rivol/memory_diag.hpp"
#include "rivol/pipeline.hpp"
#include "rivol/report_io.hpp"
#include "rivol/rng.hpp"
#include "rivol/stretched_exp.hpp"
#include "rivol/synth.hpp"
#include "rivol/tick_series.hpp"
#include "rivol/volatility.hpp"

namespace {

using namespace rivol;

VolatilitySeries load_normalized(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  VolatilitySeries vol = read_volatility_csv(in);
  if (vol.stage == Stage::raw) vol = deseasonalize(vol, intraday_pattern(vol));
  if (vol.stage == Stage::deseasonalized) vol = normalize(vol);
  return vol;
}

TickSeries load_ticks(const std::string& path, const std::vector<std::string>& session) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  return parse_ticks(in, parse_session_spec(session));
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Return-interval statistics of realized volatility"};
  app.require_subcommand(1);

  std::vector<std::string> session = {"09:30-11:30", "13:00-15:00"};
  std::string input, output = "-";
  std::string kind = "R2";
  double q = 2.0, q2 = 5.0;
  int bpd = 20;
  std::size_t replicas = 1000, n = 1 << 17;
  std::uint64_t seed = 1;
  std::string stat_kind = "KS";
  std::string stage = "normalized";

  const auto add_io = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input) cmd->add_option("-i,--input", input, "Input file")->required();
    cmd->add_option("-o,--output", output, "Output file ('-' = stdout)");
  };

  auto* ingest = app.add_subcommand("ingest", "Parse and validate a tick CSV");
  add_io(ingest);
  ingest->add_option("--session", session, "Session windows HH:MM-HH:MM");

  auto* volat = app.add_subcommand("volatility", "Tick CSV -> per-minute volatility CSV");
  add_io(volat);
  volat->add_option("--session", session, "Session windows HH:MM-HH:MM");
  volat->add_option("--kind", kind, "R1 or R2")->check(CLI::IsMember({"R1", "R2"}));
  volat->add_option("--stage", stage, "raw|deseasonalized|normalized")
      ->check(CLI::IsMember({"raw", "deseasonalized", "normalized"}));

  auto* intv = app.add_subcommand("intervals", "Volatility CSV -> return intervals for one q");
  add_io(intv);
  intv->add_option("-q", q, "Threshold in units of sigma");

  auto* scal = app.add_subcommand("scaling-test", "Two-sample KS between two thresholds");
  add_io(scal);
  scal->add_option("--q1", q, "First threshold");
  scal->add_option("--q2", q2, "Second threshold");

  auto* fitse = app.add_subcommand("fit-se", "Stretched exponential fit at one q");
  add_io(fitse);
  fitse->add_option("-q", q, "Threshold");
  fitse->add_option("--bins-per-decade", bpd, "Log bins per decade");

  auto* gof = app.add_subcommand("gof", "Bootstrap KS/KSW goodness-of-fit at one q");
  add_io(gof);
  gof->add_option("-q", q, "Threshold");
  gof->add_option("--statistic", stat_kind, "KS or KSW")->check(CLI::IsMember({"KS", "KSW"}));
  gof->add_option("--replicas", replicas, "Bootstrap replicas");
  gof->add_option("--seed", seed, "RNG seed");
  gof->add_option("--bins-per-decade", bpd, "Log bins per decade");

  auto* cond = app.add_subcommand("conditional", "Quartile-conditional interval PDFs");
  add_io(cond);
  cond->add_option("-q", q, "Threshold");
  cond->add_option("--bins-per-decade", bpd, "Log bins per decade");

  auto* dfa_cmd = app.add_subcommand("dfa", "DFA of the volatility series with crossover");
  add_io(dfa_cmd);
  bool dfa_of_intervals = false;
  dfa_cmd->add_flag("--intervals", dfa_of_intervals, "DFA of the interval sequence at -q");
  dfa_cmd->add_option("-q", q, "Threshold (with --intervals)");

  auto* synth = app.add_subcommand("synth", "Generate surrogate data");
  std::string synth_kind = "volatility";
  double hurst = 0.85;
  int days = 10;
  synth->add_option("--kind", synth_kind, "fgn|volatility|ticks")
      ->check(CLI::IsMember({"fgn", "volatility", "ticks"}));
  synth->add_option("--hurst", hurst, "Hurst exponent");
  synth->add_option("-n", n, "Series length (power of two)");
  synth->add_option("--days", days, "Days of ticks (kind=ticks)");
  synth->add_option("--session", session, "Session windows (kind=ticks)");
  synth->add_option("--seed", seed, "RNG seed");
  add_io(synth, /*needs_input=*/false);

  auto* runall = app.add_subcommand("run-all", "Full analysis bundle per instrument");
  std::string config_file;
  std::vector<std::string> inputs;
  std::string outdir;
  std::vector<double> q_list;
  runall->add_option("--config", config_file, "Flat key=value config file");
  runall->add_option("-i,--input", inputs, "Tick CSVs, one per instrument");
  runall->add_option("--out", outdir, "Output directory");
  runall->add_option("--kind", kind, "R1 or R2")->check(CLI::IsMember({"R1", "R2"}));
  runall->add_option("-q,--q-list", q_list, "Thresholds");
  runall->add_option("--replicas", replicas, "Bootstrap replicas");
  runall->add_option("--seed", seed, "RNG seed");
  runall->add_option("--session", session, "Session windows");
  runall->add_option("--bins-per-decade", bpd, "Log bins per decade");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const TickSeries t = load_ticks(input, session);
      std::ostringstream os;
      write_ticks_csv(os, t);
      emit(output, os.str());
      std::cerr << t.size() << " ticks across " << t.dates.size() << " days\n";
    } else if (*volat) {
      const TickSeries t = load_ticks(input, session);
      VolatilitySeries v =
          kind == "R1" ? minute_close_volatility(t) : realized_volatility(t);
      if (stage != "raw") v = deseasonalize(v, intraday_pattern(v));
      if (stage == "normalized") v = normalize(v);
      std::ostringstream os;
      write_volatility_csv(os, v);
      emit(output, os.str());
    } else if (*intv) {
      const IntervalSample s = extract_intervals(load_normalized(input), q);
      std::ostringstream os;
      write_intervals_csv(os, s);
      emit(output, os.str());
    } else if (*scal) {
      const VolatilitySeries vol = load_normalized(input);
      const KSReport r =
          scaling_test(extract_intervals(vol, q), extract_intervals(vol, q2));
      emit(output, render_json(to_json(r)));
    } else if (*fitse) {
      const IntervalSample s = extract_intervals(load_normalized(input), q);
      StretchedExpFit fit = fit_se(fit_pdf(s, bpd));
      fit.q = q;
      fit.mean_interval = s.mean_interval;
      emit(output, render_json(to_json(fit, fit_pdf(s, bpd).pdf_points.size())));
    } else if (*gof) {
      const IntervalSample s = extract_intervals(load_normalized(input), q);
      const GofReport g = bootstrap_pvalue(
          s, replicas, stat_kind == "KSW" ? StatisticKind::KSW : StatisticKind::KS, seed,
          bpd);
      emit(output, render_json(to_json(g)));
    } else if (*cond) {
      const IntervalSample s = extract_intervals(load_normalized(input), q);
      const ConditionalPdfSet set = conditional_pdf_set(s, bpd);
      std::ostringstream os;
      os << "q,quartile,x,density\n";
      char buf[96];
      for (int k = 0; k < 4; ++k)
        for (const auto& p : set.pdfs[k].pdf_points) {
          std::snprintf(buf, sizeof(buf), "%.6g,%d,%.17g,%.17g", q, k + 1, p.x, p.density);
          os << buf << '\n';
        }
      emit(output, os.str());
    } else if (*dfa_cmd) {
      const VolatilitySeries vol = load_normalized(input);
      DFAReport rep;
      if (dfa_of_intervals) {
        const IntervalSample s = extract_intervals(vol, q);
        rep = detect_crossover(dfa_fluctuation(s.intervals, default_scales(s.size())));
      } else {
        rep = detect_crossover(dfa_fluctuation(vol.values, default_scales(vol.size())));
      }
      std::ostringstream os;
      os << "l,F\n";
      char buf[64];
      for (std::size_t i = 0; i < rep.scales.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g", rep.scales[i], rep.fluctuation[i]);
        os << buf << '\n';
      }
      emit(output, os.str());
      std::cerr << render_json(to_json(rep));
    } else if (*synth) {
      std::ostringstream os;
      if (synth_kind == "fgn") {
        os << "value\n";
        for (double v : gen_fgn(hurst, n, seed)) os << v << '\n';
      } else if (synth_kind == "volatility") {
        write_volatility_csv(os, gen_longmemory_volatility(hurst, n, seed));
      } else {
        TickPathSpec spec;
        spec.sessions = parse_session_spec(session);
        spec.days = days;
        spec.seed = seed;
        write_ticks_csv(os, gen_tick_path(spec));
      }
      emit(output, os.str());
    } else if (*runall) {
      RunConfig cfg;
      if (!config_file.empty()) cfg = load_config(config_file);
      for (const auto& i : inputs) cfg.inputs.emplace_back(i);
      if (runall->count("--kind"))
        cfg.kind = kind == "R1" ? VolatilityKind::R1 : VolatilityKind::R2;
      if (!q_list.empty()) cfg.q_list = q_list;
      if (runall->count("--replicas")) cfg.bootstrap_replicas = replicas;
      if (runall->count("--seed")) cfg.seed = seed;
      if (runall->count("--session")) cfg.session_windows = session;
      if (runall->count("--bins-per-decade")) cfg.bins_per_decade = bpd;
      if (!outdir.empty()) cfg.output_dir = outdir;
      if (const char* env = std::getenv("RIVOL_OUTPUT_DIR")) cfg.output_dir = env;
      const RunResult r = run_analysis(cfg);
      for (const auto& inst : r.instruments) {
        if (inst.failed)
          std::cerr << inst.name << ": ERROR " << inst.error_message << '\n';
        else
          std::cerr << inst.name << ": ok\n";
      }
      return r.any_hard_error ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
