#include "rivol/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "rivol/errors.hpp"
#include "rivol/report_io.hpp"
#include "rivol/rng.hpp"

namespace rivol {

namespace fs = std::filesystem;

std::string version_string() { return "0.1.0"; }

void RunConfig::validate() const {
  if (q_list.empty()) throw config_error("q list is empty");
  for (double q : q_list)
    if (!(q > 0.0)) throw config_error("q values must be positive");
  if (bootstrap_replicas < 1) throw config_error("replicas must be >= 1");
  if (bins_per_decade < 1) throw config_error("bins_per_decade must be >= 1");
  if (std::fabs(significance - 0.05) > 1e-12)
    throw config_error("only significance 0.05 is supported");
  parse_session_spec(session_windows);
}

std::string RunConfig::canonical_text() const {
  std::ostringstream os;
  os << "version=" << version_string() << "\n";
  os << "kind=" << (kind == VolatilityKind::R1 ? "R1" : "R2") << "\n";
  os << "session=";
  for (std::size_t i = 0; i < session_windows.size(); ++i)
    os << (i ? "," : "") << session_windows[i];
  os << "\nq_list=";
  char buf[32];
  for (std::size_t i = 0; i < q_list.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g", q_list[i]);
    os << (i ? "," : "") << buf;
  }
  os << "\nsignificance=0.05\n";
  os << "bins_per_decade=" << bins_per_decade << "\n";
  os << "replicas=" << bootstrap_replicas << "\n";
  os << "seed=" << seed << "\n";
  for (const auto& p : inputs) os << "input=" << p.filename().string() << "\n";
  return os.str();
}

std::uint64_t RunConfig::config_hash() const {
  // FNV-1a 64 over the canonical rendering.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "input") {
    cfg.inputs.emplace_back(value);
  } else if (key == "session") {
    cfg.session_windows = split(value, ',');
  } else if (key == "kind") {
    if (value == "R1") cfg.kind = VolatilityKind::R1;
    else if (value == "R2") cfg.kind = VolatilityKind::R2;
    else throw config_error("kind must be R1 or R2, got " + value);
  } else if (key == "q_list") {
    cfg.q_list.clear();
    for (const auto& v : split(value, ',')) cfg.q_list.push_back(std::stod(v));
  } else if (key == "significance") {
    cfg.significance = std::stod(value);
  } else if (key == "bins_per_decade") {
    cfg.bins_per_decade = std::stoi(value);
  } else if (key == "replicas") {
    cfg.bootstrap_replicas = static_cast<std::size_t>(std::stoull(value));
  } else if (key == "seed") {
    cfg.seed = std::stoull(value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else {
    throw config_error("unknown config key: " + key);
  }
}

RunConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw config_error("cannot open config file: " + file.string());
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("config line missing '=': " + line, lineno);
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (const char* env = std::getenv("RIVOL_OUTPUT_DIR")) cfg.output_dir = env;
  return cfg;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

namespace {

std::string csv_of(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

std::string q_tag(double q) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", q);
  std::string s = buf;
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

InstrumentResult analyze_instrument(const RunConfig& cfg, const fs::path& input,
                                    const fs::path& outdir, ordered_json& index) {
  InstrumentResult res;
  res.name = input.stem().string();
  const fs::path dir = outdir / res.name;

  std::ifstream in(input);
  if (!in) throw error("cannot open " + input.string());
  const TickSeries ticks = parse_ticks(in, parse_session_spec(cfg.session_windows));

  const VolatilitySeries raw = cfg.kind == VolatilityKind::R1
                                   ? minute_close_volatility(ticks)
                                   : realized_volatility(ticks);
  const VolatilitySeries vol = normalize(deseasonalize(raw, intraday_pattern(raw)));

  ordered_json report;
  report["instrument"] = res.name;
  report["version"] = version_string();
  report["config_hash"] = cfg.config_hash();
  report["seed"] = cfg.seed;
  report["kind"] = cfg.kind == VolatilityKind::R1 ? "R1" : "R2";
  report["n_minutes"] = vol.size();
  report["gaps"] = raw.gaps;

  // Per-q intervals, scaled PDFs (Fig. 1 data) and CDFs.
  for (double q : cfg.q_list) {
    try {
      IntervalSample s = extract_intervals(vol, q);
      write_file_atomic(dir / ("intervals_q" + q_tag(q) + ".csv"),
                        csv_of([&](std::ostream& o) { write_intervals_csv(o, s); }));
      write_file_atomic(dir / ("pdf_q" + q_tag(q) + ".csv"),
                        csv_of([&](std::ostream& o) {
                          write_pdf_csv(o, q, empirical_pdf(s, cfg.bins_per_decade));
                        }));
      write_file_atomic(dir / ("cdf_q" + q_tag(q) + ".csv"),
                        csv_of([&](std::ostream& o) {
                          write_cdf_csv(o, q, empirical_cdf(s, true));
                        }));
      res.intervals.emplace(q, std::move(s));
    } catch (const insufficient_sample_error& e) {
      report["skipped_q"].push_back({{"q", q}, {"reason", e.what()}});
    }
  }
  const double q_lo = *std::min_element(cfg.q_list.begin(), cfg.q_list.end());
  const double q_hi = *std::max_element(cfg.q_list.begin(), cfg.q_list.end());

  // Scaling KS test between the extreme thresholds (Table 1 analogue).
  if (res.intervals.count(q_lo) && res.intervals.count(q_hi) && q_lo != q_hi) {
    res.scaling = scaling_test(res.intervals.at(q_lo), res.intervals.at(q_hi),
                               cfg.significance);
    report["scaling_test"] = to_json(res.scaling);
  }

  // Stretched exponential fits per q (Fig. 2 data).
  res.gamma_scan = gamma_vs_q(vol, cfg.q_list, cfg.bins_per_decade);
  {
    std::ostringstream os;
    os << "q,gamma,gamma_stderr\n";
    ordered_json fits = ordered_json::array();
    char buf[96];
    for (const auto& pt : res.gamma_scan) {
      if (pt.skipped) continue;
      std::snprintf(buf, sizeof(buf), "%.6g,%.17g,%.17g", pt.q, pt.fit.gamma, 0.0);
      os << buf << '\n';
      fits.push_back(to_json(pt.fit, pt.n_intervals));
    }
    write_file_atomic(dir / "gamma_vs_q.csv", os.str());
    report["se_fits"] = fits;
  }

  // Bootstrap goodness-of-fit at the extreme thresholds (Table 2 analogue).
  ordered_json gof_json = ordered_json::array();
  for (double q : {q_lo, q_hi}) {
    const auto it = res.intervals.find(q);
    if (it == res.intervals.end()) continue;
    for (StatisticKind kind : {StatisticKind::KS, StatisticKind::KSW}) {
      try {
        const GofReport g = bootstrap_pvalue(
            it->second, cfg.bootstrap_replicas, kind,
            Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(q * 1000) +
                                           (kind == StatisticKind::KSW ? 1 : 0)),
            cfg.bins_per_decade);
        res.gof.push_back(g);
        gof_json.push_back(to_json(g));
      } catch (const error& e) {
        gof_json.push_back({{"q", q}, {"statistic_kind", to_string(kind)},
                            {"error", e.what()}});
      }
    }
    if (q_lo == q_hi) break;
  }
  report["goodness_of_fit"] = gof_json;

  // Conditional PDFs at the smallest threshold (Fig. 3 data).
  if (res.intervals.count(q_lo)) {
    try {
      res.conditional = conditional_pdf_set(res.intervals.at(q_lo), cfg.bins_per_decade);
      std::ostringstream os;
      os << "q,quartile,x,density\n";
      char buf[96];
      for (int k = 0; k < 4; ++k)
        for (const auto& p : res.conditional.pdfs[k].pdf_points) {
          std::snprintf(buf, sizeof(buf), "%.6g,%d,%.17g,%.17g", q_lo, k + 1, p.x, p.density);
          os << buf << '\n';
        }
      write_file_atomic(dir / "conditional_pdf.csv", os.str());
    } catch (const insufficient_sample_error& e) {
      report["conditional_skipped"] = e.what();
    }
  }

  // DFA of the volatility series with crossover (Fig. 4 data).
  res.vol_dfa = detect_crossover(dfa_fluctuation(vol.values, default_scales(vol.size())));
  {
    std::ostringstream os;
    os << "l,F\n";
    char buf[64];
    for (std::size_t i = 0; i < res.vol_dfa.scales.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g", res.vol_dfa.scales[i],
                    res.vol_dfa.fluctuation[i]);
      os << buf << '\n';
    }
    write_file_atomic(dir / "dfa_volatility.csv", os.str());
    report["dfa_volatility"] = to_json(res.vol_dfa);
  }

  // DFA of the interval sequences per q (Fig. 5 data).
  res.interval_dfa = alpha_vs_q(vol, cfg.q_list);
  {
    ordered_json arr = ordered_json::array();
    std::ostringstream os;
    os << "q,l,F\n";
    char buf[96];
    for (const auto& pt : res.interval_dfa) {
      if (pt.skipped) continue;
      for (std::size_t i = 0; i < pt.report.scales.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6g,%d,%.17g", pt.q, pt.report.scales[i],
                      pt.report.fluctuation[i]);
        os << buf << '\n';
      }
      ordered_json j = to_json(pt.report);
      j["q"] = pt.q;
      j["n_intervals"] = pt.n_intervals;
      arr.push_back(j);
    }
    write_file_atomic(dir / "dfa_intervals.csv", os.str());
    report["dfa_intervals"] = arr;
  }

  write_file_atomic(dir / "report.json", render_json(report));

  index["instruments"].push_back(ordered_json{
      {"name", res.name},
      {"report", res.name + "/report.json"},
      {"figure_1_pdf", res.name + "/pdf_q*.csv"},
      {"table_1_scaling_test", res.name + "/report.json#scaling_test"},
      {"figure_2_gamma_vs_q", res.name + "/gamma_vs_q.csv"},
      {"table_2_goodness_of_fit", res.name + "/report.json#goodness_of_fit"},
      {"figure_3_conditional_pdf", res.name + "/conditional_pdf.csv"},
      {"figure_4_dfa_volatility", res.name + "/dfa_volatility.csv"},
      {"figure_5_dfa_intervals", res.name + "/dfa_intervals.csv"},
  });
  return res;
}

}  // namespace

RunResult run_analysis(const RunConfig& config) {
  config.validate();
  if (config.inputs.empty()) throw config_error("no input files");
  const fs::path outdir = config.output_dir;
  fs::create_directories(outdir);

  ordered_json index;
  index["version"] = version_string();
  index["config_hash"] = config.config_hash();
  index["seed"] = config.seed;
  index["config"] = config.canonical_text();
  index["instruments"] = ordered_json::array();

  RunResult result;
  for (const auto& input : config.inputs) {
    try {
      result.instruments.push_back(analyze_instrument(config, input, outdir, index));
    } catch (const std::exception& e) {
      InstrumentResult failed;
      failed.name = input.stem().string();
      failed.failed = true;
      failed.error_message = e.what();
      result.instruments.push_back(failed);
      result.any_hard_error = true;
      index["instruments"].push_back(
          ordered_json{{"name", failed.name}, {"error", failed.error_message}});
    }
  }

  // Cross-stock similarity at the smallest threshold (Fig. 3(b) analogue).
  if (result.instruments.size() >= 2) {
    const double q_lo = *std::min_element(config.q_list.begin(), config.q_list.end());
    std::vector<std::pair<std::string, IntervalSample>> samples;
    for (const auto& inst : result.instruments) {
      const auto it = inst.intervals.find(q_lo);
      if (!inst.failed && it != inst.intervals.end())
        samples.emplace_back(inst.name, it->second);
    }
    if (samples.size() >= 2) {
      std::ostringstream os;
      os << "a,b,ks,cv,verdict\n";
      char buf[64];
      for (const auto& cell : cross_stock_collapse(samples, config.significance)) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", cell.ks, cell.cv);
        os << cell.a << ',' << cell.b << ',' << buf << ',' << to_string(cell.verdict) << '\n';
      }
      write_file_atomic(outdir / "cross_stock.csv", os.str());
      index["cross_stock"] = "cross_stock.csv";
    }
  }

  write_file_atomic(outdir / "index.json", render_json(index));
  return result;
}

std::vector<CrossStockCell> cross_stock_collapse(
    const std::vector<std::pair<std::string, IntervalSample>>& samples, double alpha) {
  if (samples.size() < 2) throw config_error("cross_stock_collapse needs >= 2 instruments");
  std::vector<CrossStockCell> out;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const KSReport r = scaling_test(samples[i].second, samples[j].second, alpha);
      out.push_back({samples[i].first, samples[j].first, r.statistic, r.critical_value,
                     r.verdict});
    }
  return out;
}

}  // namespace rivol
