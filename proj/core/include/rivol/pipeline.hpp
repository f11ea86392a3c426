#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rivol/dfa.hpp"
#include "rivol/intervals.hpp"
#include "rivol/ks.hpp"
#include "rivol/memory_diag.hpp"
#include "rivol/stretched_exp.hpp"
#include "rivol/volatility.hpp"

namespace rivol {

enum class VolatilityKind { R1, R2 };

struct RunConfig {
  std::vector<std::filesystem::path> inputs;  // tick CSVs, one per instrument
  std::vector<std::string> session_windows = {"09:30-11:30", "13:00-15:00"};
  VolatilityKind kind = VolatilityKind::R2;
  std::vector<double> q_list = {2.0, 3.0, 4.0, 5.0};
  double significance = 0.05;
  int bins_per_decade = 20;
  std::size_t bootstrap_replicas = 1000;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";

  void validate() const;
  // Canonical key=value rendering; used for the report header hash.
  std::string canonical_text() const;
  std::uint64_t config_hash() const;
};

// Flat key=value config file; '#' starts a comment. Unknown keys error.
RunConfig load_config(const std::filesystem::path& file);
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);

struct InstrumentResult {
  std::string name;
  bool failed = false;
  std::string error_message;

  std::map<double, IntervalSample> intervals;  // by q
  KSReport scaling;                            // q=2 vs q=5 analogue
  std::vector<GammaVsQPoint> gamma_scan;
  std::vector<GofReport> gof;                  // KS and KSW at q in {2, 5}
  ConditionalPdfSet conditional;               // at smallest q
  DFAReport vol_dfa;
  std::vector<AlphaVsQPoint> interval_dfa;
};

struct RunResult {
  std::vector<InstrumentResult> instruments;
  bool any_hard_error = false;
};

// Full analysis chain per instrument; writes CSVs + one JSON report per
// instrument plus an index.json under config.output_dir. Failures are
// per-instrument and recorded in the result.
RunResult run_analysis(const RunConfig& config);

struct CrossStockCell {
  std::string a;
  std::string b;
  double ks = 0.0;
  double cv = 0.0;
  Verdict verdict = Verdict::no_scaling;
};

// Pairwise two-sample KS on scaled intervals across instruments at one q.
std::vector<CrossStockCell> cross_stock_collapse(
    const std::vector<std::pair<std::string, IntervalSample>>& samples, double alpha = 0.05);

// Atomic text file write (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string version_string();

}  // namespace rivol
