#include "rivol/report_io.hpp"

namespace rivol {

ordered_json to_json(const KSReport& r) {
  return ordered_json{{"q_pair", {r.q_a, r.q_b}},
                      {"ks", r.statistic},
                      {"cv", r.critical_value},
                      {"verdict", to_string(r.verdict)},
                      {"m", r.m},
                      {"n", r.n},
                      {"overlap", {r.overlap_lo, r.overlap_hi}}};
}

ordered_json to_json(const GofReport& r) {
  return ordered_json{{"q", r.q},
                      {"statistic_kind", to_string(r.statistic_kind)},
                      {"observed", r.observed},
                      {"p_value", r.p_value},
                      {"replicas", r.replicas},
                      {"discarded", r.discarded},
                      {"seed", r.seed}};
}

ordered_json to_json(const StretchedExpFit& f, std::size_t n_bins) {
  return ordered_json{{"q", f.q},         {"a", f.a},
                      {"b", f.b},         {"gamma", f.gamma},
                      {"fit_error", f.fit_error}, {"n_bins", n_bins},
                      {"gamma_at_bound", f.gamma_at_bound}};
}

ordered_json to_json(const DFAReport& r) {
  return ordered_json{
      {"alpha_small", r.alpha_small},
      {"alpha_large", r.alpha_large},
      {"l_x", r.crossover_scale},
      {"ranges",
       {{r.small_range.first, r.small_range.second},
        {r.large_range.first, r.large_range.second}}},
      {"stderr", {r.alpha_small_stderr, r.alpha_large_stderr}},
      {"degenerate", r.degenerate}};
}

std::string render_json(const ordered_json& j) {
  return j.dump(2) + "\n";
}

}  // namespace rivol
