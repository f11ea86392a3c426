#pragma once

#include <string>

#include "rivol/dfa.hpp"
#include "rivol/ks.hpp"
#include "rivol/stretched_exp.hpp"

#include <json.hpp>

namespace rivol {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const KSReport& r);
ordered_json to_json(const GofReport& r);
ordered_json to_json(const StretchedExpFit& f, std::size_t n_bins);
ordered_json to_json(const DFAReport& r);

// Deterministic 2-space-indented rendering with trailing newline.
std::string render_json(const ordered_json& j);

}  // namespace rivol
