#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rivol {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input bytes (bad CSV row, bad timestamp). Carries the line number.
struct parse_error : error {
  parse_error(const std::string& msg, std::size_t line)
      : error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  std::size_t line;
};

// Well-formed input that violates a data invariant (nonpositive price, ...).
struct data_error : error {
  using error::error;
};

// Too few exceedances / successors to form the requested statistic.
struct insufficient_sample_error : error {
  insufficient_sample_error(const std::string& msg, std::size_t count)
      : error(msg + " (count=" + std::to_string(count) + ")"), count(count) {}
  std::size_t count;
};

struct config_error : error {
  using error::error;
};

struct fit_error : error {
  using error::error;
};

// Zero variance, all-zero pattern, and similar degenerate inputs.
struct degenerate_input_error : error {
  using error::error;
};

struct mismatch_error : error {
  using error::error;
};

}  // namespace rivol
