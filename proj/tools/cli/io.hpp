#pragma once

#include <string>
#include <utility>
#include <vector>

namespace procyc::cli {

/// Shortest decimal representation that round-trips to the same double
/// (std::to_chars); keeps CSV goldens byte-stable.
std::string fmt(double v);

struct SeriesCsv {
  std::vector<std::string> dates;   // pass-through labels, never parsed
  std::vector<double> values;
};

/// Reads a `date,value` CSV (header required). Malformed rows raise
/// input_error carrying the 1-based line number.
SeriesCsv read_series_csv(const std::string& path);

/// log(p_{t+1} / p_t) of a price column; needs >= 2 strictly positive prices.
std::vector<double> log_returns(const std::vector<double>& prices);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace procyc::cli
