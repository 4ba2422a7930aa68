#include "cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "procyc/errors.hpp"

namespace procyc::cli {

std::string fmt(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SeriesCsv read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input CSV: " + path);
  std::string line;
  std::size_t lineno = 0;
  SeriesCsv out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "date,value")
        throw input_error(path + ": line 1: expected header 'date,value', got '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw input_error(path + ": line " + std::to_string(lineno) + ": missing comma");
    const std::string value_str = line.substr(comma + 1);
    double v = 0.0;
    const char* b = value_str.data();
    const char* e = b + value_str.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e || !std::isfinite(v))
      throw input_error(path + ": line " + std::to_string(lineno) + ": bad value '" +
                        value_str + "'");
    out.dates.push_back(line.substr(0, comma));
    out.values.push_back(v);
  }
  if (out.values.empty()) throw input_error(path + ": no data rows");
  return out;
}

std::vector<double> log_returns(const std::vector<double>& prices) {
  if (prices.size() < 2) throw input_error("log_returns: need at least 2 prices");
  std::vector<double> r;
  r.reserve(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    if (!(prices[i] > 0.0) || !(prices[i + 1] > 0.0))
      throw input_error("log_returns: prices must be strictly positive (row " +
                        std::to_string(i + 2) + ")");
    r.push_back(std::log(prices[i + 1] / prices[i]));
  }
  return r;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open output file: " + path);
  out << contents;
  if (!out) throw input_error("failed writing: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace procyc::cli
