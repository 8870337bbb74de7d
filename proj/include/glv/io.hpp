#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "glv/distfit.hpp"
#include "glv/metrics.hpp"
#include "glv/sweep.hpp"
#include "glv/types.hpp"

namespace glv {

// CSV and config-file plumbing. All CSV output is header-first, UTF-8 with
// '\n' line endings, and doubles are printed round-trippably so rereading a
// file reproduces the exact values.

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Written once, atomically: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

// rank,wealth,income with rank 1 the wealthiest agent
inline std::string wealth_csv(std::span<const double> wealth, std::span<const double> income) {
  std::vector<std::size_t> order(wealth.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (wealth[a] != wealth[b]) return wealth[a] > wealth[b];
    return a < b;
  });
  std::string out = "rank,wealth,income\n";
  for (std::size_t r = 0; r < order.size(); ++r) {
    out += std::to_string(r + 1);
    out += ',';
    out += format_double(wealth[order[r]]);
    out += ',';
    out += format_double(income.empty() ? 0.0 : income[order[r]]);
    out += '\n';
  }
  return out;
}

inline std::string aggregate_csv(std::span<const AggregatePoint> series) {
  std::string out = "t,sum_wealth,sum_consumption,sum_income,realized_r\n";
  for (std::size_t t = 0; t < series.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += format_double(series[t].sum_wealth);
    out += ',';
    out += format_double(series[t].sum_consumption);
    out += ',';
    out += format_double(series[t].sum_income);
    out += ',';
    out += format_double(series[t].realized_r);
    out += '\n';
  }
  return out;
}

inline std::string sweep_csv(const SweepTable& table) {
  std::string out =
      "rho,v,seed_count,gini_wealth,gini_income,decile_wealth,decile_income,"
      "poverty_wealth,poverty_income,alpha_wealth,alpha_defined\n";
  for (const SweepRow& row : table.rows) {
    out += format_double(row.rho);
    out += ',';
    out += format_double(row.v);
    out += ',';
    out += std::to_string(row.seed_count);
    out += ',';
    out += format_double(row.gini_wealth);
    out += ',';
    out += format_double(row.gini_income);
    out += ',';
    out += format_double(row.decile_wealth);
    out += ',';
    out += format_double(row.decile_income);
    out += ',';
    out += format_double(row.poverty_wealth);
    out += ',';
    out += format_double(row.poverty_income);
    out += ',';
    if (row.alpha_wealth) out += format_double(*row.alpha_wealth);
    out += ',';
    out += row.alpha_defined ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline std::string histogram_csv(const Histogram& hist) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    out += format_double(hist.bin_edges[b]);
    out += ',';
    out += format_double(hist.bin_edges[b + 1]);
    out += ',';
    out += format_double(hist.counts[b]);
    out += '\n';
  }
  return out;
}

inline std::string lv_trajectory_csv(std::span<const double> times,
                                     std::span<const std::pair<double, double>> states) {
  std::string out = "t,x,y\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    out += format_double(times[i]);
    out += ',';
    out += format_double(states[i].first);
    out += ',';
    out += format_double(states[i].second);
    out += '\n';
  }
  return out;
}

inline std::string column_csv(const std::string& header, std::span<const double> values) {
  std::string out = header + "\n";
  for (double v : values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV readers
// ---------------------------------------------------------------------------

namespace io_detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline bool parse_double(const std::string& s, double& out) {
  const std::string t = strip(s);
  if (t.empty()) return false;
  if (t == "inf") { out = std::numeric_limits<double>::infinity(); return true; }
  if (t == "-inf") { out = -std::numeric_limits<double>::infinity(); return true; }
  if (t == "nan") { out = std::numeric_limits<double>::quiet_NaN(); return true; }
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

}  // namespace io_detail

// Reads one named column of a header-first CSV; a headerless single-column
// file of numbers is also accepted.
inline std::vector<double> read_csv_column(const std::filesystem::path& path,
                                           const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw EmptyInput();
  std::vector<double> values;
  double value;
  if (io_detail::parse_double(line, value)) {
    values.push_back(value);
    while (std::getline(in, line)) {
      if (io_detail::strip(line).empty()) continue;
      if (!io_detail::parse_double(line, value)) {
        throw ConfigError("bad number in " + path.string() + ": " + line);
      }
      values.push_back(value);
    }
    return values;
  }
  const auto header = io_detail::split_csv_line(io_detail::strip(line));
  std::size_t index = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (io_detail::strip(header[i]) == column) index = i;
  }
  if (index == header.size()) {
    throw ConfigError("column '" + column + "' not found in " + path.string());
  }
  while (std::getline(in, line)) {
    if (io_detail::strip(line).empty()) continue;
    const auto fields = io_detail::split_csv_line(line);
    if (fields.size() <= index || !io_detail::parse_double(fields[index], value)) {
      throw ConfigError("bad row in " + path.string() + ": " + line);
    }
    values.push_back(value);
  }
  return values;
}

inline Histogram read_histogram_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw EmptyInput();
  if (io_detail::strip(line) != "bin_lo,bin_hi,count") {
    throw ConfigError("histogram CSV must start with header bin_lo,bin_hi,count");
  }
  Histogram hist;
  while (std::getline(in, line)) {
    if (io_detail::strip(line).empty()) continue;
    const auto fields = io_detail::split_csv_line(line);
    double lo, hi, count;
    if (fields.size() != 3 || !io_detail::parse_double(fields[0], lo) ||
        !io_detail::parse_double(fields[1], hi) || !io_detail::parse_double(fields[2], count)) {
      throw ConfigError("bad histogram row: " + line);
    }
    if (hist.bin_edges.empty()) {
      hist.bin_edges.push_back(lo);
    } else if (std::fabs(hist.bin_edges.back() - lo) > 1e-9 * std::fabs(lo)) {
      throw ConfigError("histogram bins must be contiguous");
    }
    hist.bin_edges.push_back(hi);
    hist.counts.push_back(count);
  }
  hist.validate();
  return hist;
}

// ---------------------------------------------------------------------------
// Flat `key = value` config files
// ---------------------------------------------------------------------------

inline std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string stripped = io_detail::strip(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
    }
    const std::string key = io_detail::strip(stripped.substr(0, eq));
    const std::string value = io_detail::strip(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
    }
    if (values.count(key) != 0) {
      throw ConfigError("duplicate config key '" + key + "'");
    }
    values[key] = value;
  }
  return values;
}

}  // namespace glv
