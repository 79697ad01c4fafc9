#pragma once

/**
 * @file io.hpp
 * @brief CSV and JSON serialization of sequences, sampled functions,
 *        decompositions and per-level tables.
 *
 * CSV schemas: `index,value` (sequences, signals), `x,value` (sampled
 * functions), `level,kind,index,value` (decompositions), `level,index,value`
 * (per-level coefficient tables). Numbers are printed with "%.17g", so output
 * is bit-identical across runs and round-trips exactly.
 *
 * Needs nlohmann/json (`json.hpp`) on the include path.
 */

#include <cctype>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ripplet/biorthogonal.hpp"
#include "ripplet/error.hpp"
#include "ripplet/filterbank.hpp"
#include "ripplet/laurent.hpp"
#include "ripplet/sampled.hpp"

namespace ripplet::io {

using json = nlohmann::ordered_json;

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw domain_error("unknown format '" + s + "' (expected csv or json)");
}

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Parameters echoed into every JSON artifact.
struct Metadata {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> mu;
  std::optional<int> k;
  std::optional<int> K;
  std::optional<Convention> convention;
};

inline json to_json(const Convention& c) {
  return json{{"analysis_gain", c.analysis_gain},
              {"synthesis_gain", c.synthesis_gain},
              {"highpass_sign", c.highpass_sign},
              {"dual_highpass_sign", c.dual_highpass_sign},
              {"highpass_shift", c.highpass_shift}};
}

inline json to_json(const Metadata& md) {
  json j = json::object();
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  put("n", md.n);
  put("m", md.m);
  put("mu", md.mu);
  put("k", md.k);
  put("K", md.K);
  j["convention"] = md.convention ? to_json(*md.convention) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// writers

inline void write_sequence_csv(std::ostream& os, const CoeffSeq& s) {
  os << "index,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) os << s.first() + static_cast<long>(i) << ',' << num(s.values()[i]) << '\n';
}

inline void write_signal_csv(std::ostream& os, const Signal& s) {
  os << "index,value\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    os << s.start + static_cast<long>(i) << ',' << num(s.samples[i]) << '\n';
}

inline void write_sampled_csv(std::ostream& os, const SampledFunction& f) {
  os << "x,value\n";
  for (std::size_t i = 0; i < f.values.size(); ++i)
    os << num(f.x_at(f.start + static_cast<long>(i))) << ',' << num(f.values[i]) << '\n';
}

/// Several sampled functions on one grid, one column each.
inline void write_sampled_columns_csv(std::ostream& os, const std::vector<std::string>& names,
                                      const std::vector<SampledFunction>& fs) {
  if (fs.empty()) return;
  long lo = fs.front().start, hi = fs.front().last_index();
  for (const auto& f : fs) {
    require_same_grid(fs.front(), f);
    if (f.empty()) continue;
    lo = std::min(lo, f.start);
    hi = std::max(hi, f.last_index());
  }
  os << 'x';
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  for (long i = lo; i <= hi; ++i) {
    os << num(fs.front().x_at(i));
    for (const auto& f : fs) os << ',' << num(f.sample(i));
    os << '\n';
  }
}

inline void write_decomposition_csv(std::ostream& os, const Decomposition& d) {
  os << "level,kind,index,value\n";
  auto rows = [&](int level, const char* kind, const Signal& s) {
    for (std::size_t i = 0; i < s.samples.size(); ++i)
      os << level << ',' << kind << ',' << s.start + static_cast<long>(i) << ',' << num(s.samples[i]) << '\n';
  };
  rows(d.base_level, "approx", d.approx);
  for (int m = d.base_level; m < d.top_level; ++m) rows(m, "detail", d.detail_at(m));
}

/// Per-level coefficient table in long form.
inline void write_level_table_csv(std::ostream& os, const std::map<int, CoeffSeq>& table) {
  os << "level,index,value\n";
  for (const auto& [level, s] : table)
    for (std::size_t i = 0; i < s.size(); ++i)
      os << level << ',' << s.first() + static_cast<long>(i) << ',' << num(s.values()[i]) << '\n';
}

inline json sequence_json(const CoeffSeq& s) {
  return json{{"offset", s.first()}, {"values", std::vector<double>(s.values().begin(), s.values().end())}};
}

inline json signal_json(const Signal& s) { return json{{"start", s.start}, {"values", s.samples}}; }

inline json sampled_json(const SampledFunction& f, const Metadata& md) {
  json j{{"metadata", to_json(md)}, {"grid_level", f.level}, {"step", f.step()}, {"start", f.start}};
  j["x"] = json::array();
  for (long i = f.start; i <= f.last_index(); ++i) j["x"].push_back(f.x_at(i));
  j["values"] = f.values;
  return j;
}

inline json decomposition_json(const Decomposition& d, const Metadata& md) {
  json j{{"metadata", to_json(md)},
         {"family", to_string(d.family.kind())},
         {"base_level", d.base_level},
         {"top_level", d.top_level},
         {"approx", signal_json(d.approx)}};
  j["details"] = json::array();
  for (int m = d.base_level; m < d.top_level; ++m) {
    json e = signal_json(d.detail_at(m));
    e["level"] = m;
    j["details"].push_back(std::move(e));
  }
  return j;
}

inline json level_table_json(const std::map<int, CoeffSeq>& table, const Metadata& md) {
  json j{{"metadata", to_json(md)}, {"levels", json::array()}};
  for (const auto& [level, s] : table) {
    json e = sequence_json(s);
    e["level"] = level;
    j["levels"].push_back(std::move(e));
  }
  return j;
}

/// Pretty JSON with a trailing newline; numbers use the same 17-digit form as CSV.
inline void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// readers

namespace detail {

inline bool looks_like_json(std::istream& is) {
  while (is && std::isspace(is.peek())) is.get();
  const int c = is.peek();
  return c == '[' || c == '{';
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  }
  return out;
}

inline long to_long(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw io_error("line " + std::to_string(line) + ": expected an integer, got '" + s + "'");
  }
}

inline double to_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw io_error("line " + std::to_string(line) + ": expected a number, got '" + s + "'");
  }
}

/// Reads data rows after a header that must equal `header`.
inline std::vector<std::vector<std::string>> read_csv_rows(std::istream& is, const std::vector<std::string>& header) {
  std::string line;
  std::size_t no = 0;
  bool have_header = false;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        throw io_error("line " + std::to_string(no) + ": expected CSV header '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != header.size())
      throw io_error("line " + std::to_string(no) + ": expected " + std::to_string(header.size()) + " fields");
    cells.push_back(std::to_string(no));
    rows.push_back(std::move(cells));
  }
  if (!have_header) throw io_error("missing CSV header");
  return rows;
}

/// Dense signal from (index, value) pairs; gaps are zero, duplicates rejected.
inline Signal assemble_signal(const std::vector<std::pair<long, double>>& pts) {
  if (pts.empty()) return {};
  long lo = pts.front().first, hi = lo;
  for (const auto& p : pts) {
    lo = std::min(lo, p.first);
    hi = std::max(hi, p.first);
  }
  Signal s{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  std::vector<bool> seen(s.samples.size(), false);
  for (const auto& [i, v] : pts) {
    const auto k = static_cast<std::size_t>(i - lo);
    if (seen[k]) throw io_error("duplicate index " + std::to_string(i));
    seen[k] = true;
    s.samples[k] = v;
  }
  return s;
}

inline json parse_json(std::istream& is) {
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw io_error(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

/// CSV `index,value` or a JSON array of {"index", "value"} objects.
inline Signal read_signal(std::istream& is) {
  std::vector<std::pair<long, double>> pts;
  if (detail::looks_like_json(is)) {
    const json j = detail::parse_json(is);
    if (!j.is_array()) throw io_error("JSON signal must be an array of {index, value}");
    for (const auto& e : j) {
      if (!e.is_object() || !e.contains("index") || !e.contains("value") || !e["index"].is_number_integer() ||
          !e["value"].is_number())
        throw io_error("JSON signal entries need an integer 'index' and a numeric 'value'");
      pts.emplace_back(e["index"].get<long>(), e["value"].get<double>());
    }
  } else {
    for (const auto& r : detail::read_csv_rows(is, {"index", "value"})) {
      const std::size_t line = std::stoul(r[2]);
      pts.emplace_back(detail::to_long(r[0], line), detail::to_double(r[1], line));
    }
  }
  return detail::assemble_signal(pts);
}

inline std::map<int, CoeffSeq> read_level_table(std::istream& is) {
  std::map<int, CoeffSeq> out;
  if (detail::looks_like_json(is)) {
    const json j = detail::parse_json(is);
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array()) throw io_error("expected a 'levels' array");
    for (const auto& e : j["levels"]) {
      try {
        out[e.at("level").get<int>()] = CoeffSeq::raw(e.at("offset").get<long>(), e.at("values").get<std::vector<double>>());
      } catch (const json::exception& ex) {
        throw io_error(std::string("malformed level entry: ") + ex.what());
      }
    }
    return out;
  }
  std::map<int, std::vector<std::pair<long, double>>> pts;
  for (const auto& r : detail::read_csv_rows(is, {"level", "index", "value"})) {
    const std::size_t line = std::stoul(r[3]);
    pts[static_cast<int>(detail::to_long(r[0], line))].emplace_back(detail::to_long(r[1], line),
                                                                 detail::to_double(r[2], line));
  }
  for (const auto& [level, p] : pts) {
    Signal s = detail::assemble_signal(p);
    out[level] = CoeffSeq::raw(s.start, std::move(s.samples));
  }
  return out;
}

/// Decomposition contents as stored on disk, before a filter family is attached.
struct DecompositionData {
  std::optional<int> base_level;
  std::optional<int> top_level;
  std::optional<std::string> family;
  Signal approx;
  std::map<int, Signal> details;
};

inline DecompositionData read_decomposition(std::istream& is) {
  DecompositionData d;
  if (detail::looks_like_json(is)) {
    const json j = detail::parse_json(is);
    try {
      d.base_level = j.at("base_level").get<int>();
      d.top_level = j.at("top_level").get<int>();
      if (j.contains("family")) d.family = j["family"].get<std::string>();
      d.approx = {j.at("approx").at("start").get<long>(), j.at("approx").at("values").get<std::vector<double>>()};
      for (const auto& e : j.at("details"))
        d.details[e.at("level").get<int>()] = {e.at("start").get<long>(), e.at("values").get<std::vector<double>>()};
    } catch (const json::exception& ex) {
      throw io_error(std::string("malformed decomposition: ") + ex.what());
    }
    return d;
  }
  std::vector<std::pair<long, double>> approx;
  std::map<int, std::vector<std::pair<long, double>>> det;
  for (const auto& r : detail::read_csv_rows(is, {"level", "kind", "index", "value"})) {
    const std::size_t line = std::stoul(r[4]);
    const int level = static_cast<int>(detail::to_long(r[0], line));
    const long idx = detail::to_long(r[2], line);
    const double v = detail::to_double(r[3], line);
    if (r[1] == "approx") {
      if (d.base_level && *d.base_level != level) throw dimension_error("approximation rows carry different levels");
      d.base_level = level;
      approx.emplace_back(idx, v);
    } else if (r[1] == "detail") {
      det[level].emplace_back(idx, v);
    } else {
      throw io_error("line " + std::to_string(line) + ": kind must be approx or detail");
    }
  }
  d.approx = detail::assemble_signal(approx);
  for (const auto& [level, p] : det) d.details[level] = detail::assemble_signal(p);
  return d;
}

/// Attaches a family; every level in [base, top) gets a (possibly empty) detail channel.
inline Decomposition to_decomposition(const DecompositionData& d, int base, int top, const FilterBankFamily& family) {
  if (top <= base) throw dimension_error("top level must exceed base level");
  if (d.base_level && *d.base_level != base) throw dimension_error("approximation level does not match the base level");
  for (const auto& [level, s] : d.details)
    if (level < base || level >= top)
      throw dimension_error("detail level " + std::to_string(level) + " outside [" + std::to_string(base) + ", " +
                            std::to_string(top) + ")");
  Decomposition out{base, top, d.approx, std::vector<Signal>(static_cast<std::size_t>(top - base)), family,
                    family.convention()};
  for (const auto& [level, s] : d.details) out.details[static_cast<std::size_t>(level - base)] = s;
  return out;
}

}  // namespace ripplet::io
