#pragma once

// Text formats: model JSON, numeric CSV, and number formatting.

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "efgm/error.hpp"
#include "efgm/matrix.hpp"
#include "efgm/representations.hpp"

namespace efgm {

/// Shortest decimal text that reads back to the same double. Negative zero
/// prints as "0".
inline std::string format_shortest(double x) {
  if (x == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

/// 17 significant digits, printf "%.17g".
inline std::string format_17g(double x) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return {buf.data(), static_cast<std::size_t>(n)};
}

inline bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Comma-separated reals, as given to the cdf and density commands.
inline std::vector<double> parse_point(std::string_view text) {
  std::vector<double> out;
  for (std::string_view f : split_fields(text)) {
    double v = 0.0;
    if (!parse_double(f, v)) throw invalid_input("not a number: '" + std::string(f) + "'");
    out.push_back(v);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------
// Model JSON

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw invalid_input(std::string("model is missing field '") + key + "'");
  return j.at(key);
}

inline double require_number(const nlohmann::json& j, const char* key) {
  const auto& v = require_field(j, key);
  if (!v.is_number()) throw invalid_input(std::string("model field '") + key + "' must be a number");
  return v.get<double>();
}

inline std::vector<double> require_values(const nlohmann::json& j) {
  const auto& v = require_field(j, "values");
  if (!v.is_array()) throw invalid_input("model field 'values' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw invalid_input("model field 'values' must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace detail

/// {"type": "theta"|"ndpmf"|"zeta"|"beta"|"madsen", "d": int,
///  "values": [...] | "alpha": x | "beta": x}
inline CopulaModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw invalid_input("model must be a JSON object");
  const auto& type_field = detail::require_field(j, "type");
  if (!type_field.is_string()) throw invalid_input("model field 'type' must be a string");
  const auto& d_field = detail::require_field(j, "d");
  if (!d_field.is_number_integer()) throw invalid_input("model field 'd' must be an integer");
  const int d = d_field.get<int>();
  const std::string type = type_field.get<std::string>();
  if (type == "theta") return ThetaVector(d, detail::require_values(j));
  if (type == "ndpmf") return NdPmf(d, detail::require_values(j));
  if (type == "zeta") return ZetaVector(d, detail::require_values(j));
  if (type == "beta") {
    MixtureModel m{BetaMixer{detail::require_number(j, "alpha")}, d};
    detail::require_dimension(d);
    detail::validate_mixer(m.mixer);
    return m;
  }
  if (type == "madsen") {
    MixtureModel m{MadsenMixer{detail::require_number(j, "beta")}, d};
    detail::require_dimension(d);
    detail::validate_mixer(m.mixer);
    return m;
  }
  throw invalid_input("unknown model type '" + type + "'");
}

/// Accepts inline JSON text or a path to a file holding it.
inline CopulaModel parse_model(const std::string& text_or_path) {
  std::size_t first = text_or_path.find_first_not_of(" \t\r\n");
  const std::string text = (first != std::string::npos && text_or_path[first] == '{')
                               ? text_or_path
                               : read_file(text_or_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input(std::string("model is not valid JSON: ") + e.what());
  }
  return model_from_json(j);
}

inline nlohmann::json model_to_json(const CopulaModel& model) {
  return std::visit(
      [](const auto& m) -> nlohmann::json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ThetaVector>) {
          return {{"type", "theta"}, {"d", m.d()}, {"values", m.values()}};
        } else if constexpr (std::is_same_v<T, NdPmf>) {
          return {{"type", "ndpmf"}, {"d", m.d()}, {"values", m.values()}};
        } else if constexpr (std::is_same_v<T, ZetaVector>) {
          return {{"type", "zeta"}, {"d", m.d()}, {"values", m.values()}};
        } else {
          if (const auto* b = std::get_if<BetaMixer>(&m.mixer)) {
            return {{"type", "beta"}, {"d", m.d}, {"alpha", b->alpha}};
          }
          if (const auto* md = std::get_if<MadsenMixer>(&m.mixer)) {
            return {{"type", "madsen"}, {"d", m.d}, {"beta", md->beta}};
          }
          throw invalid_input("this mixer has no JSON form");
        }
      },
      model);
}

// ---------------------------------------------------------------------------
// CSV

/// Numeric CSV. A first line that does not parse as numbers is taken as a
/// header. Blank lines are skipped; every row must have the same width.
inline Matrix read_csv(std::istream& in, std::vector<std::string>* header = nullptr) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> fields_num;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split_fields(line);
    fields_num.clear();
    bool numeric = true;
    for (std::string_view f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      fields_num.push_back(v);
    }
    if (!numeric) {
      if (rows == 0 && cols == 0) {
        if (header) {
          header->clear();
          for (std::string_view f : fields) header->emplace_back(f);
        }
        cols = fields.size();
        continue;
      }
      throw invalid_input("CSV line " + std::to_string(line_no) + " has a non-numeric field");
    }
    if (cols == 0) cols = fields_num.size();
    if (fields_num.size() != cols) {
      throw invalid_input("CSV line " + std::to_string(line_no) + " has " +
                          std::to_string(fields_num.size()) + " fields, expected " +
                          std::to_string(cols));
    }
    values.insert(values.end(), fields_num.begin(), fields_num.end());
    ++rows;
  }
  if (rows == 0) throw invalid_input("CSV has no data rows");
  Matrix m(rows, cols);
  m.data() = std::move(values);
  return m;
}

inline Matrix read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open file '" + path + "'");
  return read_csv(in);
}

/// Rows of the matrix in "%.17g" text.
inline void write_csv(std::ostream& out, const Matrix& m) {
  std::string line;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) line += ',';
      line += format_17g(m(r, c));
    }
    line += '\n';
    out << line;
  }
}

}  // namespace efgm
