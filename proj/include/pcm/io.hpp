#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcm/core.hpp"

namespace pcm {

/// Malformed matrix text. line and column are 1-based; 0 means the location
/// is not known (semantic errors in JSON documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(ErrorCode::ParseError, format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

enum class DocumentFormat { JSON, CSV };

struct MatrixDocument {
  std::optional<ElementLabels> labels;
  ComparisonMatrix matrix;
  std::string source;

  /// Supplied labels, or omega_1 ... omega_n.
  ElementLabels labels_or_default() const {
    return labels ? *labels : ElementLabels::numbered(matrix.size());
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_positive_integer(std::string_view s, double& out) {
  if (s.empty()) return false;
  unsigned long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v == 0) return false;
  out = static_cast<double>(v);
  return true;
}

}  // namespace detail

/// Parses a decimal ("0.25", "5") or a fraction "p/q" with positive integer
/// p and q. Returns nullopt on anything else.
inline std::optional<double> parse_cell(std::string_view text) {
  const auto s = detail::trim(text);
  if (s.empty()) return std::nullopt;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    double p = 0, q = 0;
    if (!detail::parse_positive_integer(detail::trim(s.substr(0, slash)), p) ||
        !detail::parse_positive_integer(detail::trim(s.substr(slash + 1)), q))
      return std::nullopt;
    return p / q;
  }
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

namespace detail {

struct CsvCell {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<CsvCell> split_csv_line(std::string_view line) {
  std::vector<CsvCell> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto end = comma == std::string_view::npos ? line.size() : comma;
    cells.push_back({std::string(trim(line.substr(start, end - start))), start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

inline MatrixDocument parse_csv(std::string_view text) {
  std::optional<ElementLabels> labels;
  Grid grid;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    last_line = line_no;
    const auto cells = split_csv_line(line);

    if (grid.empty() && !labels) {
      bool all_numeric = true;
      for (const auto& c : cells) all_numeric = all_numeric && parse_cell(c.text).has_value();
      if (!all_numeric) {
        std::vector<std::string> names;
        for (const auto& c : cells) names.push_back(c.text);
        labels = ElementLabels(std::move(names));
        width = cells.size();
        continue;
      }
    }

    if (width == 0) width = cells.size();
    if (cells.size() != width)
      throw ParseError("expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()),
                       line_no, 1);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      const auto v = parse_cell(c.text);
      if (!v) throw ParseError("cannot parse number '" + c.text + "'", line_no, c.column);
      row.push_back(*v);
    }
    grid.push_back(std::move(row));
  }
  if (grid.empty()) throw ParseError("no matrix rows found", line_no == 0 ? 1 : line_no, 1);
  if (grid.size() != width)
    throw ParseError("matrix has " + std::to_string(grid.size()) + " rows but " + std::to_string(width) +
                         " columns",
                     last_line, 1);
  auto matrix = validate_matrix(grid);
  if (labels && labels->size() != matrix.size())
    throw ParseError("header has " + std::to_string(labels->size()) + " labels for " +
                         std::to_string(matrix.size()) + " elements",
                     1, 1);
  return MatrixDocument{std::move(labels), std::move(matrix), "inline"};
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline MatrixDocument parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte points one past the offending character.
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON", line, col);
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (!doc.contains("matrix") || !doc["matrix"].is_array())
    throw ParseError("missing required array \"matrix\"");

  Grid grid;
  const auto& rows = doc["matrix"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError("matrix[" + std::to_string(i) + "] must be an array");
    std::vector<double> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      const auto& cell = rows[i][k];
      const std::string where = "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      if (cell.is_number()) {
        row.push_back(cell.get<double>());
      } else if (cell.is_string()) {
        const auto v = parse_cell(cell.get<std::string>());
        if (!v) throw ParseError("cannot parse number at " + where);
        row.push_back(*v);
      } else {
        throw ParseError(where + " must be a number or fraction string");
      }
    }
    grid.push_back(std::move(row));
  }
  auto matrix = validate_matrix(grid);

  std::optional<ElementLabels> labels;
  if (doc.contains("elements")) {
    const auto& el = doc["elements"];
    if (!el.is_array()) throw ParseError("\"elements\" must be an array of strings");
    std::vector<std::string> names;
    for (const auto& e : el) {
      if (!e.is_string()) throw ParseError("\"elements\" must be an array of strings");
      names.push_back(e.get<std::string>());
    }
    if (names.size() != matrix.size())
      throw ParseError("\"elements\" has " + std::to_string(names.size()) + " names for " +
                       std::to_string(matrix.size()) + " elements");
    labels = ElementLabels(std::move(names));
  }
  return MatrixDocument{std::move(labels), std::move(matrix), "inline"};
}

}  // namespace detail

inline MatrixDocument parse_matrix_document(std::string_view text, DocumentFormat format) {
  if (detail::trim(text).empty()) throw ParseError("empty document", 1, 1);
  return format == DocumentFormat::JSON ? detail::parse_json(text) : detail::parse_csv(text);
}

/// ".json" selects JSON; everything else is read as CSV.
inline DocumentFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ext == "json") return DocumentFormat::JSON;
  }
  return DocumentFormat::CSV;
}

inline MatrixDocument load_matrix_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto doc = parse_matrix_document(buf.str(), format_for_path(path));
  doc.source = path;
  return doc;
}

}  // namespace pcm
