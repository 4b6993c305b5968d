#include "bmom/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bmom/errors.hpp"

namespace bmom {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t')) --b;
  return s.substr(a, b - a);
}

double parse_cell(const std::string& raw, std::size_t line_no,
                  const std::string& column) {
  const std::string cell = trimmed(raw);
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  // from_chars rejects an explicit plus; accept one before a digit or '.'
  if (first != last && *first == '+' && last - first > 1 &&
      (std::isdigit(static_cast<unsigned char>(first[1])) || first[1] == '.'))
    ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.empty())
    throw data_error("cannot parse '" + cell + "' as a number at row " +
                     std::to_string(line_no) + ", column '" + column + "'");
  if (!std::isfinite(value))
    throw data_error("non-finite value at row " + std::to_string(line_no) +
                     ", column '" + column + "'");
  return value;
}

}  // namespace

LoadedData load_csv(const std::string& path, const std::string& y_name,
                    const std::vector<std::string>& x_names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string raw = buffer.str();

  LoadedData out;
  out.path = path;
  out.content_hash = fnv1a64(raw.data(), raw.size());

  // UTF-8 byte-order mark, if an editor left one
  if (raw.size() >= 3 && raw.compare(0, 3, "\xEF\xBB\xBF") == 0) raw.erase(0, 3);

  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= raw.size()) {
      std::size_t nl = raw.find('\n', start);
      if (nl == std::string::npos) nl = raw.size();
      std::string line = raw.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      start = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
  }
  if (lines.empty()) throw data_error("'" + path + "' is empty");

  std::vector<std::string> header = split_line(lines[0]);
  for (auto& h : header) h = trimmed(h);
  const std::size_t width = header.size();

  const auto find_column = [&](const std::string& name) {
    std::size_t found = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (header[j] == name) {
        if (found != width)
          throw data_error("column '" + name + "' appears more than once in '" +
                           path + "'");
        found = j;
      }
    }
    if (found == width) {
      std::string msg = "no column '" + name + "' in '" + path + "'; header has:";
      for (const auto& h : header) msg += " " + h;
      throw data_error(msg);
    }
    return found;
  };

  const std::size_t y_col = find_column(y_name);
  std::vector<std::size_t> x_cols;
  for (const auto& name : x_names) {
    const std::size_t j = find_column(name);
    if (j == y_col)
      throw data_error("column '" + name + "' selected as both response and regressor");
    if (std::find(x_cols.begin(), x_cols.end(), j) != x_cols.end())
      throw data_error("regressor column '" + name + "' selected twice");
    x_cols.push_back(j);
  }

  out.y.name = y_name;
  out.x.resize(x_names.size());
  for (std::size_t j = 0; j < x_names.size(); ++j) out.x[j].name = x_names[j];

  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty())
      throw data_error("blank row " + std::to_string(i + 1) + " in '" + path + "'");
    const std::vector<std::string> cells = split_line(lines[i]);
    if (cells.size() != width)
      throw data_error("row " + std::to_string(i + 1) + " has " +
                       std::to_string(cells.size()) + " cells but the header has " +
                       std::to_string(width));
    out.y.values.push_back(parse_cell(cells[y_col], i + 1, header[y_col]));
    for (std::size_t j = 0; j < x_cols.size(); ++j)
      out.x[j].values.push_back(
          parse_cell(cells[x_cols[j]], i + 1, header[x_cols[j]]));
  }

  out.rows = out.y.values.size();
  if (out.rows == 0) throw data_error("'" + path + "' has a header but no data rows");
  return out;
}

}  // namespace bmom
