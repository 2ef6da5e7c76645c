#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "siri/error.hpp"

namespace siri::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& cell, double& value) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* begin = t.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), value);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(value);
}

void put_number(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

Dataset parse_csv(std::istream& in, const std::string& response) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: header row required");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  std::vector<std::string> header = split_record(line);
  for (auto& h : header) h = trim(h);
  const auto response_it = std::find(header.begin(), header.end(), response);
  if (response_it == header.end()) throw DataError("response column '" + response + "' not found");
  const auto response_col = static_cast<std::size_t>(response_it - header.begin());

  std::vector<std::vector<double>> rows;
  int row_number = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row_number;
    const auto cells = split_record(line);
    if (cells.size() != header.size())
      throw DataError("row " + std::to_string(row_number) + " has " + std::to_string(cells.size()) +
                      " fields, expected " + std::to_string(header.size()));
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_number(cells[c], values[c]))
        throw DataError("non-numeric or missing value at row " + std::to_string(row_number) +
                        ", column " + header[c]);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw DataError("no observations");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(header.size() - 1);
  Dataset data;
  data.response = response;
  data.x.resize(n, p);
  data.y.resize(n);
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != response_col) data.names.push_back(header[c]);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const double v = rows[static_cast<std::size_t>(i)][c];
      if (c == response_col) data.y(i) = v; else data.x(i, j++) = v;
    }
  }
  return data;
}

Dataset load_csv(const std::string& path, const std::string& response) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_csv(in, response);
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (const auto& name : data.names) out << name << ',';
  out << data.response << '\n';
  for (int i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.p(); ++j) {
      put_number(out, data.x(i, j));
      out << ',';
    }
    put_number(out, data.y(i));
    out << '\n';
  }
}

}  // namespace siri::cli
