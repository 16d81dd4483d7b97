#include "rampsvm/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace rampsvm {

ParseError::ParseError(std::size_t line, const std::string& what)
    : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

DataFormat parse_format(std::string_view name) {
  if (name == "csv") return DataFormat::Csv;
  if (name == "libsvm") return DataFormat::Libsvm;
  throw InvalidInput("unknown data format '" + std::string(name) + "' (expected csv or libsvm)");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skip_line(std::string_view line) { return line.empty() || line.front() == '#'; }

double parse_number(std::string_view token, std::size_t line, const char* what) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size() ||
      !std::isfinite(value))
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
  return value;
}

double parse_label(std::string_view token, std::size_t line) {
  const double y = parse_number(token, line, "label");
  if (y != 1.0 && y != -1.0)
    throw ParseError(line, "label must be -1 or +1, got '" + std::string(trim(token)) + "'");
  return y;
}

Dataset assemble(const std::vector<std::vector<double>>& rows, const std::vector<double>& labels,
                 std::size_t n) {
  Dataset d;
  d.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                     static_cast<Eigen::Index>(n));
  d.labels.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.labels(static_cast<Eigen::Index>(i)) = labels[i];
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  if (rows.empty()) throw InvalidInput("dataset file contains no samples");
  d.validate();
  return d;
}

Dataset parse_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  std::size_t n = 0;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    const std::string_view line = trim(raw);
    if (skip_line(line)) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() < 2) throw ParseError(line_no, "expected a label followed by features");
    if (rows.empty()) {
      n = fields.size() - 1;
    } else if (fields.size() - 1 != n) {
      throw ParseError(line_no, "expected " + std::to_string(n) + " features, found " +
                                    std::to_string(fields.size() - 1));
    }
    labels.push_back(parse_label(fields[0], line_no));
    std::vector<double> row;
    row.reserve(n);
    for (std::size_t j = 1; j < fields.size(); ++j)
      row.push_back(parse_number(fields[j], line_no, "feature value"));
    rows.push_back(std::move(row));
  }
  return assemble(rows, labels, n);
}

Dataset parse_libsvm(std::istream& in) {
  std::vector<std::map<std::size_t, double>> sparse_rows;
  std::vector<double> labels;
  std::size_t n = 0;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    std::string_view line = trim(raw);
    if (skip_line(line)) continue;

    std::vector<std::string_view> tokens;
    while (!line.empty()) {
      const auto end = line.find_first_of(" \t");
      tokens.push_back(line.substr(0, end));
      if (end == std::string_view::npos) break;
      line = trim(line.substr(end));
    }
    labels.push_back(parse_label(tokens[0], line_no));

    std::map<std::size_t, double> row;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto colon = tokens[t].find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, "expected index:value, got '" + std::string(tokens[t]) + "'");
      const std::string_view idx_text = tokens[t].substr(0, colon);
      std::size_t idx = 0;
      const auto [end, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (ec != std::errc() || end != idx_text.data() + idx_text.size() || idx == 0)
        throw ParseError(line_no, "invalid feature index '" + std::string(idx_text) + "'");
      if (row.count(idx)) throw ParseError(line_no, "duplicate feature index " + std::to_string(idx));
      row[idx] = parse_number(tokens[t].substr(colon + 1), line_no, "feature value");
      n = std::max(n, idx);
    }
    sparse_rows.push_back(std::move(row));
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(sparse_rows.size());
  for (const auto& sparse : sparse_rows) {
    std::vector<double> row(n, 0.0);
    for (const auto& [idx, value] : sparse) row[idx - 1] = value;
    rows.push_back(std::move(row));
  }
  return assemble(rows, labels, n);
}

}  // namespace

Dataset parse_dataset(std::istream& in, DataFormat format) {
  return format == DataFormat::Csv ? parse_csv(in) : parse_libsvm(in);
}

Dataset parse_dataset(const std::filesystem::path& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open dataset file '" + path.string() + "'");
  return parse_dataset(in, format);
}

void write_csv(std::ostream& out, const Dataset& data) {
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < data.m(); ++i) {
    out << (data.labels(i) > 0 ? "+1" : "-1");
    for (Eigen::Index j = 0; j < data.n(); ++j) out << ',' << data.features(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  write_csv(out, data);
}

}  // namespace rampsvm
