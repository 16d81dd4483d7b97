#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rampsvm/dataset.hpp"
#include "rampsvm/error.hpp"

namespace rampsvm {

/// CSV: one sample per line, "label,x_1,...,x_n".
/// LIBSVM: "label idx:val ..." with 1-based indices; absent indices are zero.
/// Blank lines and lines starting with '#' are skipped in both.
enum class DataFormat { Csv, Libsvm };

/// Parses "csv" or "libsvm".
DataFormat parse_format(std::string_view name);

/// Raised with the 1-based line number of the offending input line.
class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Dataset parse_dataset(std::istream& in, DataFormat format);
Dataset parse_dataset(const std::filesystem::path& path, DataFormat format);

/// Writes CSV with 17 significant digits so that parsing reproduces every value.
void write_csv(std::ostream& out, const Dataset& data);
void write_csv(const std::filesystem::path& path, const Dataset& data);

}  // namespace rampsvm
