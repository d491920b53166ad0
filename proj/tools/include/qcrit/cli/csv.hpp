// csv.hpp
// Minimal CSV framing: comma separator, '\n' line ends, header row, numbers
// in shortest round-trip form. Fields containing separators are quoted.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qcrit::cli {

// Shortest decimal that parses back to the same double; "nan", "inf", "-inf".
std::string format_double(double v);
// Inverse of format_double; throws std::invalid_argument on junk.
double parse_double(std::string_view s);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(std::size_t v);
  CsvWriter& operator<<(std::string_view s);
  // Terminates the row; throws std::logic_error if the width is wrong.
  void end_row();

 private:
  void field(std::string_view s);

  std::ostream& out_;
  std::size_t width_;
  std::size_t column_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; std::invalid_argument when missing.
  std::size_t column(std::string_view name) const;
  std::vector<double> numeric(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

}  // namespace qcrit::cli
