#include "qcrit/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qcrit::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // drop the sign of -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), width_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

void CsvWriter::field(std::string_view s) {
  if (column_ > 0) out_ << ',';
  if (s.find_first_of(",\"\n") != std::string_view::npos) {
    out_ << '"';
    for (char c : s) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  } else {
    out_ << s;
  }
  ++column_;
}

CsvWriter& CsvWriter::operator<<(double v) {
  field(format_double(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t v) {
  field(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view s) {
  field(s);
  return *this;
}

void CsvWriter::end_row() {
  if (column_ != width_) throw std::logic_error("CsvWriter: row width does not match header");
  out_ << '\n';
  column_ = 0;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw std::invalid_argument("missing CSV column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::numeric(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(parse_double(r.at(c)));
  return out;
}

namespace {

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV record");
  return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_record(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto rec = split_record(line);
    if (rec.size() != t.header.size())
      throw std::invalid_argument("CSV row width does not match the header");
    t.rows.push_back(std::move(rec));
  }
  return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace qcrit::cli
