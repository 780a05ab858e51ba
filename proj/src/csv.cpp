#include "latred/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "latred/errors.hpp"

namespace latred {

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string quote(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string CsvTable::format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvTable& CsvTable::cell(const std::string& s) {
  current_.push_back(s);
  return *this;
}

CsvTable& CsvTable::cell(double v) { return cell(format_number(v)); }

CsvTable& CsvTable::cell_u64(std::uint64_t v) { return cell(std::to_string(v)); }

void CsvTable::end_row() {
  rows_.push_back(std::move(current_));
  current_.clear();
}

std::string CsvTable::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out << ",";
    out << quote(header_[i]);
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << quote(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << str();
}

}  // namespace latred
