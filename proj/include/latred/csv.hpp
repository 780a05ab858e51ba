#pragma once

#include <cstdint>
#include <type_traits>
#include <string>
#include <vector>

namespace latred {

/// CSV writer with a fixed header per table; numbers are printed with 17
/// significant digits so identical runs produce byte-identical files.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& cell(const std::string& s);
  CsvTable& cell(double v);
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  CsvTable& cell(I v) {
    return cell_u64(static_cast<std::uint64_t>(v));
  }
  void end_row();

  std::string str() const;
  void write_file(const std::string& path) const;

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  static std::string format_number(double v);

 private:
  CsvTable& cell_u64(std::uint64_t v);
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> current_;
};

}  // namespace latred
