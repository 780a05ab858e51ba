#include "latred/flops.hpp"

#include <fstream>
#include <sstream>

#include "latred/errors.hpp"

namespace latred {

const char* flop_event_name(FlopEvent e) {
  switch (e) {
    case FlopEvent::ComplexAdd: return "complex_add";
    case FlopEvent::ComplexMul: return "complex_mul";
    case FlopEvent::ComplexMulReal: return "complex_mul_real";
    case FlopEvent::ComplexDivReal: return "complex_div_real";
    case FlopEvent::RealAdd: return "real_add";
    case FlopEvent::RealMul: return "real_mul";
    case FlopEvent::RealDiv: return "real_div";
    case FlopEvent::AbsSqComplex: return "abs_sq_complex";
    case FlopEvent::Round: return "round";
    case FlopEvent::Compare: return "compare";
    case FlopEvent::Negate: return "negate";
  }
  return "?";
}

const char* region_name(Region r) {
  switch (r) {
    case Region::Gso: return "gso";
    case Region::MainLoop: return "main_loop";
    case Region::SizeReduce: return "size_reduce";
    case Region::Swap: return "swap";
    case Region::Qr: return "qr";
    case Region::Processing: return "processing";
  }
  return "?";
}

CostModel CostModel::standard() {
  CostModel m{};
  m.weights[static_cast<int>(FlopEvent::ComplexAdd)] = 2.0;
  m.weights[static_cast<int>(FlopEvent::ComplexMul)] = 6.0;
  m.weights[static_cast<int>(FlopEvent::ComplexMulReal)] = 2.0;
  m.weights[static_cast<int>(FlopEvent::ComplexDivReal)] = 2.0;
  m.weights[static_cast<int>(FlopEvent::RealAdd)] = 1.0;
  m.weights[static_cast<int>(FlopEvent::RealMul)] = 1.0;
  m.weights[static_cast<int>(FlopEvent::RealDiv)] = 1.0;
  m.weights[static_cast<int>(FlopEvent::AbsSqComplex)] = 8.0;
  m.weights[static_cast<int>(FlopEvent::Round)] = 0.0;
  m.weights[static_cast<int>(FlopEvent::Compare)] = 0.0;
  m.weights[static_cast<int>(FlopEvent::Negate)] = 0.0;
  m.arch_factor_k = 4.0;
  return m;
}

CostModel CostModel::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cost model file: " + path);
  CostModel m = standard();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!line.empty() && is_space(line.front())) line.erase(line.begin());
    while (!line.empty() && is_space(line.back())) line.pop_back();
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(path, lineno, 1, "expected event=weight");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    while (!key.empty() && is_space(key.back())) key.pop_back();
    while (!val.empty() && is_space(val.front())) val.erase(val.begin());
    double w = 0.0;
    try {
      w = std::stod(val);
    } catch (const std::exception&) {
      throw ParseError(path, lineno, eq + 2, "bad number: " + val);
    }
    if (key == "k" || key == "K" || key == "arch_factor_k") {
      m.arch_factor_k = w;
      continue;
    }
    bool found = false;
    for (int i = 0; i < kNumFlopEvents; ++i) {
      if (key == flop_event_name(static_cast<FlopEvent>(i))) {
        if (w < 0.0) throw ParseError(path, lineno, 1, "negative weight");
        m.weights[i] = w;
        found = true;
        break;
      }
    }
    if (!found) throw ParseError(path, lineno, 1, "unknown event: " + key);
  }
  return m;
}

std::uint64_t FlopTally::event_count(FlopEvent e) const {
  std::uint64_t total = 0;
  for (int r = 0; r < kNumRegions; ++r) total += counts_[r][static_cast<int>(e)];
  return total;
}

std::uint64_t FlopTally::region_count(Region r) const {
  std::uint64_t total = 0;
  for (int e = 0; e < kNumFlopEvents; ++e) total += counts_[static_cast<int>(r)][e];
  return total;
}

double FlopTally::weighted_total(const CostModel& m) const {
  double total = 0.0;
  for (int r = 0; r < kNumRegions; ++r)
    for (int e = 0; e < kNumFlopEvents; ++e)
      total += static_cast<double>(counts_[r][e]) * m.weights[e];
  return total;
}

double FlopTally::region_weighted(Region r, const CostModel& m) const {
  double total = 0.0;
  for (int e = 0; e < kNumFlopEvents; ++e)
    total += static_cast<double>(counts_[static_cast<int>(r)][e]) * m.weights[e];
  return total;
}

FlopTally& FlopTally::operator+=(const FlopTally& other) {
  for (int r = 0; r < kNumRegions; ++r)
    for (int e = 0; e < kNumFlopEvents; ++e) counts_[r][e] += other.counts_[r][e];
  return *this;
}

}  // namespace latred
