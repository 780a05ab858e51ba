#include "latred/constellation.hpp"

#include <cmath>

#include "latred/errors.hpp"

namespace latred {

Constellation Constellation::qam(int order) {
  if (order != 4 && order != 16 && order != 64 && order != 256)
    throw ConfigError("qam order must be one of 4, 16, 64, 256");
  Constellation c;
  c.order_ = order;
  c.side_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
  c.bits_per_symbol_ = static_cast<int>(std::lround(std::log2(order)));
  c.avg_energy_ = 2.0 * (order - 1) / 3.0;
  c.points_.reserve(order);
  for (int a = 0; a < c.side_; ++a)
    for (int b = 0; b < c.side_; ++b)
      c.points_.emplace_back(c.level_value(a), c.level_value(b));
  c.gray_to_level_.resize(c.side_);
  c.level_to_gray_.resize(c.side_);
  for (int level = 0; level < c.side_; ++level) {
    int gray = level ^ (level >> 1);
    c.level_to_gray_[level] = gray;
    c.gray_to_level_[gray] = level;
  }
  return c;
}

int Constellation::index_of(const cplx& p) const {
  int a = slice_axis_level(p.real());
  int b = slice_axis_level(p.imag());
  return a * side_ + b;
}

int Constellation::slice_axis_level(double x) const {
  long level = std::lround((x + (side_ - 1)) * 0.5);
  if (level < 0) level = 0;
  if (level >= side_) level = side_ - 1;
  return static_cast<int>(level);
}

cplx Constellation::slice(const cplx& z) const {
  return {level_value(slice_axis_level(z.real())),
          level_value(slice_axis_level(z.imag()))};
}

void Constellation::append_bits(int symbol_index, std::vector<std::uint8_t>& bits) const {
  int a = symbol_index / side_;
  int b = symbol_index % side_;
  int half = bits_per_axis();
  for (int axis_gray : {level_to_gray_[a], level_to_gray_[b]})
    for (int bit = half - 1; bit >= 0; --bit)
      bits.push_back(static_cast<std::uint8_t>((axis_gray >> bit) & 1));
}

int Constellation::symbol_from_bits(const std::uint8_t* bits) const {
  int half = bits_per_axis();
  int ga = 0, gb = 0;
  for (int bit = 0; bit < half; ++bit) ga = (ga << 1) | bits[bit];
  for (int bit = 0; bit < half; ++bit) gb = (gb << 1) | bits[half + bit];
  return gray_to_level_[ga] * side_ + gray_to_level_[gb];
}

std::vector<cplx> qam_map(const std::vector<std::uint8_t>& bits,
                          const Constellation& c, std::size_t n) {
  if (bits.size() != n * static_cast<std::size_t>(c.bits_per_symbol()))
    throw ConfigError("qam_map: bit count must equal n * log2(M)");
  std::vector<cplx> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s)
    out.push_back(c.point(c.symbol_from_bits(bits.data() + s * c.bits_per_symbol())));
  return out;
}

std::vector<std::uint8_t> qam_demap(const std::vector<cplx>& symbols,
                                    const Constellation& c) {
  std::vector<std::uint8_t> bits;
  bits.reserve(symbols.size() * c.bits_per_symbol());
  for (const cplx& s : symbols) c.append_bits(c.index_of(s), bits);
  return bits;
}

}  // namespace latred
