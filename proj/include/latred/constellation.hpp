#pragma once

#include <cstdint>
#include <vector>

#include "latred/matrix.hpp"

namespace latred {

/// Square M-QAM alphabet on the odd-integer grid: points a + bi with a, b odd
/// and |a|, |b| <= sqrt(M) - 1. Gray labeling per axis.
class Constellation {
 public:
  /// M in {4, 16, 64, 256}.
  static Constellation qam(int order);

  int order() const { return order_; }
  int side() const { return side_; }                    // sqrt(M) levels per axis
  int bits_per_symbol() const { return bits_per_symbol_; }
  int bits_per_axis() const { return bits_per_symbol_ / 2; }
  double avg_energy() const { return avg_energy_; }     // 2(M-1)/3
  const std::vector<cplx>& points() const { return points_; }

  /// Point for a symbol index (axis-major: index = i_axis * side + q_axis).
  cplx point(int index) const { return points_[index]; }
  int index_of(const cplx& p) const;

  /// Nearest constellation point (per-component clamp to the odd grid).
  cplx slice(const cplx& z) const;

  /// Per-axis level from a real coordinate, clamped: level in [0, side).
  int slice_axis_level(double x) const;
  double level_value(int level) const { return 2.0 * level - (side_ - 1); }

  /// Gray-coded bits (bits_per_axis each for I then Q), most significant
  /// first, for a symbol index; and back.
  void append_bits(int symbol_index, std::vector<std::uint8_t>& bits) const;
  int symbol_from_bits(const std::uint8_t* bits) const;

 private:
  Constellation() = default;
  int order_ = 0;
  int side_ = 0;
  int bits_per_symbol_ = 0;
  double avg_energy_ = 0.0;
  std::vector<cplx> points_;
  std::vector<int> gray_to_level_;  // gray code -> axis level
  std::vector<int> level_to_gray_;
};

/// Maps a bit block onto n symbols (length must be n * bits_per_symbol).
std::vector<cplx> qam_map(const std::vector<std::uint8_t>& bits,
                          const Constellation& c, std::size_t n);
/// Inverse of qam_map for vectors of exact constellation points.
std::vector<std::uint8_t> qam_demap(const std::vector<cplx>& symbols,
                                    const Constellation& c);

}  // namespace latred
