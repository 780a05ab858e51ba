#pragma once

#include <cmath>
#include <complex>

#include "latred/flops.hpp"

namespace latred {

/// Maps one algorithm onto two arithmetic domains: complex data with complex
/// flop events, and real data (for the real-embedded path) with real events.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool is_complex = false;
  static constexpr FlopEvent add_ev = FlopEvent::RealAdd;
  static constexpr FlopEvent mul_ev = FlopEvent::RealMul;
  static constexpr FlopEvent mul_real_ev = FlopEvent::RealMul;
  static constexpr FlopEvent div_real_ev = FlopEvent::RealDiv;
  static constexpr FlopEvent abs_sq_ev = FlopEvent::RealMul;

  static double conj(double x) { return x; }
  static double abs_sq(double x) { return x * x; }
  static double from_real(double r) { return r; }
  static double real_part(double x) { return x; }
  /// Rounds to the nearest integer, ties away from zero.
  static double round_int(double x) { return std::round(x); }
  static bool exceeds_half(double x) { return std::fabs(x) > 0.5; }
  static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct ScalarOps<std::complex<double>> {
  static constexpr bool is_complex = true;
  static constexpr FlopEvent add_ev = FlopEvent::ComplexAdd;
  static constexpr FlopEvent mul_ev = FlopEvent::ComplexMul;
  static constexpr FlopEvent mul_real_ev = FlopEvent::ComplexMulReal;
  static constexpr FlopEvent div_real_ev = FlopEvent::ComplexDivReal;
  static constexpr FlopEvent abs_sq_ev = FlopEvent::AbsSqComplex;

  static std::complex<double> conj(const std::complex<double>& z) {
    return std::conj(z);
  }
  static double abs_sq(const std::complex<double>& z) {
    return z.real() * z.real() + z.imag() * z.imag();
  }
  static std::complex<double> from_real(double r) { return {r, 0.0}; }
  static double real_part(const std::complex<double>& z) { return z.real(); }
  /// Componentwise rounding, ties away from zero on each part.
  static std::complex<double> round_int(const std::complex<double>& z) {
    return {std::round(z.real()), std::round(z.imag())};
  }
  static bool exceeds_half(const std::complex<double>& z) {
    return std::fabs(z.real()) > 0.5 || std::fabs(z.imag()) > 0.5;
  }
  static bool is_zero(const std::complex<double>& z) {
    return z.real() == 0.0 && z.imag() == 0.0;
  }
};

}  // namespace latred
