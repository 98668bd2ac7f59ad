#pragma once

#include <numbers>

namespace terabridge {

/// CODATA 2018 exact or recommended values, SI units.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;   ///< J s
  static constexpr double k_B = 1.380649e-23;       ///< J/K (exact)
  static constexpr double c = 299792458.0;          ///< m/s (exact)
  static constexpr double eps0 = 8.8541878128e-12;  ///< F/m
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Ordinary frequency (Hz) to angular frequency (rad/s).
constexpr double angular(double hz) { return kTwoPi * hz; }

}  // namespace terabridge
