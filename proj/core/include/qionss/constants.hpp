#pragma once

#include <numbers>

namespace qionss {

// Reduced Planck constant, CODATA 2018 (J s). Every hbar-dependent routine
// takes it as a defaulted argument so callers can work in natural units.
inline constexpr double kHbar = 1.054571817e-34;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace qionss
