#pragma once

#include <numbers>

namespace dilute {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Euler-Mascheroni
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;
// zeta(3/2)
inline constexpr double kZeta3Half = 2.612375348685488343348567567924;

}  // namespace dilute
