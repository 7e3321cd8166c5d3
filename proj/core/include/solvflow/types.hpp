#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace solvflow {

inline constexpr std::size_t kDim = 5;

// Metric coefficients (A, B, C, D, E) or anything else indexed the same way.
using Vec5 = std::array<double, kDim>;

inline constexpr std::array<std::string_view, kDim> kComponentNames{"A", "B", "C", "D", "E"};

// Threshold below which Jacobi/unimodularity residuals count as zero.
inline constexpr double kIdentityTolerance = 1e-10;

}  // namespace solvflow
