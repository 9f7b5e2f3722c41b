#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

inline constexpr double eps = std::numeric_limits<double>::epsilon();

// Rounding scale of a spectral derivative of order p on n nodes, per unit |u|_inf.
inline double roundoff(std::size_t n, int p) {
    return 10 * eps * std::pow(static_cast<double>(n / 2), p);
}
