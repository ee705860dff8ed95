#pragma once

#include <cmath>
#include <functional>

namespace nbtrade {

// Free-space propagation speed used throughout the link budget (m/s).
inline constexpr double kSpeedOfLight = 3.0e8;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDaysPerYear = 365.25;

// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double q_function(double x)
{
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// Adaptive Simpson quadrature on [a, b].  |error| is driven below tol by
// interval halving; throws NumericError if max_depth splits do not suffice.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 48);

} // namespace nbtrade
