// Small statistics helpers shared by the estimators and the harness.
#pragma once

#include <cmath>
#include <cstdint>

namespace ppclab {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct WilsonInterval {
    double center = 0.0;
    double half_width = 0.0;
};

// Wilson score interval at 95%; well behaved near 0 and 1
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                      double z = kWilsonZ95) {
    if (trials == 0) return {0.5, 0.5};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    WilsonInterval w;
    w.center = (p + z2 / (2.0 * n)) / denom;
    w.half_width = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return w;
}

}  // namespace ppclab
