#include "nbtrade/rng.hpp"

#include <cmath>

namespace nbtrade {

std::uint64_t Rng::uniform_int(std::uint64_t n)
{
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::exponential(double rate)
{
    // next_double() < 1, so the log argument stays in (0, 1].
    return -std::log1p(-next_double()) / rate;
}

std::uint64_t Rng::poisson(double mean)
{
    if (mean <= 0.0)
        return 0;
    // Split large means so the product-of-uniforms loop never underflows.
    if (mean > 500.0) {
        double half = 0.5 * mean;
        return poisson(half) + poisson(mean - half);
    }
    double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = next_double();
    while (prod > limit) {
        ++k;
        prod *= next_double();
    }
    return k;
}

double Rng::gamma(double shape, double scale)
{
    if (shape < 1.0) {
        double u = next_double();
        while (u <= 0.0)
            u = next_double();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            // Polar Box-Muller normal draw.
            double u1 = next_double();
            double u2 = next_double();
            while (u1 <= 0.0)
                u1 = next_double();
            x = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = next_double();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v * scale;
    }
}

} // namespace nbtrade
