#include "nbtrade/stats.hpp"

#include <cmath>

namespace nbtrade {

void SampleStats::add(double x)
{
    ++count;
    double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

void SampleStats::merge(const SampleStats& other)
{
    if (other.count == 0)
        return;
    if (count == 0) {
        *this = other;
        return;
    }
    double na = static_cast<double>(count);
    double nb = static_cast<double>(other.count);
    double delta = other.mean - mean;
    double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    count += other.count;
}

double SampleStats::variance() const
{
    if (count < 2)
        return 0.0;
    return m2 / static_cast<double>(count - 1);
}

double SampleStats::stddev() const
{
    return std::sqrt(variance());
}

double SampleStats::ci95_halfwidth() const
{
    if (count < 2)
        return 0.0;
    return 1.96 * std::sqrt(variance() / static_cast<double>(count));
}

SampleStats SampleStats::from_bernoulli(std::uint64_t successes, std::uint64_t trials)
{
    SampleStats s;
    if (trials == 0)
        return s;
    double p = static_cast<double>(successes) / static_cast<double>(trials);
    s.count = trials;
    s.mean = p;
    // Sum of squared deviations of a 0/1 sample about its mean.
    s.m2 = static_cast<double>(trials) * p * (1.0 - p);
    return s;
}

} // namespace nbtrade
