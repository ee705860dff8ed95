#pragma once

#include <cstdint>

namespace nbtrade {

// Streaming sample moments (Welford).  merge() is associative, so partial
// accumulators from parallel replications can be folded in any fixed order;
// the campaign driver folds them in replication order to keep results
// independent of the thread count.
struct SampleStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0; // sum of squared deviations from the running mean

    void add(double x);
    void merge(const SampleStats& other);

    // Unbiased sample variance; 0 until two samples exist.
    double variance() const;
    double stddev() const;

    // Normal-approximation 95% interval half width, 1.96 * sqrt(var / n).
    double ci95_halfwidth() const;

    // Binomial summary expressed in the same shape: mean = successes/trials,
    // variance = p(1-p) m/(m-1) so ci95_halfwidth() gives the Wald interval.
    static SampleStats from_bernoulli(std::uint64_t successes, std::uint64_t trials);
};

} // namespace nbtrade
