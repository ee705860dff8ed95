#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace nbtrade {

// splitmix64 step; used for seeding and for hashing stream labels.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Compile-time FNV-1a, so rng streams can be named at their point of use.
constexpr std::uint64_t stream_id(std::string_view name)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// xoshiro256++ generator with counter-style stream derivation.  Generators
// built from the same (seed, stream, substream) triple produce identical
// sequences; changing any component decorrelates the stream.  Replications
// key the substream so per-replication results do not depend on how work is
// scheduled across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0,
                 std::uint64_t substream = 0)
    {
        std::uint64_t s = seed;
        s = splitmix64(s) ^ stream;
        s = splitmix64(s) ^ substream;
        for (auto& word : state_)
            word = splitmix64(s);
        if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
            state_[0] = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64()
    {
        std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * next_double();
    }

    bool bernoulli(double p)
    {
        return next_double() < p;
    }

    // Unbiased integer on [0, n); n >= 1.  Lemire's multiply-reject method.
    std::uint64_t uniform_int(std::uint64_t n);

    // Exponential with the given rate (mean 1/rate).
    double exponential(double rate);

    std::uint64_t poisson(double mean);

    // Marsaglia-Tsang; scale is the mean of a unit-shape draw.
    double gamma(double shape, double scale);

private:
    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

} // namespace nbtrade
