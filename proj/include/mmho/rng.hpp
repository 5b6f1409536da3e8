#ifndef MMHO_RNG_HPP
#define MMHO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mmho {

/// Small deterministic generator (splitmix64 core). Results are identical
/// across platforms, which keeps seeded experiment output byte-stable.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Derives an independent stream, e.g. per trial or per MUE.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id)
    {
        Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
        r.next_u64();
        return r;
    }

    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare, draw order is flat).
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

  private:
    std::uint64_t state_;
};

} // namespace mmho

#endif
