#pragma once

#include <cmath>
#include <cstdint>

namespace spreadlab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace detail

/// Deterministic generator: splitmix64 plus explicit double extraction, so
/// streams do not depend on standard-library distribution internals and
/// replay identically everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so nearby seeds decorrelate.
        for (int i = 0; i < 4; ++i) next_u64();
    }

    /// Sub-stream for an independent worker; the index is mixed into the
    /// seed so streams never overlap in practice.
    static Rng for_stream(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (stream_index + 1));
        return Rng(detail::splitmix64(s));
    }

    std::uint64_t next_u64() { return detail::splitmix64(state_); }

    /// Uniform on [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double next_positive() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        const double u = next_positive();
        const double v = next_double();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

    std::size_t next_index(std::size_t bound) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(bound));
    }

  private:
    std::uint64_t state_;
};

} // namespace spreadlab
