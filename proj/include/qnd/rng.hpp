#pragma once

#include <cstdint>

namespace qnd {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Splitmix64 stream. Substreams are derived from (seed, index) so each draw
// index owns an independent deterministic sequence regardless of evaluation
// order or thread placement.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : state_(mix64(seed)) {}
    RandomStream(std::uint64_t seed, std::uint64_t index)
        : state_(mix64(mix64(seed) ^ mix64(index * 0xd1342543de82ef95ULL + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * real(); }

  private:
    std::uint64_t state_;
};

}  // namespace qnd
