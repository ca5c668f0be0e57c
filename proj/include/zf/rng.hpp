#pragma once

#include <cstdint>

namespace zf {

// Counter-based generator: output i of stream `seed` is mix(seed, i).
// Splittable and reproducible bit-for-bit across platforms; "splitmix-counter".
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))), counter_(0) {}

    std::uint64_t next_u64() { return mix(seed_, counter_++); }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // multiply-shift; bias < 2^-64, irrelevant for experiment corpora
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace zf
