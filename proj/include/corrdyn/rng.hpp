#pragma once

#include <cstdint>

namespace corrdyn {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so walkers on different threads produce
// bit-identical sequences regardless of scheduling or thread count.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return at(counter_++); }

  // Value of draw number t without advancing state.
  std::uint64_t at(std::uint64_t t) const {
    std::uint64_t x = seed_ + 0x9E3779B97F4A7C15ull * (stream_ + 1);
    x = mix(x);
    x += 0x9E3779B97F4A7C15ull * (t + 1);
    return mix(x);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1. Multiply-shift keeps it branch-free
  // and deterministic.
  std::uint32_t below(std::uint32_t n) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n);
    return static_cast<std::uint32_t>(wide >> 64);
  }

  std::uint64_t counter() const { return counter_; }

private:
  static std::uint64_t mix(std::uint64_t x) {
    // SplitMix64 finalizer.
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace corrdyn
