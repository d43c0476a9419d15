#pragma once

#include <cstdint>

namespace nilfold {

// splitmix64: tiny, seedable, identical on every platform. Used wherever a
// reproducible stream is needed (search refinements, test element sampling).
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, bound); bound > 0.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  // Signed value in [-range, range].
  long next_signed(long range) {
    return static_cast<long>(next_below(static_cast<std::uint64_t>(2 * range + 1))) - range;
  }

 private:
  std::uint64_t state_;
};

}  // namespace nilfold
