#pragma once

#include <cstdint>
#include <random>

namespace caristi {

// Seeded deterministic RNG. We avoid std::uniform_int_distribution because its
// output is not pinned across standard library implementations; reports must
// be byte-identical for a given seed anywhere.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // uniform-ish draw in [0, n); modulo bias is irrelevant for test sampling
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : eng_() % n; }

  bool coin() { return (eng_() & 1u) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace caristi
