#pragma once

#include <cstdint>

namespace mfrb {

// Deterministic, splittable random streams. Streams are derived from a
// (master seed, salt, index) triple, so any unit of work that owns its own
// index (a simulation run, a reverse sample, an experiment cell) can be
// executed in any order, on any number of threads, and still consume exactly
// the same coin sequence. Generation is xoshiro256**, seeded via splitmix64.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream() : RngStream(0, 0, 0) {}

  RngStream(std::uint64_t master_seed, std::uint64_t salt, std::uint64_t index) {
    std::uint64_t st = master_seed;
    (void)splitmix64(st);
    st ^= 0xd1b54a32d192ed03ull * (salt + 1);
    (void)splitmix64(st);
    st ^= 0x8cb92ba72f3d8dd7ull * (index + 1);
    for (auto& word : state_) word = splitmix64(st);
    // xoshiro must not start from the all-zero state
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0,1), 53-bit mantissa
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // uniform in [0, bound), unbiased via 128-bit multiply + rejection
  std::uint64_t next_below(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Stream salts, one per purpose. Keeping them in one place guarantees two
// different consumers never alias the same stream family.
namespace salt {
inline constexpr std::uint64_t kWorkingPool = 0x01;
inline constexpr std::uint64_t kFinalPool = 0x02;
inline constexpr std::uint64_t kMcOracle = 0x03;
inline constexpr std::uint64_t kPartialActivation = 0x04;
inline constexpr std::uint64_t kRandomBaseline = 0x05;
inline constexpr std::uint64_t kGreedyRound = 0x06;
inline constexpr std::uint64_t kEvaluation = 0x07;
}  // namespace salt

}  // namespace mfrb
