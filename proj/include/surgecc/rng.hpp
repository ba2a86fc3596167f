#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace surgecc {

// Deterministic, platform-independent PRNG (xoshiro256**). std::mt19937 with
// std:: distributions is not reproducible across standard libraries, and the
// experiment harness promises byte-identical output for a given seed.
class Rng {
public:
  explicit Rng(uint64_t seed) {
    // splitmix64 expansion of the seed into the xoshiro state
    uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform integer in [0, n) by rejection; n must be > 0.
  uint64_t below(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin(double p_true) { return unit() < p_true; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
};

// Derives an independent child seed from a base seed and a path of indices.
// Used to give every experiment cell / sample / restart its own stream so
// results do not depend on evaluation order.
inline uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> path) {
  uint64_t x = base;
  Rng::splitmix64(x);
  for (uint64_t p : path) {
    x ^= 0x9e3779b97f4a7c15ULL + p;
    Rng::splitmix64(x);
    x = Rng::splitmix64(x);
  }
  return x;
}

}  // namespace surgecc
