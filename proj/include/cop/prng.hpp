/*
 * This code is part of copkit.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace cop {

// Counter-based splittable generator. The word function is the SplitMix64
// finalizer applied to key + counter * golden ratio, so any draw is a pure
// function of (seed, stream path, counter); children split off with
// split(stream) are independent streams. Gaussians come from Box-Muller on
// 53-bit uniforms, which keeps the output portable across platforms.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : seed_(seed), key_(mix(seed + kGamma)) {}

  std::uint64_t seed() const { return seed_; }

  Prng split(std::uint64_t stream) const {
    return Prng(mix(key_ ^ mix(stream + kGamma2)));
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // uniform on [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  static constexpr std::uint64_t kGamma2 = 0xbf58476d1ce4e5b9ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cop
