#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace htc {

/// Seed + stream pair. Identical pairs reproduce identical sample
/// sequences bit-for-bit; distinct streams are statistically independent.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t x = a;
  std::uint64_t h = splitmix64(x);
  x = h ^ b;
  h = splitmix64(x);
  x = h ^ c;
  return splitmix64(x);
}

}  // namespace detail

/// Counter-based stream derivation: the child stream id is a hash of the
/// parent key and a task index, so parallel sweeps are reproducible
/// regardless of scheduling.
inline RngSeed derive_stream(const RngSeed& parent, std::uint64_t task_index) {
  return RngSeed{parent.seed, detail::mix3(parent.seed, parent.stream, task_index)};
}

/// xoshiro256++ with explicit, implementation-pinned floating-point
/// conversions. std::random distributions are avoided on purpose: their
/// output is not specified bit-for-bit.
class Engine {
 public:
  using result_type = std::uint64_t;

  explicit Engine(RngSeed key) {
    std::uint64_t x = key.seed ^ (0x9E6C63D0876A9A35ULL * (key.stream + 1));
    for (auto& s : state_) s = detail::splitmix64(x);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1); never returns an endpoint, so
  /// log() and tan() of affine images stay finite.
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exp(1) variate.
  double exponential() { return -std::log(uniform()); }

  /// N(0, 1) variate (Box-Muller; the paired value is cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace htc
