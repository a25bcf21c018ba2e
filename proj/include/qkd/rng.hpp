#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace qkd {

/// Deterministic, portable PRNG built on SplitMix64 (Steele/Lea/Flood
/// finalizer). State advances by the 64-bit golden-ratio increment; output is
/// the standard xor-shift-multiply scramble. Identical seeds give identical
/// streams on every platform.
///
/// derive(stream, index) produces an independent generator keyed on the
/// *original* seed plus a (stream, index) counter pair, regardless of how
/// much this instance has already been consumed. Simulations hand each pair
/// or qubit its own derived stream so runs are reproducible and safely
/// parallelizable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return scramble(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound). Multiply-shift mapping; the bias is
  /// bound/2^64 which is far below anything our statistics can see.
  std::uint64_t uniform_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  /// Standard normal via Box-Muller (caches the second value).
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  Rng derive(std::uint64_t stream, std::uint64_t index) const {
    std::uint64_t s = scramble(root_ + 0x9E3779B97F4A7C15ull * (stream + 1));
    s = scramble(s + 0xD1B54A32D192ED03ull * (index + 1));
    return Rng(s);
  }

  std::uint64_t seed() const { return root_; }

 private:
  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t root_;
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// Fisher-Yates shuffle driven by an explicit Rng.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace qkd
