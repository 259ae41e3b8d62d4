#pragma once

#include <cmath>
#include <cstdint>

namespace eaq {

inline constexpr std::uint64_t kSmGolden = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kSmStream = 0xD1B54A32D192ED03ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based SplitMix64: output i is mix64(key + (i+1)*golden).
// The (key, counter) form gives O(1) stream derivation and replay that does
// not depend on thread scheduling. std:: distributions are avoided on purpose;
// their algorithms are implementation-defined and results would not be stable
// across toolchains.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static CounterRng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng(mix64(mix64(seed + kSmGolden) + (stream + 1) * kSmStream));
  }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(key_ + counter_ * kSmGolden);
  }

  // Uniform on (0,1), both endpoints excluded.
  double next_unit() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // rate > 0; result is strictly positive and finite.
  double next_exponential(double rate) { return -std::log(next_unit()) / rate; }

  // Box-Muller; the paired draw is cached.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Derives an independent child seed; used to fan a master seed out to
// replications so ensembles are reproducible for any worker count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed ^ 0xA0761D6478BD642Full) + (index + 1) * kSmStream);
}

}  // namespace eaq
