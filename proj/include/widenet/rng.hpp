#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace widenet {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stream seed for (master, purpose, index). Every random stream in the
// project is labelled this way, so a single master seed reproduces a whole
// report regardless of worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                                 std::uint64_t index = 0) noexcept {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the purpose tag
  for (unsigned char ch : purpose) h = (h ^ ch) * 1099511628211ull;
  return mix64(mix64(master ^ h) + index);
}

// Seeded random stream. The uniform and normal transforms are spelled out
// here rather than taken from std::*_distribution, whose output sequences are
// implementation-defined; this keeps byte-identical reruns portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // [0, 1) with 53-bit resolution
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // N(0, 1), Marsaglia polar; the second value of each pair is cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace widenet
