#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coco {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for (base seed, counter). Used to key per-month and
// per-replication generators so a month's draw does not depend on how many
// months were requested.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ splitmix64(~counter));
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t c0, std::uint64_t c1) {
  return stream_seed(stream_seed(seed, c0), c1);
}

// mt19937_64 plus explicit Box-Muller normals. std::normal_distribution is
// implementation-defined, so outputs would not be stable across standard
// libraries; this is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // (0, 1]
  double uniform() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace coco
