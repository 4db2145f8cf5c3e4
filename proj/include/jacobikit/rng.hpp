#ifndef JACOBIKIT_RNG_HPP
#define JACOBIKIT_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "jacobikit/rational.hpp"

namespace jacobikit {

// Deterministic sample generator. All randomized machinery (sample
// points, random test polynomials) draws from this so that a fixed
// seed reproduces a run bit for bit.
class SampleGen {
public:
  explicit SampleGen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1) with full 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [-1,1].
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Small nonzero rational, numerator in [-max_num, max_num],
  // denominator in [1, max_den].
  Rational small_rational(int max_num = 4, int max_den = 3) {
    int num = 0;
    while (num == 0) num = uniform_int(-max_num, max_num);
    return Rational(num, uniform_int(1, max_den));
  }

private:
  std::mt19937_64 eng_;
};

// `count` points drawn uniformly from [-1,1]^dim.
std::vector<std::vector<double>> sample_points(int count, int dim, std::uint64_t seed);

}  // namespace jacobikit

#endif
