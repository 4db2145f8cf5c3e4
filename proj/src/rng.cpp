#include "jacobikit/rng.hpp"

#include "jacobikit/parallel.hpp"

namespace jacobikit {

std::vector<std::vector<double>> sample_points(int count, int dim, std::uint64_t seed) {
  SampleGen gen(seed);
  std::vector<std::vector<double>> points(static_cast<std::size_t>(count));
  for (auto& p : points) {
    p.resize(static_cast<std::size_t>(dim));
    for (auto& x : p) x = gen.uniform_pm1();
  }
  return points;
}

bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace jacobikit
