#ifndef JACOBIKIT_PARALLEL_HPP
#define JACOBIKIT_PARALLEL_HPP

#include <cstddef>

namespace jacobikit {

// Execution policy for the data-parallel kernels (sampled residual
// evaluation, Schouten coefficient extraction). Serial is the
// reference implementation; Parallel uses OpenMP when compiled in.
// Results are written by index, so both paths produce identical
// output regardless of scheduling.
enum class ExecPolicy { Serial, Parallel };

inline constexpr ExecPolicy kDefaultExec = ExecPolicy::Parallel;

bool openmp_enabled() noexcept;

namespace detail {

template <typename Fn>
void run_indexed(std::size_t n, ExecPolicy exec, Fn&& fn);

}  // namespace detail

}  // namespace jacobikit

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jacobikit::detail {

template <typename Fn>
void run_indexed(std::size_t n, ExecPolicy exec, Fn&& fn) {
#ifdef _OPENMP
  if (exec == ExecPolicy::Parallel && n > 1) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace jacobikit::detail

#endif
