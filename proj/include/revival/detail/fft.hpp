#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace revival::detail {

// FFTW planning is not thread-safe; execution on a private plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalized DFT.  sign = +1 computes sum_m a_m e^{+2 pi i m n / N}.
inline void dft_inplace(std::vector<std::complex<double>>& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr,
                            sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace revival::detail
