#include "kernels_impl.hpp"

#include <cmath>

namespace ucirc::kernels::detail {

void scalar_eval_series(const double* basis, std::size_t n, std::size_t nterms,
                        const double* coeff, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t k = 0; k < nterms; ++k) {
    const double c = coeff[k];
    const double* row = basis + k * n;
    for (std::size_t j = 0; j < n; ++j) out[j] = std::fma(c, row[j], out[j]);
  }
}

std::size_t scalar_count_quadform_row(double q, double q_scale, double partial,
                                      std::int64_t lo, std::int64_t hi) {
  std::size_t count = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double y = static_cast<double>(x) / q_scale;
    count += (std::fma(q, y * y, partial) <= 1.0);
  }
  return count;
}

void scalar_mask_quadform_row(double q, double q_scale, double partial,
                              std::int64_t lo, std::int64_t hi, unsigned char* mask) {
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double y = static_cast<double>(x) / q_scale;
    mask[x - lo] = (std::fma(q, y * y, partial) <= 1.0) ? 1 : 0;
  }
}

}  // namespace ucirc::kernels::detail
