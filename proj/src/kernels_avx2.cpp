// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the runtime cpu check in kernels.cpp.

#include "kernels_impl.hpp"

#if defined(UCIRC_X86_SIMD)

#include <immintrin.h>

#include <cmath>

namespace ucirc::kernels::detail {

void avx2_eval_series(const double* basis, std::size_t n, std::size_t nterms,
                      const double* coeff, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) _mm256_storeu_pd(out + j, _mm256_setzero_pd());
  for (; j < n; ++j) out[j] = 0.0;
  for (std::size_t k = 0; k < nterms; ++k) {
    const __m256d c = _mm256_set1_pd(coeff[k]);
    const double* row = basis + k * n;
    for (j = 0; j + 4 <= n; j += 4) {
      const __m256d acc = _mm256_loadu_pd(out + j);
      const __m256d b = _mm256_loadu_pd(row + j);
      _mm256_storeu_pd(out + j, _mm256_fmadd_pd(c, b, acc));
    }
    for (; j < n; ++j) out[j] = std::fma(coeff[k], row[j], out[j]);
  }
}

std::size_t avx2_count_quadform_row(double q, double q_scale, double partial,
                                    std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return 0;
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d vscale = _mm256_set1_pd(q_scale);
  const __m256d vpartial = _mm256_set1_pd(partial);
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  // consecutive integers are exact in double, so building lanes by addition
  // matches the scalar int->double conversion bit for bit
  __m256d x = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(lo)),
                            _mm256_setr_pd(0.0, 1.0, 2.0, 3.0));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_div_pd(x, vscale);
    const __m256d t = _mm256_fmadd_pd(vq, _mm256_mul_pd(y, y), vpartial);
    const __m256d in = _mm256_cmp_pd(t, vone, _CMP_LE_OQ);
    count += static_cast<std::size_t>(_mm_popcnt_u32(
        static_cast<unsigned>(_mm256_movemask_pd(in))));
    x = _mm256_add_pd(x, step);
  }
  for (; i < n; ++i) {
    const double y = static_cast<double>(lo + static_cast<std::int64_t>(i)) / q_scale;
    count += (std::fma(q, y * y, partial) <= 1.0);
  }
  return count;
}

void avx2_mask_quadform_row(double q, double q_scale, double partial,
                            std::int64_t lo, std::int64_t hi, unsigned char* mask) {
  if (hi < lo) return;
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d vscale = _mm256_set1_pd(q_scale);
  const __m256d vpartial = _mm256_set1_pd(partial);
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d x = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(lo)),
                            _mm256_setr_pd(0.0, 1.0, 2.0, 3.0));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_div_pd(x, vscale);
    const __m256d t = _mm256_fmadd_pd(vq, _mm256_mul_pd(y, y), vpartial);
    const unsigned m = static_cast<unsigned>(
        _mm256_movemask_pd(_mm256_cmp_pd(t, vone, _CMP_LE_OQ)));
    mask[i] = m & 1u;
    mask[i + 1] = (m >> 1) & 1u;
    mask[i + 2] = (m >> 2) & 1u;
    mask[i + 3] = (m >> 3) & 1u;
    x = _mm256_add_pd(x, step);
  }
  for (; i < n; ++i) {
    const double y = static_cast<double>(lo + static_cast<std::int64_t>(i)) / q_scale;
    mask[i] = (std::fma(q, y * y, partial) <= 1.0) ? 1 : 0;
  }
}

}  // namespace ucirc::kernels::detail

#endif  // UCIRC_X86_SIMD
