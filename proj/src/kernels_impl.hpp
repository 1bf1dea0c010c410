#pragma once

#include <cstddef>
#include <cstdint>

namespace ucirc::kernels::detail {

void scalar_eval_series(const double* basis, std::size_t n, std::size_t nterms,
                        const double* coeff, double* out);
std::size_t scalar_count_quadform_row(double q, double q_scale, double partial,
                                      std::int64_t lo, std::int64_t hi);
void scalar_mask_quadform_row(double q, double q_scale, double partial,
                              std::int64_t lo, std::int64_t hi, unsigned char* mask);

#if defined(UCIRC_X86_SIMD)
void avx2_eval_series(const double* basis, std::size_t n, std::size_t nterms,
                      const double* coeff, double* out);
std::size_t avx2_count_quadform_row(double q, double q_scale, double partial,
                                    std::int64_t lo, std::int64_t hi);
void avx2_mask_quadform_row(double q, double q_scale, double partial,
                            std::int64_t lo, std::int64_t hi, unsigned char* mask);
#endif

}  // namespace ucirc::kernels::detail
