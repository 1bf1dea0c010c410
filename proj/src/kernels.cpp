#include "ucirc/kernels.hpp"

#include <atomic>

#include "kernels_impl.hpp"
#include "ucirc/common.hpp"

namespace ucirc::kernels {

namespace {

bool detect_avx2() {
#if defined(UCIRC_X86_SIMD)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Backend> g_backend{detect_avx2() ? Backend::Avx2 : Backend::Scalar};

}  // namespace

bool avx2_available() {
  static const bool ok = detect_avx2();
  return ok;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw ArgumentError("avx2 backend not available on this cpu/build");
  g_backend.store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void eval_series(const double* basis, std::size_t n, std::size_t nterms,
                 const double* coeff, double* out) {
#if defined(UCIRC_X86_SIMD)
  if (active_backend() == Backend::Avx2)
    return detail::avx2_eval_series(basis, n, nterms, coeff, out);
#endif
  detail::scalar_eval_series(basis, n, nterms, coeff, out);
}

std::size_t count_quadform_row(double q, double q_scale, double partial,
                               std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return 0;
#if defined(UCIRC_X86_SIMD)
  if (active_backend() == Backend::Avx2)
    return detail::avx2_count_quadform_row(q, q_scale, partial, lo, hi);
#endif
  return detail::scalar_count_quadform_row(q, q_scale, partial, lo, hi);
}

void mask_quadform_row(double q, double q_scale, double partial,
                       std::int64_t lo, std::int64_t hi, unsigned char* mask) {
  if (hi < lo) return;
#if defined(UCIRC_X86_SIMD)
  if (active_backend() == Backend::Avx2)
    return detail::avx2_mask_quadform_row(q, q_scale, partial, lo, hi, mask);
#endif
  detail::scalar_mask_quadform_row(q, q_scale, partial, lo, hi, mask);
}

}  // namespace ucirc::kernels
