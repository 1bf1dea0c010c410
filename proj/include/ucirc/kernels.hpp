#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace ucirc::kernels {

// Data-parallel inner loops behind the Monte Carlo grid evaluation and the
// lattice box scans. Every kernel has a scalar reference implementation and
// an AVX2 variant selected at runtime; both perform the identical sequence
// of IEEE operations per element (explicit fma, one division by q_scale), so
// results are bit-identical across backends and the equivalence tests can
// assert exact equality.

enum class Backend { Scalar, Avx2 };

Backend active_backend();
void set_backend(Backend b);  // throws ArgumentError if unavailable
bool avx2_available();
std::string backend_name(Backend b);

/// out[j] = sum_k coeff[k] * basis[k*n + j], accumulated in ascending k with
/// fma. basis is k-major: nterms contiguous rows of length n.
void eval_series(const double* basis, std::size_t n, std::size_t nterms,
                 const double* coeff, double* out);

/// Membership count along one lattice row: the number of integer x in
/// [lo, hi] with fma(q, (x/q_scale)^2, partial) <= 1.0.
std::size_t count_quadform_row(double q, double q_scale, double partial,
                               std::int64_t lo, std::int64_t hi);

/// Same decision per x, but writes one byte (0/1) per row entry instead of
/// counting. mask must hold hi-lo+1 bytes.
void mask_quadform_row(double q, double q_scale, double partial,
                       std::int64_t lo, std::int64_t hi, unsigned char* mask);

}  // namespace ucirc::kernels
