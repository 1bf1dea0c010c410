#include <doctest.h>

#include <cmath>
#include <vector>

#include "ucirc/kernels.hpp"
#include "ucirc/montecarlo.hpp"

using namespace ucirc;
using namespace ucirc::kernels;

namespace {

struct BackendGuard {
  Backend saved = active_backend();
  ~BackendGuard() { set_backend(saved); }
};

}  // namespace

TEST_CASE("eval_series matches a plain fma loop") {
  const size_t n = 37, terms = 4;
  std::vector<double> basis(n * terms), coeff{0.5, -1.25, 2.0, 0.125}, out(n);
  SubstreamRng rng = SubstreamRng::for_sample(99, 0);
  for (auto& v : basis) v = rng.next_normal();
  eval_series(basis.data(), n, terms, coeff.data(), out.data());
  for (size_t j = 0; j < n; ++j) {
    double want = 0.0;
    for (size_t k = 0; k < terms; ++k) want = std::fma(coeff[k], basis[k * n + j], want);
    CHECK(out[j] == want);
  }
}

TEST_CASE("quadform row count equals naive membership count") {
  const double q = 2.0, scale = 10.0, partial = 0.25;
  size_t naive = 0;
  for (long long x = -15; x <= 15; ++x) {
    const double y = static_cast<double>(x) / scale;
    naive += (std::fma(q, y * y, partial) <= 1.0);
  }
  CHECK(count_quadform_row(q, scale, partial, -15, 15) == naive);
  CHECK(count_quadform_row(q, scale, partial, 5, 4) == 0);
}

TEST_CASE("scalar and avx2 backends are bit-identical" *
          doctest::skip(!avx2_available())) {
  BackendGuard guard;
  SubstreamRng rng = SubstreamRng::for_sample(7, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.next_u64() % 130;
    const size_t terms = 1 + rng.next_u64() % 9;
    std::vector<double> basis(n * terms), coeff(terms), a(n), b(n);
    for (auto& v : basis) v = rng.next_normal();
    for (auto& v : coeff) v = rng.next_normal();
    set_backend(Backend::Scalar);
    eval_series(basis.data(), n, terms, coeff.data(), a.data());
    set_backend(Backend::Avx2);
    eval_series(basis.data(), n, terms, coeff.data(), b.data());
    REQUIRE(a == b);

    const double q = 0.1 + 3.0 * rng.next_unit();
    const double scale = 4.0 + 60.0 * rng.next_unit();
    const double partial = rng.next_unit() * 0.9;
    const long long lo = -static_cast<long long>(rng.next_u64() % 300);
    const long long hi = static_cast<long long>(rng.next_u64() % 300);
    std::vector<unsigned char> ma(static_cast<size_t>(hi - lo + 1)), mb(ma.size());
    set_backend(Backend::Scalar);
    const size_t ca = count_quadform_row(q, scale, partial, lo, hi);
    mask_quadform_row(q, scale, partial, lo, hi, ma.data());
    set_backend(Backend::Avx2);
    const size_t cb = count_quadform_row(q, scale, partial, lo, hi);
    mask_quadform_row(q, scale, partial, lo, hi, mb.data());
    REQUIRE(ca == cb);
    REQUIRE(ma == mb);
  }
}

TEST_CASE("backend selection is sticky and validated") {
  BackendGuard guard;
  set_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(backend_name(Backend::Scalar) == "scalar");
  if (!avx2_available()) CHECK_THROWS_AS(set_backend(Backend::Avx2), ArgumentError);
}
