#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ucirc/common.hpp"

namespace ucirc {

/// Cosine polynomial f(t) = c_0 + sum_{k=1}^m c_k cos(kt).
struct TrigPoly {
  int m;
  std::vector<double> c;  // c_0..c_m

  double eval(double t) const;
  double eval_derivative(double t) const;
  bool identically_zero() const;
};

/// Counter-based substream generator. Stream derivation: the state for
/// sample i is splitmix64_mix(splitmix64_mix(seed) + GOLDEN * (i+1)), and the
/// stream then advances as plain SplitMix64. Draws for one sample never
/// depend on other samples, so estimates are identical under any worker
/// partitioning.
class SubstreamRng {
public:
  static SubstreamRng for_sample(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  double next_unit();         // (0, 1]
  double next_normal();       // standard Gaussian (Box-Muller, cached pair)
  double next_exponential();  // rate 1

private:
  explicit SubstreamRng(std::uint64_t state) : state_(state) {}
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Coefficient map eta -> F: c_0 = lam_m eta_m / 2, c_k = lam_{m-k} eta_{m-k}
/// / sqrt(2) for k = 1..m.
TrigPoly trig_poly_from_normals(const WeightVector& w, const std::vector<double>& etas);

/// F(t) = lam_m/2 eta_m + (1/sqrt2) sum_{k=1}^m lam_{m-k} eta_{m-k} cos(kt),
/// eta i.i.d. standard normal drawn from rng in index order eta_0..eta_m.
TrigPoly sample_trig_poly(const WeightVector& w, SubstreamRng& rng);

struct RootScan {
  int count = 0;
  std::vector<double> roots;
  int tangencies = 0;
};

/// Zeros of f on the closed arc: sign changes on a uniform grid of
/// 64*(m+1) points per pi of arc length, each bracket bisected to width
/// 1e-12; grazing near-zeros (|f| < 1e-10 local minimum without sign change)
/// are resolved by the sign of f' and reported as tangencies.
/// Throws ArgumentError for the identically zero polynomial.
RootScan scan_real_roots(const TrigPoly& f, const Arc& arc);
int count_real_roots(const TrigPoly& f, const Arc& arc);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  long long redraws = 0;  // degenerate all-zero draws that were redrawn

  std::string to_json() const;  // {"mean":..,"stderr":..,"samples":..,"seed":..}
};

McEstimate estimate_expected_roots(const WeightVector& w, const Arc& arc,
                                   long long samples, std::uint64_t seed,
                                   int threads = 1);

/// Empirical distribution of the arc root count over samples draws; keys
/// 0..2m always present, probabilities sum to 1.
std::map<int, double> mc_root_distribution(const WeightVector& w, const Arc& arc,
                                           long long samples, std::uint64_t seed,
                                           int threads = 1);

/// Uniform point in the d-dimensional unit ball via the Gaussian-exponential
/// normalization (eta_0..eta_{d-1}) / sqrt(sum eta^2 + 2Z), Z ~ Exp(1).
std::vector<double> sample_ball_point(int d, SubstreamRng& rng);

}  // namespace ucirc
