#include <doctest.h>

#include <cmath>

#include "ucirc/density.hpp"
#include "ucirc/montecarlo.hpp"

using namespace ucirc;

TEST_CASE("coefficient map from forced normals") {
  const WeightVector w = WeightVector::bombieri(2);  // lambdas (1, 2, sqrt6)
  std::vector<double> etas{0.0, 0.0, 2.0};
  const TrigPoly f = trig_poly_from_normals(w, etas);
  CHECK(f.c[0] == doctest::Approx(w.lambdas[2]).epsilon(1e-15));  // lam_m * 2 / 2
  CHECK(f.c[1] == 0.0);
  CHECK(f.c[2] == 0.0);
  CHECK_THROWS_AS(trig_poly_from_normals(w, {1.0}), ArgumentError);
}

TEST_CASE("seed reproducibility of the sample stream") {
  const WeightVector w = WeightVector::flat(3);
  for (std::uint64_t i = 0; i < 5; ++i) {
    SubstreamRng a = SubstreamRng::for_sample(1234, i);
    SubstreamRng b = SubstreamRng::for_sample(1234, i);
    CHECK(sample_trig_poly(w, a).c == sample_trig_poly(w, b).c);
  }
  SubstreamRng a = SubstreamRng::for_sample(1234, 0);
  SubstreamRng b = SubstreamRng::for_sample(1235, 0);
  CHECK(sample_trig_poly(w, a).c != sample_trig_poly(w, b).c);
}

TEST_CASE("count_real_roots on fixed polynomials") {
  CHECK(count_real_roots(TrigPoly{1, {0.0, 1.0}}, Arc::full_circle()) == 2);   // cos t
  CHECK(count_real_roots(TrigPoly{1, {1.0, 0.0}}, Arc::full_circle()) == 0);   // 1
  CHECK(count_real_roots(TrigPoly{1, {0.5, 1.0}}, Arc::full_circle()) == 2);   // 1/2+cos
  CHECK(count_real_roots(TrigPoly{1, {0.5, 1.0}}, Arc(0.0, kPi)) == 1);
  CHECK_THROWS_AS(count_real_roots(TrigPoly{1, {0.0, 0.0}}, Arc::full_circle()),
                  ArgumentError);
}

TEST_CASE("root scan finds locations and tangencies") {
  // 1 + cos(2t) = 2 cos^2 t grazes zero at +-pi/2
  const TrigPoly f{2, {1.0, 0.0, 1.0}};
  const RootScan scan = scan_real_roots(f, Arc::full_circle());
  REQUIRE(scan.count == 2);
  CHECK(std::fabs(scan.roots[0] + kPi / 2) < 1e-6);
  CHECK(std::fabs(scan.roots[1] - kPi / 2) < 1e-6);

  // simple crossings are bisected to high accuracy
  const RootScan cross = scan_real_roots(TrigPoly{1, {0.5, 1.0}}, Arc::full_circle());
  REQUIRE(cross.count == 2);
  CHECK(cross.roots[0] == doctest::Approx(-2.0 * kPi / 3.0).epsilon(1e-10));
  CHECK(cross.roots[1] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-10));
  CHECK(cross.tangencies == 0);
}

TEST_CASE("estimator hits the quadrature expectation") {
  const WeightVector w = WeightVector::flat(1);
  const McEstimate est = estimate_expected_roots(w, Arc::full_circle(), 30000, 2024);
  const double target = 4.0 * std::atan(std::sqrt(2.0)) / kPi;
  CHECK(std::fabs(est.mean - target) <= 4.0 * est.stderr_);
  CHECK(est.samples == 30000);
  CHECK(est.seed == 2024);
  CHECK(est.redraws == 0);

  const McEstimate half = estimate_expected_roots(w, Arc(0.0, kPi), 30000, 2024);
  CHECK(std::fabs(half.mean - 0.5 * target) <= 4.0 * half.stderr_ + 4.0 * est.stderr_);

  const McEstimate degenerate = estimate_expected_roots(w, Arc(1.0, 1.0 + 1e-12), 100, 1);
  CHECK(degenerate.mean == 0.0);

  CHECK_THROWS_AS(estimate_expected_roots(w, Arc::full_circle(), 1, 1), ArgumentError);
}

TEST_CASE("estimates are identical under any worker partitioning") {
  const WeightVector w = WeightVector::bombieri(2);
  const Arc arc(0.2, 2.9);
  const McEstimate t1 = estimate_expected_roots(w, arc, 4000, 99, 1);
  const McEstimate t3 = estimate_expected_roots(w, arc, 4000, 99, 3);
  const McEstimate t8 = estimate_expected_roots(w, arc, 4000, 99, 8);
  CHECK(t1.to_json() == t3.to_json());
  CHECK(t1.to_json() == t8.to_json());
}

TEST_CASE("root distribution sums to one and matches the mean") {
  const WeightVector w = WeightVector::flat(1);
  const long long n = 20000;
  const auto dist = mc_root_distribution(w, Arc::full_circle(), n, 31);
  REQUIRE(dist.size() == 3);  // l = 0, 1, 2
  double sum = 0.0;
  for (const auto& [l, p] : dist) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.at(1) < 0.01);  // odd counts only from tangency-grade events
  const double target = 2.0 * std::atan(std::sqrt(2.0)) / kPi;
  CHECK(std::fabs(dist.at(2) - target) < 0.02);

  const McEstimate est = estimate_expected_roots(w, Arc::full_circle(), n, 31);
  long long weighted = 0;
  for (const auto& [l, p] : dist) weighted += l * std::llround(p * static_cast<double>(n));
  CHECK(weighted == std::llround(est.mean * static_cast<double>(n)));
}

TEST_CASE("ball sampler basics") {
  for (int d = 1; d <= 4; ++d) {
    for (int i = 0; i < 500; ++i) {
      SubstreamRng rng = SubstreamRng::for_sample(555, static_cast<std::uint64_t>(i + 1000 * d));
      const auto x = sample_ball_point(d, rng);
      REQUIRE(static_cast<int>(x.size()) == d);
      double ss = 0.0;
      for (double v : x) ss += v * v;
      CHECK(ss <= 1.0);
    }
  }
  SubstreamRng rng = SubstreamRng::for_sample(1, 2);
  CHECK_THROWS_AS(sample_ball_point(0, rng), ArgumentError);
}

TEST_CASE("mc estimate json shape") {
  McEstimate est;
  est.mean = 1.5;
  est.stderr_ = 0.25;
  est.samples = 10;
  est.seed = 7;
  CHECK(est.to_json() == "{\"mean\":1.5,\"stderr\":0.25,\"samples\":10,\"seed\":7}");
}
