#include <doctest.h>

#include <cmath>

#include "ucirc/lattice.hpp"
#include "ucirc/montecarlo.hpp"

using namespace ucirc;

TEST_CASE("moebius sieve") {
  const MoebiusTable mu = moebius_sieve(100);
  CHECK(mu(1) == 1);
  CHECK(mu(2) == -1);
  CHECK(mu(4) == 0);
  CHECK(mu(6) == 1);
  CHECK(mu(30) == -1);
  CHECK(mu(49) == 0);
  long long mertens = 0;
  for (long long k = 1; k <= 100; ++k) mertens += mu(k);
  CHECK(mertens == 1);  // M(100), brute-force oracle
}

TEST_CASE("zeta values") {
  CHECK(zeta_value(2, 1e-12) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
  CHECK(zeta_value(4, 1e-12) ==
        doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-12));
  CHECK(zeta_value(20, 1e-12) - 1.0 < 1e-6);
  CHECK(zeta_value(2) > zeta_value(3));
  CHECK(zeta_value(3) > zeta_value(4));
  CHECK_THROWS_AS(zeta_value(1, 1e-8), ArgumentError);
}

TEST_CASE("ball and ellipsoid volumes") {
  CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(ellipsoid_volume(WeightVector::flat(1)) ==
        doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ellipsoid_volume(WeightVector::flat(2)) ==
        doctest::Approx(0.5 * 4.0 * kPi / 3.0).epsilon(1e-14));
  // homogeneity of degree m+1
  const WeightVector w = WeightVector::bombieri(2);
  CHECK(ellipsoid_volume(w.scaled(1.7)) ==
        doctest::Approx(std::pow(1.7, 3) * ellipsoid_volume(w)).epsilon(1e-13));
}

TEST_CASE("chi") {
  CHECK(chi(2) == 1);
  CHECK(chi(3) == 0);
  CHECK(chi(1) == 0);
}

TEST_CASE("disk point counts") {
  const Region disk = Region::ball(2);
  CHECK(count_integer_points(disk, 1.0) == 5);
  CHECK(count_integer_points(disk, 2.0) == 13);
  CHECK(count_integer_points(disk, 3.0) >= count_integer_points(disk, 2.0));
  const CoprimeCount c1 = count_coprime_points(disk, 1.0);
  CHECK(c1.direct == 4);
  CHECK(c1.moebius == 4);
  const CoprimeCount c2 = count_coprime_points(disk, 2.0);
  CHECK(c2.direct == 8);
  CHECK(c2.moebius == 8);
}

TEST_CASE("disk coprime density approaches 6/pi") {
  const CoprimeCount cc = count_coprime_points(Region::ball(2), 500.0);
  const double ratio = static_cast<double>(cc.direct) / (500.0 * 500.0);
  CHECK(std::fabs(ratio - 6.0 / kPi) / (6.0 / kPi) < 0.01);
}

TEST_CASE("coprime never exceeds total and routes agree on random regions") {
  SubstreamRng rng = SubstreamRng::for_sample(808, 0);
  for (int i = 0; i < 8; ++i) {
    std::vector<double> lam(static_cast<size_t>(2));
    for (auto& v : lam) v = 0.5 + 2.0 * rng.next_unit();
    const Region e = Region::weight_ellipsoid(WeightVector(1, lam));
    const double Q = 3.0 + 20.0 * rng.next_unit();
    const long long total = count_integer_points(e, Q);
    const CoprimeCount cc = count_coprime_points(e, Q);
    CHECK(cc.direct == cc.moebius);
    CHECK(cc.direct <= total);
  }
}

TEST_CASE("predicate-only regions take the generic path and agree") {
  const WeightVector w(2, {1.25, 0.75, 2.0});
  const Region fast = Region::weight_ellipsoid(w);
  const std::vector<double> q = fast.diag_form;
  const Region slow = Region::from_predicate(3, fast.bounding_radius, [q](const double* y) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s = std::fma(q[static_cast<size_t>(k)], y[k] * y[k], s);
    return s <= 1.0;
  });
  for (const double Q : {4.0, 9.5, 17.0}) {
    CHECK(count_integer_points(fast, Q) == count_integer_points(slow, Q));
    const CoprimeCount a = count_coprime_points(fast, Q);
    const CoprimeCount b = count_coprime_points(slow, Q);
    CHECK(a.direct == b.direct);
  }
}

TEST_CASE("scan results are independent of the thread partitioning") {
  const Region e = Region::weight_ellipsoid(WeightVector::flat(2));
  LatticeOptions one, four;
  one.threads = 1;
  four.threads = 4;
  CHECK(count_integer_points(e, 30.0, one) == count_integer_points(e, 30.0, four));
  CHECK(count_coprime_points(e, 30.0, one).direct ==
        count_coprime_points(e, 30.0, four).direct);
}

TEST_CASE("budget is enforced with the box cardinality") {
  LatticeOptions tight;
  tight.budget = 10;
  try {
    count_integer_points(Region::ball(2), 100.0, tight);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.cardinality == 201ULL * 201ULL);
  }
}

TEST_CASE("region validation") {
  CHECK_THROWS_AS(Region::ball(0), ArgumentError);
  CHECK_THROWS_AS(Region::from_predicate(2, -1.0, nullptr), ArgumentError);
  CHECK_THROWS_AS(count_integer_points(Region::ball(2), 0.0), ArgumentError);
}
