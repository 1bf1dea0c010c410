#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ucirc/density.hpp"

using namespace ucirc;

TEST_CASE("domain type invariants") {
  CHECK_THROWS_AS(WeightVector(1, {1.0}), ArgumentError);            // wrong length
  CHECK_THROWS_AS(WeightVector(2, {1.0, -1.0, 2.0}), ArgumentError);  // nonpositive
  CHECK_THROWS_AS(WeightVector(0, {1.0}), ArgumentError);
  CHECK_THROWS_AS(Arc(2.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(Arc(-4.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(Arc(0.0, 4.0), ArgumentError);
  CHECK(Arc::full_circle().is_full_circle());
  CHECK_FALSE(Arc(0.0, kPi).is_full_circle());
  const WeightVector b3 = WeightVector::bombieri(3);
  CHECK(b3.lambdas[0] == 1.0);
  CHECK(b3.lambdas[1] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK(b3.lambdas[3] == doctest::Approx(std::sqrt(20.0)).epsilon(1e-15));
}

TEST_CASE("kernel diagonal spot values") {
  const WeightVector flat = WeightVector::flat(1);
  const KernelDiagonal a = kernel_diag(flat, kPi / 2);
  CHECK(a.K == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::fabs(a.Kx) < 1e-15);
  CHECK(a.Kxy == doctest::Approx(1.0).epsilon(1e-14));

  // all sine factors vanish exactly at the symbolic angles
  for (const auto& w : {WeightVector::flat(3), WeightVector::bombieri(2)}) {
    for (const double t : {0.0, kPi, -kPi}) {
      const KernelDiagonal kd = kernel_diag(w, t);
      CHECK(kd.Kx == 0.0);
      CHECK(kd.Kxy == 0.0);
      double want = 0.5 * w.lambdas.back() * w.lambdas.back();
      for (int k = 1; k <= w.m; ++k) {
        const double lam = w.lambdas[static_cast<size_t>(w.m - k)];
        want += lam * lam;
      }
      CHECK(kd.K == doctest::Approx(want).epsilon(1e-15));
    }
  }

  const KernelDiagonal b = kernel_diag(WeightVector::bombieri(1), kPi / 3);
  CHECK(b.K == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(b.Kx == doctest::Approx(-std::sqrt(3.0) / 4.0).epsilon(1e-13));
  CHECK(b.Kxy == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("density_generic spot values and exact zeros") {
  const WeightVector flat = WeightVector::flat(1);
  CHECK(density_generic(flat, kPi / 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(density_generic(WeightVector::bombieri(1), kPi / 3) ==
        doctest::Approx(2.0 * std::sqrt(3.0) / 5.0).epsilon(1e-13));
  for (const auto& w : {WeightVector::flat(4), WeightVector::bombieri(3)}) {
    CHECK(density_generic(w, 0.0) == 0.0);
    CHECK(density_generic(w, kPi) == 0.0);
    CHECK(density_generic(w, -kPi) == 0.0);
  }
}

TEST_CASE("closed forms") {
  CHECK(density_bombieri(1, kPi / 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(density_bombieri(1, kPi / 3) ==
        doctest::Approx(2.0 * std::sqrt(3.0) / 5.0).epsilon(1e-13));
  CHECK(density_bombieri(4, 0.0) == 0.0);
  CHECK(density_flat(1, kPi / 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(density_flat(1, kPi / 3) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-13));
  // inside the delegation window the flat closed form is the generic value
  CHECK(density_flat(2, 1e-9) == density_generic(WeightVector::flat(2), 1e-9));
  // no visible seam at the window boundary
  const double just_out = 1.0001e-4, just_in = 0.9999e-4;
  CHECK(density_flat(3, just_out) ==
        doctest::Approx(density_flat(3, just_in)).epsilon(1e-6));
}

TEST_CASE("closed forms track the generic kernel on a grid") {
  for (int m = 1; m <= 7; ++m) {
    const WeightVector wb = WeightVector::bombieri(m);
    const WeightVector wf = WeightVector::flat(m);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double t = -kPi + 2.0 * kPi * (i + 0.5) / 500.0;
      if (std::min({std::fabs(t), std::fabs(t - kPi), std::fabs(t + kPi)}) < 1e-4) continue;
      const double pb = density_generic(wb, t);
      worst = std::max(worst, std::fabs(density_bombieri(m, t) - pb) / (1.0 + pb));
      const double pf = density_generic(wf, t);
      worst = std::max(worst, std::fabs(density_flat(m, t) - pf) / (1.0 + pf));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("integrate_density against the closed-form antiderivative") {
  const WeightVector flat = WeightVector::flat(1);
  const double full = integrate_density(flat, Arc::full_circle(), 1e-10);
  CHECK(full == doctest::Approx(4.0 * std::atan(std::sqrt(2.0))).epsilon(1e-9));
  const double half = integrate_density(flat, Arc(0.0, kPi), 1e-10);
  CHECK(half == doctest::Approx(2.0 * std::atan(std::sqrt(2.0))).epsilon(1e-9));
  CHECK(integrate_density(flat, Arc(1.0, 1.0 + 1e-9), 1e-10) ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(expected_roots(flat, Arc::full_circle(), 1e-10) ==
        doctest::Approx(4.0 * std::atan(std::sqrt(2.0)) / kPi).epsilon(1e-9));
  CHECK_THROWS_AS(integrate_density(flat, Arc::full_circle(), -1.0), ArgumentError);
}

TEST_CASE("density_profile grid and method checks") {
  const WeightVector flat = WeightVector::flat(1);
  const DensityProfile prof = density_profile(flat, Arc(0.0, kPi), 3, DensityMethod::Generic);
  REQUIRE(prof.grid.size() == 3);
  CHECK(prof.grid[0].first == 0.0);
  CHECK(prof.grid[1].first == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(prof.grid[1].second == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(prof.grid[2].first == kPi);

  CHECK_THROWS_AS(density_profile(flat, Arc(0.0, 1.0), 1, DensityMethod::Generic),
                  ArgumentError);
  CHECK_THROWS_AS(
      density_profile(flat, Arc(0.0, 1.0), 10, DensityMethod::BombieriClosed),
      ArgumentError);
  CHECK_THROWS_AS(
      density_profile(WeightVector(1, {1.0, 2.0}), Arc(0.0, 1.0), 10,
                      DensityMethod::FlatClosed),
      ArgumentError);

  // figure-shape qualities: even, vanishing at 0 and +-pi, positive inside
  const DensityProfile fig =
      density_profile(WeightVector::bombieri(3), Arc::full_circle(), 1001,
                      DensityMethod::BombieriClosed);
  const auto& g = fig.grid;
  REQUIRE(g.size() == 1001);
  CHECK(std::fabs(g.front().second) < 1e-10);
  CHECK(std::fabs(g.back().second) < 1e-10);
  CHECK(std::fabs(g[500].second) < 1e-10);  // t = 0
  double peak = 0.0;
  for (size_t i = 0; i < g.size(); ++i) {
    peak = std::max(peak, g[i].second);
    CHECK(g[i].second == doctest::Approx(g[g.size() - 1 - i].second).epsilon(1e-9));
  }
  CHECK(peak > 1.0);

  // parallel grid evaluation is order-preserving
  const DensityProfile par =
      density_profile(WeightVector::bombieri(3), Arc::full_circle(), 1001,
                      DensityMethod::BombieriClosed, 3);
  CHECK(par.grid == fig.grid);
}

TEST_CASE("profile csv round-trips doubles") {
  const DensityProfile prof =
      density_profile(WeightVector::flat(2), Arc(-1.0, 2.0), 7, DensityMethod::Generic);
  std::ostringstream os;
  prof.to_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,p");
  for (const auto& [t, p] : prof.grid) {
    REQUIRE(std::getline(is, line));
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(0, comma)) == t);
    CHECK(std::stod(line.substr(comma + 1)) == p);
  }
}
