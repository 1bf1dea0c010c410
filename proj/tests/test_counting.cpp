#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "ucirc/counting.hpp"
#include "ucirc/density.hpp"
#include "ucirc/lattice.hpp"

using namespace ucirc;

namespace {

std::vector<long> half_of(const SymPoly& p) {
  std::vector<long> v;
  for (const auto& c : p.a) v.push_back(c.get_si());
  return v;
}

}  // namespace

TEST_CASE("enumeration at Q=3 matches the exhaustive list") {
  const auto stream = enumerate_sym_polys(WeightVector::flat(1), 3.0);
  const std::vector<std::vector<long>> want = {{1, -2}, {1, -1}, {1, 0}, {1, 1},
                                               {1, 2},  {2, -1}, {2, 0}, {2, 1}};
  REQUIRE(stream.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(half_of(stream[i]) == want[i]);
}

TEST_CASE("enumeration is empty below the smallest height") {
  CHECK(enumerate_sym_polys(WeightVector::flat(1), 1.0).empty());
}

TEST_CASE("enumeration is strictly lexicographic and height-complete") {
  const WeightVector w = WeightVector::flat(2);
  const double Q = 5.5;
  const auto stream = enumerate_sym_polys(w, Q);
  std::set<std::vector<long>> seen;
  std::vector<long> prev;
  for (const auto& p : stream) {
    const auto cur = half_of(p);
    if (!prev.empty()) CHECK(prev < cur);
    prev = cur;
    seen.insert(cur);
  }
  // brute-force box oracle with the same squared-height fold
  long long brute = 0;
  for (long a0 = 1; a0 <= 8; ++a0)
    for (long a1 = -8; a1 <= 8; ++a1)
      for (long a2 = -8; a2 <= 8; ++a2) {
        const SymPoly p = SymPoly::from_ints(2, {a0, a1, a2});
        if (elliptic_height(p, w) <= Q) {
          ++brute;
          CHECK(seen.count({a0, a1, a2}) == 1);
        }
      }
  CHECK(brute == static_cast<long long>(stream.size()));
  CHECK(max_leading_coefficient(w, Q) == half_of(stream.back())[0]);
}

TEST_CASE("phi report at Q=3 is the exhaustive oracle") {
  const WeightVector w = WeightVector::flat(1);
  const CountReport rep = phi_count(w, 3.0, Arc::full_circle());
  CHECK(rep.phi == 10);
  CHECK(rep.histogram.at(2) == 5);
  CHECK(rep.histogram.at(1) == 0);
  CHECK(rep.histogram.at(0) == 0);
  CHECK(rep.primitive_total == 7);
  CHECK(rep.reducible_primitive == 4);
  CHECK(rep.boundary_warnings == 0);
  CHECK(rep.ratio == doctest::Approx(10.0 / rep.main_term).epsilon(1e-15));

  const CountReport half = phi_count(w, 3.0, Arc(0.0, kPi));
  CHECK(half.phi == 5);

  const CountReport empty = phi_count(w, 1.0, Arc::full_circle());
  CHECK(empty.phi == 0);
  CHECK(empty.primitive_total == 0);
}

TEST_CASE("phi report for quartics matches an independent factorization oracle") {
  // frozen from a sympy run: full-circle phi, histogram, primitive and
  // reducible counts for flat weights at Q=6 and Q=10
  const WeightVector w = WeightVector::flat(2);
  const CountReport r6 = phi_count(w, 6.0, Arc::full_circle());
  CHECK(r6.phi == 324);
  CHECK(r6.histogram.at(0) == 19);
  CHECK(r6.histogram.at(2) == 56);
  CHECK(r6.histogram.at(4) == 53);
  CHECK(r6.primitive_total == 175);
  CHECK(r6.reducible_primitive == 2 * 47);

  const CountReport r10 = phi_count(w, 10.0, Arc::full_circle());
  CHECK(r10.phi == 1568);
  CHECK(r10.histogram.at(0) == 113);
  CHECK(r10.histogram.at(2) == 276);
  CHECK(r10.histogram.at(4) == 254);
  CHECK(r10.primitive_total == 797);
  CHECK(r10.reducible_primitive == 2 * 154);
}

TEST_CASE("reducible counts come back in both bookkeepings") {
  const ReducibleCount rc = reducible_count(WeightVector::flat(1), 3.0);
  CHECK(rc.stream == 2);
  CHECK(rc.full_sign == 4);
  const ReducibleCount none = reducible_count(WeightVector::flat(1), 1.0);
  CHECK(none.stream == 0);
  CHECK(none.full_sign == 0);
}

TEST_CASE("root histogram over primitives") {
  const auto fr = root_histogram(WeightVector::flat(1), 3.0, Arc::full_circle());
  CHECK(fr.at(2) == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK(fr.at(1) == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(fr.at(0) == 0.0);
  double sum = 0.0;
  for (const auto& [l, f] : fr) sum += f;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("main term formula") {
  const WeightVector w = WeightVector::flat(1);
  const double integral = 4.0 * std::atan(std::sqrt(2.0));
  const double coeff = kPi / (std::pow(2.0, 1.5) * kPi * (kPi * kPi / 6.0));
  CHECK(main_term(w, 100.0, Arc::full_circle(), 1e-10) ==
        doctest::Approx(coeff * integral * 1e4).epsilon(1e-9));
  // homogeneity in the weights: lambda-product scales, integral does not
  const WeightVector w2 = WeightVector::bombieri(2);
  const double c = 1.35;
  CHECK(main_term(w2.scaled(c), 10.0, Arc(0.1, 2.0), 1e-10) ==
        doctest::Approx(std::pow(c, 3) * main_term(w2, 10.0, Arc(0.1, 2.0), 1e-10))
            .epsilon(1e-10));
  // evenness halves the full circle
  CHECK(main_term(w, 50.0, Arc::full_circle(), 1e-10) ==
        doctest::Approx(2.0 * main_term(w, 50.0, Arc(0.0, kPi), 1e-10)).epsilon(1e-9));
}

TEST_CASE("convergence report structure") {
  CountingOptions opts;
  const auto rows =
      convergence_report(WeightVector::flat(1), Arc::full_circle(), {20.0, 40.0}, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].Q == 20.0);
  CHECK(rows[1].phi >= rows[0].phi);
  for (const auto& r : rows) {
    CHECK(r.scaled_error ==
          doctest::Approx(std::fabs(static_cast<double>(r.phi) - r.main_term) /
                          (r.Q * std::log(r.Q)))
              .epsilon(1e-12));
  }
  std::ostringstream os;
  convergence_to_csv(rows, os);
  CHECK(os.str().rfind("Q,phi,main_term,ratio,scaled_error\n", 0) == 0);
  CHECK_THROWS_AS(
      convergence_report(WeightVector::flat(1), Arc::full_circle(), {40.0, 20.0}, opts),
      ArgumentError);
}

TEST_CASE("candidate budget guards huge enumerations") {
  CountingOptions opts;
  opts.candidate_budget = 100;
  CHECK_THROWS_AS(phi_count(WeightVector::flat(1), 100.0, Arc::full_circle(), opts),
                  ResourceError);
  opts.budget_override = true;
  CHECK(phi_count(WeightVector::flat(1), 20.0, Arc::full_circle(), opts).phi > 0);
}

TEST_CASE("count report json carries the exact field set") {
  const CountReport rep = phi_count(WeightVector::flat(1), 3.0, Arc::full_circle());
  const std::string js = rep.to_json();
  for (const char* key :
       {"\"m\":", "\"weights\":", "\"Q\":", "\"arc\":", "\"phi\":", "\"histogram\":",
        "\"primitive_total\":", "\"reducible_primitive\":", "\"main_term\":",
        "\"ratio\":", "\"boundary_warnings\":"}) {
    CHECK(js.find(key) != std::string::npos);
  }
  CHECK(js.find("\"phi\":10") != std::string::npos);
}
