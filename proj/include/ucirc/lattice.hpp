#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ucirc/common.hpp"

namespace ucirc {

/// Bounded region given by a membership predicate plus a bounding radius
/// (every member has Euclidean norm <= bounding_radius). When diag_form is
/// nonempty the region is the axis-aligned ellipsoid
/// sum_k diag_form[k] * y_k^2 <= 1 and box scans take the vectorized row
/// path; the predicate and the kernels perform the identical fma fold, so
/// both paths make the same membership decision on every point.
struct Region {
  int dim;
  double bounding_radius;
  std::vector<double> diag_form;  // empty for predicate-only regions
  std::function<bool(const double*)> predicate;

  bool contains(const double* y) const;

  static Region ball(int d);
  static Region weight_ellipsoid(const WeightVector& w);  // h_w(a) <= 1, dim m+1
  static Region from_predicate(int d, double bounding_radius,
                               std::function<bool(const double*)> fn);
};

struct MoebiusTable {
  long long limit;
  std::vector<signed char> mu;  // mu[k] for k = 1..limit; mu[0] unused

  int operator()(long long k) const { return mu[static_cast<size_t>(k)]; }
};

MoebiusTable moebius_sieve(long long limit);

/// Truncated Dirichlet series with an Euler-Maclaurin tail; the remainder is
/// kept below tol.
double zeta_value(int d, double tol = 1e-12);

double ball_volume(int d);  // pi^{d/2} / Gamma(d/2 + 1)

/// Vol(E_w) = 2^{-m/2} lambda_0...lambda_m Vol(B^{m+1}).
double ellipsoid_volume(const WeightVector& w);

int chi(int d);  // 1 if d == 2, else 0

struct LatticeOptions {
  unsigned long long budget = 1000000000ULL;  // membership tests per call
  int threads = 1;
};

/// gamma(QA): integer points x with x/Q in A, by exhaustive box scan.
long long count_integer_points(const Region& a, double Q, const LatticeOptions& opts = {});

struct CoprimeCount {
  long long direct;   // gcd of coordinates == 1 (origin excluded)
  long long moebius;  // sum_j mu(j) * (gamma(QA/j) - [0 in A])
};

/// gamma*(QA) both ways; throws if the two routes disagree.
CoprimeCount count_coprime_points(const Region& a, double Q, const LatticeOptions& opts = {});

}  // namespace ucirc
