#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucirc {

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid arguments (dimension mismatches, bad flags, malformed ranges).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric routine failed to reach its target accuracy. Carries the best
/// estimate obtained and a bound on its error.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate(best_estimate), error_bound(error_bound) {}
  double best_estimate;
  double error_bound;
};

/// A computation would exceed its enumeration budget. Carries the cardinality
/// of the space that was about to be scanned.
class ResourceError : public std::runtime_error {
public:
  ResourceError(const std::string& what, unsigned long long cardinality)
      : std::runtime_error(what), cardinality(cardinality) {}
  unsigned long long cardinality;
};

/// Closed angular interval [beta1, beta2] on the unit circle.
/// The symbolic endpoints +-pi are represented by their nearest doubles; an
/// arc spanning [-pi, pi] is treated as the full circle by consumers.
struct Arc {
  double beta1;
  double beta2;

  Arc(double b1, double b2) : beta1(b1), beta2(b2) {
    if (!(b1 >= -kPi) || !(b2 <= kPi) || !(b1 < b2))
      throw ArgumentError("arc requires -pi <= beta1 < beta2 <= pi");
  }

  static Arc full_circle() { return Arc(-kPi, kPi); }

  double length() const { return beta2 - beta1; }
  bool is_full_circle() const { return beta1 <= -kPi && beta2 >= kPi; }
  bool contains(double theta) const { return beta1 <= theta && theta <= beta2; }
};

/// Positive weights lambda_0..lambda_m; the symmetric extension
/// lambda_{2m-k} = lambda_k is implied and never stored.
struct WeightVector {
  int m;
  std::vector<double> lambdas;

  WeightVector(int m_, std::vector<double> l) : m(m_), lambdas(std::move(l)) {
    if (m < 1) throw ArgumentError("weight vector requires m >= 1");
    if (static_cast<int>(lambdas.size()) != m + 1)
      throw ArgumentError("weight vector requires exactly m+1 entries");
    for (double v : lambdas)
      if (!(v > 0.0)) throw ArgumentError("weights must be positive");
  }

  static WeightVector flat(int m) {
    return WeightVector(m, std::vector<double>(static_cast<size_t>(m) + 1, 1.0));
  }

  /// lambda_k = sqrt(binom(2m, k)), k = 0..m.
  static WeightVector bombieri(int m) {
    std::vector<double> l(static_cast<size_t>(m) + 1);
    double binom = 1.0;  // binom(2m, 0)
    for (int k = 0; k <= m; ++k) {
      l[static_cast<size_t>(k)] = std::sqrt(binom);
      binom = binom * (2.0 * m - k) / (k + 1.0);
    }
    return WeightVector(m, std::move(l));
  }

  WeightVector scaled(double c) const {
    std::vector<double> l = lambdas;
    for (double& v : l) v *= c;
    return WeightVector(m, std::move(l));
  }

  double max_lambda() const {
    double v = lambdas[0];
    for (double x : lambdas) v = std::max(v, x);
    return v;
  }
  double min_lambda() const {
    double v = lambdas[0];
    for (double x : lambdas) v = std::min(v, x);
    return v;
  }
};

}  // namespace ucirc
