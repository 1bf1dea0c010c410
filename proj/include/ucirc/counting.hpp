#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ucirc/poly.hpp"

namespace ucirc {

struct CountingOptions {
  double tol = 1e-8;              // quadrature tolerance for the main term
  int threads = 1;
  long long candidate_budget = 100000000;  // stream-size cap
  bool budget_override = false;
};

/// All half-coefficient vectors (a_0..a_m) with a_0 >= 1 and elliptic height
/// <= Q, in lexicographic order. Membership is decided by the squared-height
/// fold h2 = 2*sum_{k<m}(a_k/lam_k)^2 + (a_m/lam_m)^2 <= Q^2, the same
/// expression elliptic_height uses.
std::vector<SymPoly> enumerate_sym_polys(const WeightVector& w, double Q);

/// Streaming form restricted to a_0 in [a0_lo, a0_hi]; used for slab
/// partitioning. Visits in lexicographic order within the slab.
void for_each_sym_poly(const WeightVector& w, double Q, long long a0_lo,
                       long long a0_hi, const std::function<void(const SymPoly&)>& fn);

long long max_leading_coefficient(const WeightVector& w, double Q);
double estimate_stream_size(const WeightVector& w, double Q);

struct CountReport {
  int m;
  WeightVector weights;
  double Q;
  Arc arc;
  long long phi = 0;                    // sum of arc root counts over primes
  std::map<int, long long> histogram;   // l -> #primes with l arc roots, l=0..2m
  long long primitive_total = 0;        // primitive members of the a_0>=1 stream
  long long reducible_primitive = 0;    // full-sign count: 2x the stream count
  double main_term = 0.0;
  double ratio = 0.0;
  long long boundary_warnings = 0;

  std::string to_json() const;
};

CountReport phi_count(const WeightVector& w, double Q, const Arc& arc,
                      const CountingOptions& opts = {});

/// l -> fraction of primitive stream members (prime or not) with l distinct
/// arc roots; fractions sum to 1.
std::map<int, double> root_histogram(const WeightVector& w, double Q, const Arc& arc,
                                     const CountingOptions& opts = {});

struct ReducibleCount {
  long long stream;     // primitive non-irreducible members with a_0 >= 1
  long long full_sign;  // both leading signs: 2 * stream
};

ReducibleCount reducible_count(const WeightVector& w, double Q,
                               const CountingOptions& opts = {});

/// Vol(B^{m+1}) / (2^{m/2+1} pi zeta(m+1)) * lam_0..lam_m * Q^{m+1} * int p.
double main_term(const WeightVector& w, double Q, const Arc& arc, double tol = 1e-8);

struct ConvergenceRow {
  double Q;
  long long phi;
  double main_term;
  double ratio;
  double scaled_error;  // |phi - main| / (Q^m log Q) for m<=2, / Q^m for m>=3
};

std::vector<ConvergenceRow> convergence_report(const WeightVector& w, const Arc& arc,
                                               const std::vector<double>& q_list,
                                               const CountingOptions& opts = {});

void convergence_to_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os);

}  // namespace ucirc
