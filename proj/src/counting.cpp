#include "ucirc/counting.hpp"

#include <cmath>
#include <ostream>

#include "textio.hpp"
#include "ucirc/density.hpp"
#include "ucirc/lattice.hpp"
#include "ucirc/parallel.hpp"

namespace ucirc {

namespace {

// squared-height contribution of coordinate k; the enumeration and
// elliptic_height must fold these identically so the stream boundary is
// consistent everywhere
double h2_term(const WeightVector& w, int k, double a) {
  const double lk = w.lambdas[static_cast<size_t>(k)];
  return (k < w.m) ? 2.0 * (a / lk) * (a / lk) : (a / lk) * (a / lk);
}

long long coord_bound(const WeightVector& w, int k, double q2_rem) {
  if (q2_rem < 0.0) return -1;
  const double lk = w.lambdas[static_cast<size_t>(k)];
  const double factor = (k < w.m) ? 2.0 : 1.0;
  return static_cast<long long>(lk * std::sqrt(q2_rem / factor)) + 2;
}

template <typename Fn>
void enumerate_rec(const WeightVector& w, double q2, int k, double partial,
                   std::vector<long long>& coords, const Fn& fn) {
  const int m = w.m;
  const long long bound = coord_bound(w, k, q2 - partial);
  if (k == m) {
    for (long long a = -bound; a <= bound; ++a) {
      const double h2 = partial + h2_term(w, k, static_cast<double>(a));
      if (h2 <= q2) {
        coords[static_cast<size_t>(k)] = a;
        fn(coords);
      }
    }
    return;
  }
  for (long long a = -bound; a <= bound; ++a) {
    const double next = partial + h2_term(w, k, static_cast<double>(a));
    if (next > q2) continue;
    coords[static_cast<size_t>(k)] = a;
    enumerate_rec(w, q2, k + 1, next, coords, fn);
  }
}

SymPoly make_poly(int m, const std::vector<long long>& coords) {
  std::vector<BigInt> a(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) a[i] = to_bigint(coords[i]);
  return SymPoly(m, std::move(a));
}

}  // namespace

long long max_leading_coefficient(const WeightVector& w, double Q) {
  const double q2 = Q * Q;
  long long b = coord_bound(w, 0, q2);
  while (b >= 1 && h2_term(w, 0, static_cast<double>(b)) > q2) --b;
  return std::max<long long>(b, 0);
}

double estimate_stream_size(const WeightVector& w, double Q) {
  return 0.5 * ellipsoid_volume(w) * std::pow(Q, w.m + 1);
}

void for_each_sym_poly(const WeightVector& w, double Q, long long a0_lo, long long a0_hi,
                       const std::function<void(const SymPoly&)>& fn) {
  if (!(Q > 0.0)) throw ArgumentError("for_each_sym_poly: Q > 0 required");
  const double q2 = Q * Q;
  std::vector<long long> coords(static_cast<size_t>(w.m) + 1);
  a0_lo = std::max<long long>(a0_lo, 1);
  for (long long a0 = a0_lo; a0 <= a0_hi; ++a0) {
    const double partial = h2_term(w, 0, static_cast<double>(a0));
    if (partial > q2) break;
    coords[0] = a0;
    if (w.m >= 1)
      enumerate_rec(w, q2, 1, partial, coords,
                    [&](const std::vector<long long>& c) { fn(make_poly(w.m, c)); });
  }
}

std::vector<SymPoly> enumerate_sym_polys(const WeightVector& w, double Q) {
  std::vector<SymPoly> out;
  for_each_sym_poly(w, Q, 1, max_leading_coefficient(w, Q),
                    [&](const SymPoly& p) { out.push_back(p); });
  return out;
}

namespace {

struct SlabAccum {
  long long phi = 0;
  std::vector<long long> hist;  // size 2m+1
  long long primitive = 0;
  long long reducible = 0;
  long long warnings = 0;
  std::vector<long long> prim_hist;  // distinct-root histogram over primitives
};

void check_budget(const WeightVector& w, double Q, const CountingOptions& opts) {
  const double est = estimate_stream_size(w, Q);
  if (!opts.budget_override && est > static_cast<double>(opts.candidate_budget))
    throw ResourceError("enumeration exceeds candidate budget; pass the override flag",
                        static_cast<unsigned long long>(est));
}

SlabAccum classify_all(const WeightVector& w, double Q, const Arc& arc,
                       const CountingOptions& opts, bool want_prim_hist) {
  check_budget(w, Q, opts);
  const long long a0_max = max_leading_coefficient(w, Q);
  const int bins = 2 * w.m + 1;
  std::vector<SlabAccum> parts(static_cast<size_t>(std::max(1, opts.threads)));
  for (auto& part : parts) {
    part.hist.assign(static_cast<size_t>(bins), 0);
    part.prim_hist.assign(static_cast<size_t>(bins), 0);
  }
  parallel_chunks(1, a0_max + 1, opts.threads, [&](int chunk, std::int64_t lo, std::int64_t hi) {
    SlabAccum& acc = parts[static_cast<size_t>(chunk)];
    for_each_sym_poly(w, Q, lo, hi - 1, [&](const SymPoly& p) {
      if (!is_primitive(p)) return;
      ++acc.primitive;
      const bool prime = irreducible_over_q(p);  // a_0 >= 1 in the stream
      if (prime || want_prim_hist) {
        const ArcRootCount rc = roots_on_arc(p, arc);
        acc.warnings += static_cast<long long>(rc.warnings.size());
        if (prime) {
          acc.phi += rc.count;
          ++acc.hist[static_cast<size_t>(std::min(rc.count, bins - 1))];
        }
        if (want_prim_hist)
          ++acc.prim_hist[static_cast<size_t>(std::min(rc.count, bins - 1))];
      }
      if (!prime) ++acc.reducible;
    });
  });
  SlabAccum total;
  total.hist.assign(static_cast<size_t>(bins), 0);
  total.prim_hist.assign(static_cast<size_t>(bins), 0);
  for (const auto& part : parts) {
    if (part.hist.empty()) continue;
    total.phi += part.phi;
    total.primitive += part.primitive;
    total.reducible += part.reducible;
    total.warnings += part.warnings;
    for (int l = 0; l < bins; ++l) {
      total.hist[static_cast<size_t>(l)] += part.hist[static_cast<size_t>(l)];
      total.prim_hist[static_cast<size_t>(l)] += part.prim_hist[static_cast<size_t>(l)];
    }
  }
  return total;
}

}  // namespace

CountReport phi_count(const WeightVector& w, double Q, const Arc& arc,
                      const CountingOptions& opts) {
  const SlabAccum acc = classify_all(w, Q, arc, opts, false);
  CountReport rep{w.m, w, Q, arc, 0, {}, 0, 0, 0.0, 0.0, 0};
  rep.phi = acc.phi;
  for (int l = 0; l <= 2 * w.m; ++l) rep.histogram[l] = acc.hist[static_cast<size_t>(l)];
  rep.primitive_total = acc.primitive;
  rep.reducible_primitive = 2 * acc.reducible;
  rep.main_term = main_term(w, Q, arc, opts.tol);
  rep.ratio = rep.main_term != 0.0 ? static_cast<double>(rep.phi) / rep.main_term : 0.0;
  rep.boundary_warnings = acc.warnings;
  return rep;
}

std::map<int, double> root_histogram(const WeightVector& w, double Q, const Arc& arc,
                                     const CountingOptions& opts) {
  const SlabAccum acc = classify_all(w, Q, arc, opts, true);
  std::map<int, double> out;
  const double denom = acc.primitive > 0 ? static_cast<double>(acc.primitive) : 1.0;
  for (int l = 0; l <= 2 * w.m; ++l)
    out[l] = static_cast<double>(acc.prim_hist[static_cast<size_t>(l)]) / denom;
  return out;
}

ReducibleCount reducible_count(const WeightVector& w, double Q, const CountingOptions& opts) {
  check_budget(w, Q, opts);
  long long stream = 0;
  for_each_sym_poly(w, Q, 1, max_leading_coefficient(w, Q), [&](const SymPoly& p) {
    if (is_primitive(p) && !irreducible_over_q(p)) ++stream;
  });
  return {stream, 2 * stream};
}

double main_term(const WeightVector& w, double Q, const Arc& arc, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("main_term: tol must be positive");
  double lam_prod = 1.0;
  for (double lam : w.lambdas) lam_prod *= lam;
  const double coeff = ball_volume(w.m + 1) /
                       (std::pow(2.0, 0.5 * w.m + 1.0) * kPi * zeta_value(w.m + 1, 1e-12));
  return coeff * lam_prod * std::pow(Q, w.m + 1) * integrate_density(w, arc, tol);
}

std::vector<ConvergenceRow> convergence_report(const WeightVector& w, const Arc& arc,
                                               const std::vector<double>& q_list,
                                               const CountingOptions& opts) {
  for (size_t i = 1; i < q_list.size(); ++i)
    if (!(q_list[i] > q_list[i - 1]))
      throw ArgumentError("convergence_report: Q list must be increasing");
  std::vector<ConvergenceRow> rows;
  rows.reserve(q_list.size());
  for (double Q : q_list) {
    const CountReport rep = phi_count(w, Q, arc, opts);
    const double denom = (w.m <= 2) ? std::pow(Q, w.m) * std::log(Q) : std::pow(Q, w.m);
    rows.push_back({Q, rep.phi, rep.main_term, rep.ratio,
                    std::fabs(static_cast<double>(rep.phi) - rep.main_term) / denom});
  }
  return rows;
}

void convergence_to_csv(const std::vector<ConvergenceRow>& rows, std::ostream& os) {
  os << "Q,phi,main_term,ratio,scaled_error\n";
  for (const auto& r : rows)
    os << fmt_g17(r.Q) << ',' << r.phi << ',' << fmt_g17(r.main_term) << ','
       << fmt_g17(r.ratio) << ',' << fmt_g17(r.scaled_error) << '\n';
}

std::string CountReport::to_json() const {
  std::string out = "{\"m\":" + std::to_string(m);
  out += ",\"weights\":[";
  for (size_t i = 0; i < weights.lambdas.size(); ++i) {
    if (i) out += ',';
    out += fmt_g17(weights.lambdas[i]);
  }
  out += "],\"Q\":" + fmt_g17(Q);
  out += ",\"arc\":{\"beta1\":" + fmt_g17(arc.beta1) + ",\"beta2\":" + fmt_g17(arc.beta2) + "}";
  out += ",\"phi\":" + std::to_string(phi);
  out += ",\"histogram\":{";
  bool first = true;
  for (const auto& [l, n] : histogram) {
    if (!first) out += ',';
    first = false;
    out += "\"" + std::to_string(l) + "\":" + std::to_string(n);
  }
  out += "},\"primitive_total\":" + std::to_string(primitive_total);
  out += ",\"reducible_primitive\":" + std::to_string(reducible_primitive);
  out += ",\"main_term\":" + fmt_g17(main_term);
  out += ",\"ratio\":" + fmt_g17(ratio);
  out += ",\"boundary_warnings\":" + std::to_string(boundary_warnings);
  out += "}";
  return out;
}

}  // namespace ucirc
