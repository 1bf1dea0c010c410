#include "ucirc/lattice.hpp"

#include <cmath>
#include <numeric>

#include "ucirc/kernels.hpp"
#include "ucirc/parallel.hpp"

namespace ucirc {

bool Region::contains(const double* y) const {
  if (!diag_form.empty()) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s = std::fma(diag_form[static_cast<size_t>(k)], y[k] * y[k], s);
    return s <= 1.0;
  }
  return predicate(y);
}

Region Region::ball(int d) {
  if (d < 1) throw ArgumentError("Region::ball: d >= 1 required");
  Region r;
  r.dim = d;
  r.bounding_radius = 1.0;
  r.diag_form.assign(static_cast<size_t>(d), 1.0);
  return r;
}

Region Region::weight_ellipsoid(const WeightVector& w) {
  // h_w(a) <= 1: q_k = 2/lambda_k^2 for k < m, q_m = 1/lambda_m^2
  Region r;
  r.dim = w.m + 1;
  r.diag_form.resize(static_cast<size_t>(w.m) + 1);
  double radius = 0.0;
  for (int k = 0; k <= w.m; ++k) {
    const double lam = w.lambdas[static_cast<size_t>(k)];
    const double q = (k < w.m) ? 2.0 / (lam * lam) : 1.0 / (lam * lam);
    r.diag_form[static_cast<size_t>(k)] = q;
    radius = std::max(radius, 1.0 / std::sqrt(q));
  }
  r.bounding_radius = radius;
  return r;
}

Region Region::from_predicate(int d, double bounding_radius,
                              std::function<bool(const double*)> fn) {
  if (d < 1 || !(bounding_radius > 0.0))
    throw ArgumentError("Region::from_predicate: bad dimension or radius");
  Region r;
  r.dim = d;
  r.bounding_radius = bounding_radius;
  r.predicate = std::move(fn);
  return r;
}

MoebiusTable moebius_sieve(long long limit) {
  if (limit < 1) throw ArgumentError("moebius_sieve: limit >= 1 required");
  MoebiusTable t{limit, std::vector<signed char>(static_cast<size_t>(limit) + 1, 0)};
  std::vector<long long> primes;
  std::vector<long long> smallest(static_cast<size_t>(limit) + 1, 0);
  t.mu[1] = 1;
  for (long long i = 2; i <= limit; ++i) {
    if (smallest[static_cast<size_t>(i)] == 0) {
      smallest[static_cast<size_t>(i)] = i;
      primes.push_back(i);
      t.mu[static_cast<size_t>(i)] = -1;
    }
    for (long long p : primes) {
      if (p > smallest[static_cast<size_t>(i)] || i * p > limit) break;
      smallest[static_cast<size_t>(i * p)] = p;
      t.mu[static_cast<size_t>(i * p)] =
          (p == smallest[static_cast<size_t>(i)]) ? 0 : -t.mu[static_cast<size_t>(i)];
    }
  }
  return t;
}

double zeta_value(int d, double tol) {
  if (d < 2) throw ArgumentError("zeta_value: d >= 2 required");
  if (!(tol > 0.0)) throw ArgumentError("zeta_value: tol must be positive");
  const double s = d;
  // truncated sum plus Euler-Maclaurin tail; remainder is below the first
  // omitted term s(s+1)(s+2)(s+3)(s+4) N^{-s-5}/30240
  long long N = 16;
  auto remainder = [&](long long n) {
    return s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240.0 *
           std::pow(static_cast<double>(n), -s - 5.0);
  };
  while (remainder(N) > 0.5 * tol && N < 2000000) N *= 2;
  double sum = 0.0;
  for (long long k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double nd = static_cast<double>(N);
  const double tail = std::pow(nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nd, -s) +
                      s / 12.0 * std::pow(nd, -s - 1.0) -
                      s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(nd, -s - 3.0);
  return sum + tail;
}

double ball_volume(int d) {
  if (d < 1) throw ArgumentError("ball_volume: d >= 1 required");
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double ellipsoid_volume(const WeightVector& w) {
  double prod = 1.0;
  for (double lam : w.lambdas) prod *= lam;
  return std::pow(2.0, -0.5 * w.m) * prod * ball_volume(w.m + 1);
}

int chi(int d) {
  if (d < 1) throw ArgumentError("chi: d >= 1 required");
  return d == 2 ? 1 : 0;
}

namespace {

struct Budget {
  unsigned long long remaining;

  void charge(int dim, long long half_width) {
    const double cells = std::pow(2.0 * static_cast<double>(half_width) + 1.0, dim);
    if (cells > static_cast<double>(remaining))
      throw ResourceError("lattice scan exceeds membership-test budget",
                          static_cast<unsigned long long>(cells));
    remaining -= static_cast<unsigned long long>(cells);
  }
};

// Row bound for the diagonal form: every x with q*(mult*x/Q)^2 <= 1-partial
// satisfies |x| <= Q*sqrt((1-partial)/q)/mult; widen by 2 and let the exact
// fma decision filter.
long long diag_row_bound(double q, double Q, double partial, long long mult, long long B) {
  if (partial > 1.0) return -1;
  const double r = Q * std::sqrt((1.0 - partial) / q) / static_cast<double>(mult);
  const long long lim = static_cast<long long>(r) + 2;
  return std::min(lim, B);
}

struct DiagScan {
  const std::vector<double>& q;
  double Q;
  long long mult;
  long long B;

  long long count_from(int level, double partial, long long lo0, long long hi0) const {
    const int d = static_cast<int>(q.size());
    const double qk = q[static_cast<size_t>(level)];
    if (level == d - 1) {
      if (partial > 1.0) return 0;
      long long lo = lo0, hi = hi0;
      if (mult == 1) return static_cast<long long>(
          kernels::count_quadform_row(qk, Q, partial, lo, hi));
      long long cnt = 0;
      for (long long x = lo; x <= hi; ++x) {
        const double y = static_cast<double>(mult * x) / Q;
        cnt += (std::fma(qk, y * y, partial) <= 1.0);
      }
      return cnt;
    }
    long long total = 0;
    for (long long x = lo0; x <= hi0; ++x) {
      const double y = static_cast<double>(mult * x) / Q;
      const double next = std::fma(qk, y * y, partial);
      if (next > 1.0) continue;
      const long long r = diag_row_bound_next(level + 1, next);
      if (r < 0) continue;
      total += count_from(level + 1, next, -r, r);
    }
    return total;
  }

  long long diag_row_bound_next(int level, double partial) const {
    return diag_row_bound(q[static_cast<size_t>(level)], Q, partial, mult, B);
  }

  long long coprime_from(int level, double partial, long long g,
                         std::vector<unsigned char>& mask) const {
    const int d = static_cast<int>(q.size());
    const double qk = q[static_cast<size_t>(level)];
    if (level == d - 1) {
      if (partial > 1.0) return 0;
      const long long r = B;
      mask.resize(static_cast<size_t>(2 * r + 1));
      kernels::mask_quadform_row(qk, Q, partial, -r, r, mask.data());
      long long cnt = 0;
      for (long long x = -r; x <= r; ++x)
        if (mask[static_cast<size_t>(x + r)] && std::gcd(g, x < 0 ? -x : x) == 1) ++cnt;
      return cnt;
    }
    long long total = 0;
    for (long long x = -B; x <= B; ++x) {
      const double y = static_cast<double>(x) / Q;
      const double next = std::fma(qk, y * y, partial);
      if (next > 1.0) continue;
      total += coprime_from(level + 1, next, std::gcd(g, x < 0 ? -x : x), mask);
    }
    return total;
  }
};

struct GenericScan {
  const Region& a;
  double Q;
  long long mult;
  long long B;

  template <typename Visit>
  void walk(int level, std::vector<double>& y, std::vector<long long>& x,
            const Visit& visit) const {
    for (long long v = -B; v <= B; ++v) {
      y[static_cast<size_t>(level)] = static_cast<double>(mult * v) / Q;
      x[static_cast<size_t>(level)] = v;
      if (level == a.dim - 1) {
        if (a.predicate(y.data())) visit(x);
      } else {
        walk(level + 1, y, x, visit);
      }
    }
  }
};

long long scaled_count(const Region& a, double Q, long long mult, Budget& budget,
                       int threads) {
  const long long B =
      std::max<long long>(0, static_cast<long long>(
                                 std::ceil(Q * a.bounding_radius / static_cast<double>(mult))));
  budget.charge(a.dim, B);
  if (!a.diag_form.empty()) {
    DiagScan scan{a.diag_form, Q, mult, B};
    if (a.dim == 1) return scan.count_from(0, 0.0, -B, B);
    std::vector<long long> parts(static_cast<size_t>(std::max(1, threads)), 0);
    parallel_chunks(-B, B + 1, threads, [&](int chunk, std::int64_t lo, std::int64_t hi) {
      long long local = 0;
      for (long long x = lo; x < hi; ++x) {
        const double y = static_cast<double>(mult * x) / Q;
        const double next = std::fma(scan.q[0], y * y, 0.0);
        if (next > 1.0) continue;
        const long long r = scan.diag_row_bound_next(1, next);
        if (r < 0) continue;
        local += scan.count_from(1, next, -r, r);
      }
      parts[static_cast<size_t>(chunk)] = local;
    });
    long long total = 0;
    for (long long part : parts) total += part;
    return total;
  }
  GenericScan scan{a, Q, mult, B};
  long long total = 0;
  std::vector<double> y(static_cast<size_t>(a.dim));
  std::vector<long long> x(static_cast<size_t>(a.dim));
  scan.walk(0, y, x, [&](const std::vector<long long>&) { ++total; });
  return total;
}

}  // namespace

long long count_integer_points(const Region& a, double Q, const LatticeOptions& opts) {
  if (!(Q > 0.0)) throw ArgumentError("count_integer_points: Q > 0 required");
  Budget budget{opts.budget};
  return scaled_count(a, Q, 1, budget, opts.threads);
}

CoprimeCount count_coprime_points(const Region& a, double Q, const LatticeOptions& opts) {
  if (!(Q > 0.0)) throw ArgumentError("count_coprime_points: Q > 0 required");
  Budget budget{opts.budget};
  const long long B =
      std::max<long long>(0, static_cast<long long>(std::ceil(Q * a.bounding_radius)));

  // direct route: gcd of coordinates equals 1 (the origin never qualifies)
  long long direct = 0;
  budget.charge(a.dim, B);
  if (!a.diag_form.empty()) {
    DiagScan scan{a.diag_form, Q, 1, B};
    std::vector<long long> parts(static_cast<size_t>(std::max(1, opts.threads)), 0);
    parallel_chunks(-B, B + 1, opts.threads, [&](int chunk, std::int64_t lo, std::int64_t hi) {
      std::vector<unsigned char> mask;
      long long local = 0;
      for (long long x = lo; x < hi; ++x) {
        if (a.dim == 1) {
          const double y = static_cast<double>(x) / Q;
          if (std::fma(scan.q[0], y * y, 0.0) <= 1.0 && (x == 1 || x == -1)) ++local;
          continue;
        }
        const double y = static_cast<double>(x) / Q;
        const double next = std::fma(scan.q[0], y * y, 0.0);
        if (next > 1.0) continue;
        local += scan.coprime_from(1, next, x < 0 ? -x : x, mask);
      }
      parts[static_cast<size_t>(chunk)] = local;
    });
    for (long long part : parts) direct += part;
  } else {
    GenericScan scan{a, Q, 1, B};
    std::vector<double> y(static_cast<size_t>(a.dim));
    std::vector<long long> x(static_cast<size_t>(a.dim));
    scan.walk(0, y, x, [&](const std::vector<long long>& pt) {
      long long g = 0;
      for (long long v : pt) g = std::gcd(g, v < 0 ? -v : v);
      if (g == 1) ++direct;
    });
  }

  // Moebius route over the same membership decisions: gamma*(QA) =
  // sum_j mu(j) * #{x != 0 : j*x/Q in A}
  const MoebiusTable mu = moebius_sieve(std::max<long long>(1, B));
  std::vector<double> origin(static_cast<size_t>(a.dim), 0.0);
  const long long origin_in = a.contains(origin.data()) ? 1 : 0;
  long long moebius = 0;
  for (long long j = 1; j <= std::max<long long>(1, B); ++j) {
    if (mu(j) == 0) continue;
    const long long gj = scaled_count(a, Q, j, budget, opts.threads) - origin_in;
    moebius += mu(j) * gj;
  }

  if (direct != moebius)
    throw NumericError("coprime counts disagree between direct and Moebius routes",
                       static_cast<double>(direct), static_cast<double>(moebius));
  return {direct, moebius};
}

}  // namespace ucirc
