#include "ucirc/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucirc/counting.hpp"
#include "ucirc/density.hpp"
#include "ucirc/kernels.hpp"
#include "ucirc/lattice.hpp"
#include "ucirc/montecarlo.hpp"
#include "ucirc/poly.hpp"
#include "ucirc/sturm.hpp"

namespace ucirc::verify {

namespace {

struct Ctx {
  VerifyOptions opts;
  std::vector<CheckResult> results;

  void report(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  }
};

long long rand_int(SubstreamRng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

double rand_uniform(SubstreamRng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53);
}

SymPoly random_sym_poly(SubstreamRng& rng, int m, long long cmax) {
  std::vector<BigInt> a(static_cast<size_t>(m) + 1);
  a[0] = to_bigint(rand_int(rng, 1, cmax));
  for (int k = 1; k <= m; ++k) a[static_cast<size_t>(k)] = to_bigint(rand_int(rng, -cmax, cmax));
  return SymPoly(m, std::move(a));
}

SymPoly random_prime_poly(SubstreamRng& rng, int m, long long cmax) {
  while (true) {
    SymPoly p = random_sym_poly(rng, m, cmax);
    if (is_prime_poly(p)) return p;
  }
}

WeightVector random_weights(SubstreamRng& rng, int m) {
  std::vector<double> l(static_cast<size_t>(m) + 1);
  for (auto& v : l) v = std::exp(rand_uniform(rng, -1.2, 1.2));
  return WeightVector(m, std::move(l));
}

/// Floating-point oracle: count arc roots from the eigenvalues of the
/// companion matrix of the Chebyshev image, filtered to [-1,1]. Returns -1
/// when a root lands too close to +-1 or to an arc endpoint for the float
/// classification to be trustworthy.
int companion_arc_count(const SymPoly& p, const Arc& arc) {
  const IntPoly g = squarefree_part(to_cheb(p));
  const int n = g.degree();
  if (n < 1) return 0;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = g.lead().get_d();
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -g.c[static_cast<size_t>(i)].get_d() / lead;
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(comp);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = solver.eigenvalues()(i);
    if (std::fabs(z.imag()) > 1e-8) continue;
    const double x = z.real();
    if (std::fabs(std::fabs(x) - 1.0) < 1e-6) return -1;
    if (x < -1.0 || x > 1.0) continue;
    const double theta = std::acos(x);
    for (const double t : {theta, -theta}) {
      if (std::fabs(t - arc.beta1) < 1e-6 || std::fabs(t - arc.beta2) < 1e-6) return -1;
      if (arc.contains(t)) ++count;
    }
  }
  return count;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- poly_core

void check_conjugate_symmetry(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 1);
  bool ok = true;
  std::string detail;
  const int trials = ctx.opts.full ? 150 : 40;
  for (int i = 0; i < trials && ok; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 4));
    const SymPoly p = random_prime_poly(rng, m, 8);
    const ArcRootCount fc = roots_on_arc(p, Arc::full_circle());
    if (fc.count % 2 != 0) {
      ok = false;
      detail = "full-circle count odd";
      break;
    }
    const double beta = rand_uniform(rng, 0.2, kPi);
    const ArcRootCount left = roots_on_arc(p, Arc(-beta, 0.0));
    const ArcRootCount right = roots_on_arc(p, Arc(0.0, beta));
    if (!left.warnings.empty() || !right.warnings.empty()) continue;
    if (left.count != right.count) {
      ok = false;
      detail = "mirror arcs disagree";
    }
  }
  ctx.report("poly.conjugate_symmetry", ok, ok ? "mirror arc counts match" : detail);
}

void check_arc_additivity(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 2);
  bool ok = true;
  int used = 0;
  const int trials = ctx.opts.full ? 150 : 40;
  for (int i = 0; i < trials; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 4));
    const SymPoly p = random_prime_poly(rng, m, 8);
    const double b1 = rand_uniform(rng, -3.0, 1.0);
    const double b2 = rand_uniform(rng, b1 + 0.2, kPi);
    const double mid = rand_uniform(rng, b1 + 0.05, b2 - 0.05);
    const ArcRootCount whole = roots_on_arc(p, Arc(b1, b2));
    const ArcRootCount left = roots_on_arc(p, Arc(b1, mid));
    const ArcRootCount right = roots_on_arc(p, Arc(mid, b2));
    if (!whole.warnings.empty() || !left.warnings.empty() || !right.warnings.empty())
      continue;
    ++used;
    if (left.count + right.count != whole.count) {
      ok = false;
      break;
    }
  }
  ctx.report("poly.arc_additivity", ok && used > 0,
             "split-arc sums checked on " + std::to_string(used) + " instances");
}

void check_root_bound_and_exclusions(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 3);
  bool ok = true;
  const int trials = ctx.opts.full ? 300 : 80;
  for (int i = 0; i < trials && ok; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 5));
    const SymPoly p = random_sym_poly(rng, m, 9);
    const double b1 = rand_uniform(rng, -kPi, 2.0);
    const double b2 = rand_uniform(rng, b1 + 0.1, kPi);
    if (roots_on_arc(p, Arc(b1, b2)).count > 2 * m) ok = false;
    if (is_prime_poly(p) &&
        (sym_eval(p, BigInt(1)) == 0 || sym_eval(p, BigInt(-1)) == 0))
      ok = false;
  }
  ctx.report("poly.root_bound_prime_exclusions", ok,
             "count <= 2m and P(+-1) != 0 for primes");
}

void check_cheb_shape(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 4);
  bool ok = true;
  for (int i = 0; i < 200 && ok; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 7));
    const SymPoly p = random_sym_poly(rng, m, 50);
    const IntPoly g = to_cheb(p);
    BigInt expect = p.a[0];
    mpz_mul_2exp(expect.get_mpz_t(), expect.get_mpz_t(), static_cast<unsigned>(m));
    if (g.degree() != m || g.lead() != expect) ok = false;
  }
  ctx.report("poly.cheb_degree_lead", ok, "deg G = m, lead G = 2^m a_0");
}

void check_height_comparability(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 5);
  bool ok = true;
  for (int i = 0; i < 300 && ok; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 6));
    const SymPoly p = random_sym_poly(rng, m, 1000);
    const WeightVector w = random_weights(rng, m);
    const double H = naive_height(p).get_d();
    const double h = elliptic_height(p, w);
    const double slack = 1.0 + 1e-12;
    if (!(H / w.max_lambda() <= h * slack)) ok = false;
    if (!(h <= std::sqrt(2.0 * m + 1.0) * H / w.min_lambda() * slack)) ok = false;
  }
  ctx.report("poly.height_comparability", ok,
             "H/max(lam) <= h_w <= sqrt(2m+1) H/min(lam)");
}

void check_sturm_companion(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 6);
  const int trials = ctx.opts.full ? 10000 : 1000;
  int used = 0, disagreements = 0, skipped = 0;
  for (int i = 0; i < trials; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 4));
    const SymPoly p = random_prime_poly(rng, m, 9);
    const double b1 = rand_uniform(rng, -kPi, 2.5);
    const double b2 = rand_uniform(rng, b1 + 0.1, kPi);
    const Arc arc(b1, b2);
    const ArcRootCount exact = roots_on_arc(p, arc);
    if (!exact.warnings.empty()) {
      ++skipped;
      continue;
    }
    const int approx = companion_arc_count(p, arc);
    if (approx < 0) {
      ++skipped;
      continue;
    }
    ++used;
    if (approx != exact.count) ++disagreements;
  }
  const bool ok = disagreements == 0 && used >= trials * 95 / 100;
  ctx.report("poly.sturm_companion_crossval", ok,
             std::to_string(used) + " instances, " + std::to_string(disagreements) +
                 " disagreements, " + std::to_string(skipped) + " skipped");
}

// ------------------------------------------------------------------ density

void check_density_evenness(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 7);
  bool ok = true;
  for (int m = 1; m <= 5 && ok; ++m) {
    std::vector<WeightVector> ws{WeightVector::flat(m), WeightVector::bombieri(m),
                                 random_weights(rng, m)};
    for (const auto& w : ws)
      for (int i = 1; i < 80; ++i) {
        const double t = -kPi + 2.0 * kPi * i / 80.0;
        if (std::fabs(density_generic(w, -t) - density_generic(w, t)) > 1e-12) ok = false;
      }
  }
  ctx.report("density.evenness", ok, "p(-t) = p(t) to 1e-12");
}

void check_density_exact_zeros(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 8);
  bool ok = true;
  for (int m = 1; m <= 5; ++m) {
    for (const auto& w : {WeightVector::flat(m), WeightVector::bombieri(m),
                          random_weights(rng, m)}) {
      if (density_generic(w, 0.0) != 0.0) ok = false;
      if (density_generic(w, kPi) != 0.0) ok = false;
      if (density_generic(w, -kPi) != 0.0) ok = false;
    }
  }
  ctx.report("density.exact_zeros", ok, "p is exactly 0 at 0 and +-pi");
}

void check_density_scale_invariance(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 9);
  bool ok = true;
  for (int m = 1; m <= 5 && ok; ++m) {
    const WeightVector w = random_weights(rng, m);
    for (const double c : {0.5, 3.0, 17.25}) {
      const WeightVector cw = w.scaled(c);
      for (int i = 1; i < 60; ++i) {
        const double t = -kPi + 2.0 * kPi * i / 60.0;
        if (std::fabs(density_generic(cw, t) - density_generic(w, t)) > 1e-12) ok = false;
      }
    }
  }
  ctx.report("density.scale_invariance", ok, "p(c*w) = p(w) to 1e-12");
}

void check_closed_forms(Ctx& ctx) {
  double worst = 0.0;
  for (int m = 1; m <= 7; ++m) {
    const WeightVector wb = WeightVector::bombieri(m);
    const WeightVector wf = WeightVector::flat(m);
    for (int i = 0; i < 2000; ++i) {
      const double t = -kPi + 2.0 * kPi * (i + 0.5) / 2000.0;
      if (std::min({std::fabs(t), std::fabs(t - kPi), std::fabs(t + kPi)}) < 1e-4) continue;
      const double pg_b = density_generic(wb, t);
      worst = std::max(worst, std::fabs(density_bombieri(m, t) - pg_b) / (1.0 + pg_b));
      const double pg_f = density_generic(wf, t);
      worst = std::max(worst, std::fabs(density_flat(m, t) - pg_f) / (1.0 + pg_f));
    }
  }
  ctx.report("density.closed_form_agreement", worst <= 1e-8,
             "max relative deviation " + fmt(worst));
}

void check_radicand_nonneg(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 10);
  bool ok = true;
  for (int m = 1; m <= 6 && ok; ++m) {
    const WeightVector w = random_weights(rng, m);
    for (int i = 0; i < 400; ++i) {
      const double t = rand_uniform(rng, -kPi, kPi);
      const KernelDiagonal kd = kernel_diag(w, t);
      if (kd.K * kd.Kxy - kd.Kx * kd.Kx < -1e-12) ok = false;
    }
  }
  ctx.report("density.radicand_nonneg", ok, "K*Kxy - Kx^2 >= -1e-12");
}

// --------------------------------------------------------------- montecarlo

void check_mc_determinism(Ctx& ctx) {
  const WeightVector w = WeightVector::flat(2);
  const Arc arc = Arc::full_circle();
  const McEstimate a = estimate_expected_roots(w, arc, 2000, ctx.opts.seed, 1);
  const McEstimate b = estimate_expected_roots(w, arc, 2000, ctx.opts.seed, 2);
  const McEstimate c = estimate_expected_roots(w, arc, 2000, ctx.opts.seed, 4);
  const bool ok = a.to_json() == b.to_json() && a.to_json() == c.to_json();
  ctx.report("mc.partition_determinism", ok, "1/2/4 workers give identical estimates");
}

void check_mc_root_bound(Ctx& ctx) {
  SubstreamRng seeds = SubstreamRng::for_sample(ctx.opts.seed, 11);
  bool ok = true;
  for (int m = 1; m <= 4 && ok; ++m) {
    const WeightVector w = WeightVector::bombieri(m);
    for (int i = 0; i < (ctx.opts.full ? 2000 : 400); ++i) {
      SubstreamRng rng = SubstreamRng::for_sample(seeds.next_u64(), 0);
      const TrigPoly f = sample_trig_poly(w, rng);
      if (count_real_roots(f, Arc::full_circle()) > 2 * m) {
        ok = false;
        break;
      }
    }
  }
  ctx.report("mc.root_count_bound", ok, "count <= 2m on random draws");
}

void check_ek_consistency(Ctx& ctx) {
  const long long n = ctx.opts.full ? 20000 : 5000;
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (int m = 1; m <= 5 && ok; ++m) {
    for (int preset = 0; preset < 2 && ok; ++preset) {
      const WeightVector w =
          preset == 0 ? WeightVector::flat(m) : WeightVector::bombieri(m);
      const Arc arcs[3] = {Arc::full_circle(), Arc(0.0, kPi), Arc(0.3, 1.7)};
      for (const Arc& arc : arcs) {
        const McEstimate est =
            estimate_expected_roots(w, arc, n, ctx.opts.seed + m, ctx.opts.threads);
        const double target = expected_roots(w, arc, 1e-10);
        ++checked;
        if (std::fabs(est.mean - target) > 4.0 * est.stderr_) {
          ok = false;
          detail = "m=" + std::to_string(m) + " mean " + fmt(est.mean) + " target " +
                   fmt(target) + " stderr " + fmt(est.stderr_);
        }
      }
    }
  }
  ctx.report("mc.edelman_kostlan_consistency", ok,
             ok ? std::to_string(checked) + " (m,preset,arc) combinations within 4 stderr"
                : detail);
}

void check_mc_distribution_expectation(Ctx& ctx) {
  const WeightVector w = WeightVector::flat(2);
  const Arc arc = Arc::full_circle();
  const long long n = 10000;
  const McEstimate est = estimate_expected_roots(w, arc, n, ctx.opts.seed, ctx.opts.threads);
  const auto dist = mc_root_distribution(w, arc, n, ctx.opts.seed, ctx.opts.threads);
  long long weighted = 0;
  double psum = 0.0;
  for (const auto& [l, prob] : dist) {
    weighted += l * std::llround(prob * static_cast<double>(n));
    psum += prob;
  }
  const long long mean_n = std::llround(est.mean * static_cast<double>(n));
  const bool ok = weighted == mean_n && std::fabs(psum - 1.0) < 1e-12;
  ctx.report("mc.distribution_expectation", ok,
             "sum l*P[l] equals the mean on the same samples; probabilities sum to 1");
}

void check_ball_sampler(Ctx& ctx) {
  const long long n = ctx.opts.full ? 100000 : 20000;
  const double crit = 1.62762 / std::sqrt(static_cast<double>(n));  // KS at 1%
  bool ok = true;
  std::string detail;
  // d=1: uniform on [-1,1]
  {
    std::vector<double> u;
    u.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
      SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed + 17, static_cast<std::uint64_t>(i));
      u.push_back(0.5 * (sample_ball_point(1, rng)[0] + 1.0));
    }
    std::sort(u.begin(), u.end());
    double d = 0.0;
    for (long long i = 0; i < n; ++i) {
      const double f = u[static_cast<size_t>(i)];
      d = std::max(d, std::max((i + 1.0) / n - f, f - static_cast<double>(i) / n));
    }
    if (d > crit) {
      ok = false;
      detail = "d=1 KS " + fmt(d) + " > " + fmt(crit);
    }
  }
  // radius law: ||x||^d uniform on [0,1]
  for (const int d : {2, 4}) {
    std::vector<double> u;
    u.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
      SubstreamRng rng =
          SubstreamRng::for_sample(ctx.opts.seed + 23 + d, static_cast<std::uint64_t>(i));
      const auto x = sample_ball_point(d, rng);
      double ss = 0.0;
      for (double v : x) ss += v * v;
      if (ss > 1.0) {
        ok = false;
        detail = "norm exceeded 1";
      }
      u.push_back(std::pow(std::sqrt(ss), d));
    }
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    for (long long i = 0; i < n; ++i) {
      const double f = u[static_cast<size_t>(i)];
      ks = std::max(ks, std::max((i + 1.0) / n - f, f - static_cast<double>(i) / n));
    }
    if (ks > crit) {
      ok = false;
      detail = "radius law d=" + std::to_string(d) + " KS " + fmt(ks);
    }
  }
  ctx.report("mc.ball_sampler_laws", ok, ok ? "KS tests below the 1% critical value" : detail);
}

void check_coefficient_moments(Ctx& ctx) {
  const int m = 3;
  const WeightVector w = WeightVector::bombieri(m);
  const long long n = ctx.opts.full ? 100000 : 20000;
  std::vector<double> sums(static_cast<size_t>(m) + 1, 0.0), sq(static_cast<size_t>(m) + 1, 0.0);
  for (long long i = 0; i < n; ++i) {
    SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed + 31, static_cast<std::uint64_t>(i));
    const TrigPoly f = sample_trig_poly(w, rng);
    for (int k = 0; k <= m; ++k) {
      sums[static_cast<size_t>(k)] += f.c[static_cast<size_t>(k)];
      sq[static_cast<size_t>(k)] += f.c[static_cast<size_t>(k)] * f.c[static_cast<size_t>(k)];
    }
  }
  bool ok = true;
  for (int k = 0; k <= m; ++k) {
    const double mean = sums[static_cast<size_t>(k)] / static_cast<double>(n);
    const double var = sq[static_cast<size_t>(k)] / static_cast<double>(n) - mean * mean;
    const double lam = w.lambdas[static_cast<size_t>(m - k)];
    const double expect = (k == 0) ? lam * lam / 4.0 : lam * lam / 2.0;
    if (std::fabs(var - expect) > 0.05 * expect) ok = false;
  }
  ctx.report("mc.coefficient_moments", ok, "sample variances within 5% of lambda^2/2");
}

// ------------------------------------------------------------------ lattice

void check_gamma_star_le_gamma(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 12);
  bool ok = true;
  LatticeOptions lopts;
  lopts.threads = ctx.opts.threads;
  for (int i = 0; i < 12 && ok; ++i) {
    const int m = static_cast<int>(rand_int(rng, 1, 2));
    const Region region =
        (i % 3 == 0) ? Region::ball(2) : Region::weight_ellipsoid(random_weights(rng, m));
    const double Q = rand_uniform(rng, 3.0, 25.0);
    const long long gamma = count_integer_points(region, Q, lopts);
    const CoprimeCount cc = count_coprime_points(region, Q, lopts);
    if (cc.direct > gamma) ok = false;
  }
  ctx.report("lattice.gamma_star_le_gamma", ok, "gamma*(QA) <= gamma(QA)");
}

void check_moebius_direct(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 13);
  bool ok = true;
  LatticeOptions lopts;
  lopts.threads = ctx.opts.threads;
  try {
    for (int i = 0; i < 10; ++i) {
      const int m = static_cast<int>(rand_int(rng, 1, 2));
      const Region region =
          (i % 2 == 0) ? Region::ball(m + 1) : Region::weight_ellipsoid(random_weights(rng, m));
      count_coprime_points(region, rand_uniform(rng, 2.0, 20.0), lopts);
    }
    // a predicate-only region exercises the generic scan path
    const Region blob = Region::from_predicate(2, 1.0, [](const double* y) {
      return y[0] * y[0] + y[1] * y[1] + 0.5 * y[0] * y[1] <= 1.0;
    });
    count_coprime_points(blob, 15.0, lopts);
  } catch (const NumericError&) {
    ok = false;
  }
  ctx.report("lattice.moebius_equals_direct", ok,
             "direct and Moebius-inversion counts identical on all tested regions");
}

void check_lemma_trend(Ctx& ctx) {
  const std::vector<double> qs =
      ctx.opts.full ? std::vector<double>{50, 100, 200, 400} : std::vector<double>{50, 100};
  LatticeOptions lopts;
  lopts.threads = ctx.opts.threads;
  lopts.budget = 8000000000ULL;
  bool ok = true;
  std::string detail;
  struct Case {
    const char* name;
    Region region;
    double vol;
  };
  std::vector<Case> cases;
  cases.push_back({"disk", Region::ball(2), kPi});
  cases.push_back({"E_w(m=1)", Region::weight_ellipsoid(WeightVector::flat(1)),
                   ellipsoid_volume(WeightVector::flat(1))});
  cases.push_back({"E_w(m=2)", Region::weight_ellipsoid(WeightVector::flat(2)),
                   ellipsoid_volume(WeightVector::flat(2))});
  for (const auto& c : cases) {
    const int d = c.region.dim;
    const double limit = c.vol / zeta_value(d, 1e-12);
    for (const double Q : qs) {
      const CoprimeCount cc = count_coprime_points(c.region, Q, lopts);
      const double scaled = std::fabs(static_cast<double>(cc.direct) / std::pow(Q, d) - limit) *
                            Q / std::pow(std::log(Q), chi(d));
      if (scaled > 1.0) {
        ok = false;
        detail = std::string(c.name) + " Q=" + fmt(Q) + " scaled deviation " + fmt(scaled);
      }
    }
  }
  ctx.report("lattice.lemma_trend", ok,
             ok ? "scaled deviations bounded by 1.0 on all (region, Q)" : detail);
}

// ----------------------------------------------------------------- counting

void check_phi_additivity(Ctx& ctx) {
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 14);
  CountingOptions copts;
  copts.threads = ctx.opts.threads;
  bool ok = true;
  int used = 0;
  for (int i = 0; i < 6; ++i) {
    const int m = (i % 2) + 1;
    const WeightVector w = WeightVector::flat(m);
    const double Q = m == 1 ? 20.0 : 8.0;
    const double b1 = rand_uniform(rng, -3.0, 0.0);
    const double b2 = rand_uniform(rng, 1.0, kPi);
    const double mid = rand_uniform(rng, b1 + 0.3, b2 - 0.3);
    const CountReport whole = phi_count(w, Q, Arc(b1, b2), copts);
    const CountReport left = phi_count(w, Q, Arc(b1, mid), copts);
    const CountReport right = phi_count(w, Q, Arc(mid, b2), copts);
    if (whole.boundary_warnings || left.boundary_warnings || right.boundary_warnings)
      continue;
    ++used;
    if (left.phi + right.phi != whole.phi) ok = false;
  }
  ctx.report("counting.phi_additivity", ok && used > 0,
             "phi adds over arc splits (" + std::to_string(used) + " splits)");
}

void check_phi_monotonicity(Ctx& ctx) {
  CountingOptions copts;
  copts.threads = ctx.opts.threads;
  const WeightVector w = WeightVector::flat(1);
  bool ok = true;
  long long prev = -1;
  for (const double Q : {5.0, 10.0, 15.0, 20.0}) {
    const long long phi = phi_count(w, Q, Arc::full_circle(), copts).phi;
    if (phi < prev) ok = false;
    prev = phi;
  }
  long long prev_arc = -1;
  for (const double b : {0.5, 1.0, 2.0, kPi}) {
    const long long phi = phi_count(w, 15.0, Arc(-b, b), copts).phi;
    if (phi < prev_arc) ok = false;
    prev_arc = phi;
  }
  ctx.report("counting.phi_monotonicity", ok, "phi nondecreasing in Q and arc");
}

void check_phi_consistency(Ctx& ctx) {
  CountingOptions copts;
  copts.threads = ctx.opts.threads;
  bool ok = true;
  for (const double Q : {3.0, 10.0, 25.0}) {
    const CountReport rep = phi_count(WeightVector::flat(1), Q, Arc::full_circle(), copts);
    long long weighted = 0, bins = 0;
    for (const auto& [l, cnt] : rep.histogram) {
      weighted += l * cnt;
      bins += cnt;
    }
    if (weighted != rep.phi) ok = false;
    if (bins > rep.primitive_total) ok = false;
  }
  ctx.report("counting.phi_histogram_consistency", ok,
             "phi = sum l*hist[l]; histogram total within the primitive count");
}

void check_parallel_determinism(Ctx& ctx) {
  CountingOptions a, b;
  a.threads = 1;
  b.threads = 3;
  const CountReport ra = phi_count(WeightVector::flat(1), 50.0, Arc::full_circle(), a);
  const CountReport rb = phi_count(WeightVector::flat(1), 50.0, Arc::full_circle(), b);
  const bool ok = ra.to_json() == rb.to_json();
  ctx.report("counting.parallel_determinism", ok, "slab partitioning leaves reports unchanged");
}

void check_sign_convention(Ctx& ctx) {
  // full-sign bookkeeping: primes restricted to a_0 >= 1 carry exactly half
  // of the root count over primitive irreducible polynomials of either sign
  const WeightVector w = WeightVector::flat(1);
  const double Q = 6.0;
  CountingOptions copts;
  copts.threads = ctx.opts.threads;
  const CountReport rep = phi_count(w, Q, Arc::full_circle(), copts);
  long long full_sign = 0;
  for (long long a0 = -10; a0 <= 10; ++a0) {
    if (a0 == 0) continue;
    for (long long a1 = -10; a1 <= 10; ++a1) {
      const double h2 = 2.0 * static_cast<double>(a0) * static_cast<double>(a0) +
                        static_cast<double>(a1) * static_cast<double>(a1);
      if (h2 > Q * Q) continue;
      const SymPoly flipped(1, {to_bigint(a0 < 0 ? -a0 : a0), to_bigint(a0 < 0 ? -a1 : a1)});
      if (!is_primitive(flipped) || !irreducible_over_q(flipped)) continue;
      full_sign += roots_on_arc(flipped, Arc::full_circle()).count;
    }
  }
  const bool ok = full_sign == 2 * rep.phi;
  ctx.report("counting.sign_convention", ok,
             "full-sign root count equals twice the a_0 >= 1 stream count");
}

void check_cross_module_law(Ctx& ctx) {
  const double Q = ctx.opts.full ? 400.0 : 100.0;
  const long long n = ctx.opts.full ? 20000 : 5000;
  CountingOptions copts;
  copts.threads = ctx.opts.threads;
  bool ok = true;
  std::string detail;
  for (int preset = 0; preset < 2 && ok; ++preset) {
    const WeightVector w = preset == 0 ? WeightVector::flat(1) : WeightVector::bombieri(1);
    const Arc arc = Arc::full_circle();
    const auto frac = root_histogram(w, Q, arc, copts);
    const CountReport rep = phi_count(w, Q, arc, copts);
    const auto dist = mc_root_distribution(w, arc, n, ctx.opts.seed + preset, ctx.opts.threads);
    const double lattice_allow = 2.0 / std::sqrt(static_cast<double>(rep.primitive_total));
    for (const auto& [l, prob] : dist) {
      const double se = std::sqrt(std::max(prob * (1.0 - prob), 1e-12) / static_cast<double>(n));
      const double tol = 4.0 * (se + lattice_allow);
      if (std::fabs(frac.at(l) - prob) > tol) {
        ok = false;
        detail = "preset " + std::to_string(preset) + " l=" + std::to_string(l) +
                 " lattice " + fmt(frac.at(l)) + " mc " + fmt(prob);
      }
    }
  }
  ctx.report("counting.mc_distribution_law", ok,
             ok ? "lattice fractions match MC probabilities within allowance" : detail);
}

// ------------------------------------------------------------------ kernels

void check_kernel_equivalence(Ctx& ctx) {
  using namespace kernels;
  if (!avx2_available()) {
    ctx.report("kernels.backend_equivalence", true, "avx2 unavailable; scalar only");
    return;
  }
  SubstreamRng rng = SubstreamRng::for_sample(ctx.opts.seed, 15);
  const Backend saved = active_backend();
  bool ok = true;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const size_t n = 1 + rng.next_u64() % 300;
    const size_t terms = 1 + rng.next_u64() % 8;
    std::vector<double> basis(n * terms), coeff(terms), out_s(n), out_v(n);
    for (auto& v : basis) v = rand_uniform(rng, -2.0, 2.0);
    for (auto& v : coeff) v = rand_uniform(rng, -2.0, 2.0);
    set_backend(Backend::Scalar);
    eval_series(basis.data(), n, terms, coeff.data(), out_s.data());
    set_backend(Backend::Avx2);
    eval_series(basis.data(), n, terms, coeff.data(), out_v.data());
    if (out_s != out_v) ok = false;

    const double q = rand_uniform(rng, 0.2, 3.0);
    const double scale = rand_uniform(rng, 5.0, 50.0);
    const double partial = rand_uniform(rng, 0.0, 0.9);
    const long long lo = -static_cast<long long>(rng.next_u64() % 200);
    const long long hi = static_cast<long long>(rng.next_u64() % 200);
    set_backend(Backend::Scalar);
    const size_t cs = count_quadform_row(q, scale, partial, lo, hi);
    std::vector<unsigned char> ms(static_cast<size_t>(hi - lo + 1)), mv(ms.size());
    mask_quadform_row(q, scale, partial, lo, hi, ms.data());
    set_backend(Backend::Avx2);
    const size_t cv = count_quadform_row(q, scale, partial, lo, hi);
    mask_quadform_row(q, scale, partial, lo, hi, mv.data());
    if (cs != cv || ms != mv) ok = false;
  }
  set_backend(saved);
  ctx.report("kernels.backend_equivalence", ok, "scalar and avx2 results bit-identical");
}

}  // namespace

std::vector<CheckResult> run_all(const VerifyOptions& opts) {
  Ctx ctx{opts, {}};
  check_kernel_equivalence(ctx);
  check_conjugate_symmetry(ctx);
  check_arc_additivity(ctx);
  check_root_bound_and_exclusions(ctx);
  check_cheb_shape(ctx);
  check_height_comparability(ctx);
  check_sturm_companion(ctx);
  check_density_evenness(ctx);
  check_density_exact_zeros(ctx);
  check_density_scale_invariance(ctx);
  check_closed_forms(ctx);
  check_radicand_nonneg(ctx);
  check_mc_determinism(ctx);
  check_mc_root_bound(ctx);
  check_ek_consistency(ctx);
  check_mc_distribution_expectation(ctx);
  check_ball_sampler(ctx);
  check_coefficient_moments(ctx);
  check_gamma_star_le_gamma(ctx);
  check_moebius_direct(ctx);
  check_lemma_trend(ctx);
  check_phi_additivity(ctx);
  check_phi_monotonicity(ctx);
  check_phi_consistency(ctx);
  check_parallel_determinism(ctx);
  check_sign_convention(ctx);
  check_cross_module_law(ctx);
  return ctx.results;
}

}  // namespace ucirc::verify
