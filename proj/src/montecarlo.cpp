#include "ucirc/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "textio.hpp"
#include "ucirc/kernels.hpp"
#include "ucirc/parallel.hpp"

namespace ucirc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double TrigPoly::eval(double t) const {
  double v = c[0];
  for (int k = 1; k <= m; ++k) v += c[static_cast<size_t>(k)] * std::cos(k * t);
  return v;
}

double TrigPoly::eval_derivative(double t) const {
  double v = 0.0;
  for (int k = 1; k <= m; ++k) v -= k * c[static_cast<size_t>(k)] * std::sin(k * t);
  return v;
}

bool TrigPoly::identically_zero() const {
  return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
}

SubstreamRng SubstreamRng::for_sample(std::uint64_t seed, std::uint64_t index) {
  return SubstreamRng(mix64(mix64(seed) + kGolden * (index + 1)));
}

std::uint64_t SubstreamRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SubstreamRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double SubstreamRng::next_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = next_unit();
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_ = r * std::sin(2.0 * kPi * u2);
  has_cached_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

double SubstreamRng::next_exponential() { return -std::log(next_unit()); }

TrigPoly trig_poly_from_normals(const WeightVector& w, const std::vector<double>& etas) {
  const int m = w.m;
  if (static_cast<int>(etas.size()) != m + 1)
    throw ArgumentError("trig_poly_from_normals: need m+1 normals");
  std::vector<double> c(static_cast<size_t>(m) + 1);
  c[0] = 0.5 * w.lambdas[static_cast<size_t>(m)] * etas[static_cast<size_t>(m)];
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 1; k <= m; ++k)
    c[static_cast<size_t>(k)] =
        inv_sqrt2 * w.lambdas[static_cast<size_t>(m - k)] * etas[static_cast<size_t>(m - k)];
  return TrigPoly{m, std::move(c)};
}

TrigPoly sample_trig_poly(const WeightVector& w, SubstreamRng& rng) {
  std::vector<double> eta(static_cast<size_t>(w.m) + 1);
  for (auto& e : eta) e = rng.next_normal();
  return trig_poly_from_normals(w, eta);
}

namespace {

constexpr double kTangencyEps = 1e-10;
constexpr double kBisectWidth = 1e-12;

/// Reusable grid evaluator: cosine basis per (m, arc) precomputed k-major so
/// grid evaluation is one eval_series kernel call per sample.
class RootCounter {
public:
  RootCounter(int m, const Arc& arc) : m_(m), arc_(arc) {
    const double len = arc.length();
    n_ = std::max<std::int64_t>(
        2, static_cast<std::int64_t>(std::ceil(64.0 * (m + 1) * len / kPi)) + 1);
    thetas_.resize(static_cast<size_t>(n_));
    const double h = len / static_cast<double>(n_ - 1);
    for (std::int64_t j = 0; j < n_; ++j)
      thetas_[static_cast<size_t>(j)] =
          (j == n_ - 1) ? arc.beta2 : arc.beta1 + h * static_cast<double>(j);
    basis_.resize(static_cast<size_t>((m + 1) * n_));
    for (int k = 0; k <= m; ++k)
      for (std::int64_t j = 0; j < n_; ++j)
        basis_[static_cast<size_t>(k) * static_cast<size_t>(n_) + static_cast<size_t>(j)] =
            std::cos(k * thetas_[static_cast<size_t>(j)]);
    values_.resize(static_cast<size_t>(n_));
  }

  RootScan scan(const TrigPoly& f) {
    if (f.identically_zero())
      throw ArgumentError("count_real_roots: identically zero polynomial");
    kernels::eval_series(basis_.data(), static_cast<size_t>(n_),
                         static_cast<size_t>(m_) + 1, f.c.data(), values_.data());
    RootScan scan;
    int prev_sign = 0;
    bool after_zero = false;
    std::int64_t prev_idx = -1;
    for (std::int64_t j = 0; j < n_; ++j) {
      const double v = values_[static_cast<size_t>(j)];
      if (v == 0.0) {
        if (!after_zero) {
          scan.roots.push_back(thetas_[static_cast<size_t>(j)]);
          ++scan.count;
        }
        after_zero = true;
        continue;
      }
      const int s = v > 0.0 ? 1 : -1;
      if (after_zero) {
        after_zero = false;  // crossing through the exact zero already counted
      } else if (prev_sign != 0 && s != prev_sign) {
        scan.roots.push_back(bisect(f, thetas_[static_cast<size_t>(prev_idx)],
                                    thetas_[static_cast<size_t>(j)], prev_sign));
        ++scan.count;
      }
      prev_sign = s;
      prev_idx = j;
    }
    detect_tangencies(f, scan);
    std::sort(scan.roots.begin(), scan.roots.end());
    return scan;
  }

private:
  static double bisect(const TrigPoly& f, double a, double b, int sa) {
    while (b - a > kBisectWidth) {
      const double mid = 0.5 * (a + b);
      const double fm = f.eval(mid);
      if (fm == 0.0) return mid;
      if ((fm > 0.0 ? 1 : -1) == sa)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  }

  void detect_tangencies(const TrigPoly& f, RootScan& scan) const {
    for (std::int64_t j = 1; j + 1 < n_; ++j) {
      const double v = values_[static_cast<size_t>(j)];
      const double vl = values_[static_cast<size_t>(j - 1)];
      const double vr = values_[static_cast<size_t>(j + 1)];
      if (v == 0.0 || vl == 0.0 || vr == 0.0) continue;
      if (std::fabs(v) >= kTangencyEps) continue;
      if ((vl > 0.0) != (vr > 0.0)) continue;  // genuine crossing, counted already
      if (std::fabs(v) > std::fabs(vl) || std::fabs(v) > std::fabs(vr)) continue;
      // grazing zero: the derivative changing sign marks a tangent root
      const double da = f.eval_derivative(thetas_[static_cast<size_t>(j - 1)]);
      const double db = f.eval_derivative(thetas_[static_cast<size_t>(j + 1)]);
      if (da * db < 0.0) {
        scan.roots.push_back(thetas_[static_cast<size_t>(j)]);
        ++scan.count;
        ++scan.tangencies;
      }
    }
  }

  int m_;
  Arc arc_;
  std::int64_t n_ = 0;
  std::vector<double> thetas_;
  std::vector<double> basis_;
  std::vector<double> values_;
};

}  // namespace

RootScan scan_real_roots(const TrigPoly& f, const Arc& arc) {
  RootCounter counter(f.m, arc);
  return counter.scan(f);
}

int count_real_roots(const TrigPoly& f, const Arc& arc) {
  return scan_real_roots(f, arc).count;
}

namespace {

struct McAccum {
  long long n = 0;
  long long sum = 0;
  long long sumsq = 0;
  long long redraws = 0;
  std::map<int, long long> hist;
};

McAccum run_samples(const WeightVector& w, const Arc& arc, long long samples,
                    std::uint64_t seed, int threads, bool keep_hist) {
  std::vector<McAccum> parts(static_cast<size_t>(std::max(1, threads)));
  parallel_chunks(0, samples, threads, [&](int chunk, std::int64_t lo, std::int64_t hi) {
    McAccum acc;
    RootCounter counter(w.m, arc);
    for (std::int64_t i = lo; i < hi; ++i) {
      SubstreamRng rng = SubstreamRng::for_sample(seed, static_cast<std::uint64_t>(i));
      TrigPoly f = sample_trig_poly(w, rng);
      while (f.identically_zero()) {  // probability-zero; keep the draw total
        ++acc.redraws;
        f = sample_trig_poly(w, rng);
      }
      const int count = counter.scan(f).count;
      ++acc.n;
      acc.sum += count;
      acc.sumsq += static_cast<long long>(count) * count;
      if (keep_hist) ++acc.hist[count];
    }
    parts[static_cast<size_t>(chunk)] = std::move(acc);
  });
  McAccum total;
  for (auto& part : parts) {
    total.n += part.n;
    total.sum += part.sum;
    total.sumsq += part.sumsq;
    total.redraws += part.redraws;
    for (const auto& [k, v] : part.hist) total.hist[k] += v;
  }
  return total;
}

}  // namespace

McEstimate estimate_expected_roots(const WeightVector& w, const Arc& arc,
                                   long long samples, std::uint64_t seed, int threads) {
  if (samples < 2) throw ArgumentError("estimate_expected_roots: samples >= 2 required");
  const McAccum acc = run_samples(w, arc, samples, seed, threads, false);
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.redraws = acc.redraws;
  est.mean = static_cast<double>(acc.sum) / static_cast<double>(samples);
  const double var =
      (static_cast<double>(acc.sumsq) - static_cast<double>(acc.sum) * est.mean) /
      static_cast<double>(samples - 1);
  est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  return est;
}

std::map<int, double> mc_root_distribution(const WeightVector& w, const Arc& arc,
                                           long long samples, std::uint64_t seed,
                                           int threads) {
  if (samples < 1) throw ArgumentError("mc_root_distribution: samples >= 1 required");
  const McAccum acc = run_samples(w, arc, samples, seed, threads, true);
  std::map<int, double> dist;
  for (int l = 0; l <= 2 * w.m; ++l) dist[l] = 0.0;
  for (const auto& [count, times] : acc.hist)
    dist[count] = static_cast<double>(times) / static_cast<double>(samples);
  return dist;
}

std::vector<double> sample_ball_point(int d, SubstreamRng& rng) {
  if (d < 1) throw ArgumentError("sample_ball_point: d >= 1 required");
  std::vector<double> eta(static_cast<size_t>(d));
  double ss = 0.0;
  for (auto& e : eta) {
    e = rng.next_normal();
    ss += e * e;
  }
  // the exponential must enter as chi^2_2 = 2*Exp(1): the point is the
  // projection of a uniform direction in d+2 dimensions onto the first d
  const double denom = std::sqrt(ss + 2.0 * rng.next_exponential());
  for (auto& e : eta) e /= denom;
  return eta;
}

std::string McEstimate::to_json() const {
  std::string out = "{\"mean\":";
  out += fmt_g17(mean);
  out += ",\"stderr\":";
  out += fmt_g17(stderr_);
  out += ",\"samples\":";
  out += std::to_string(samples);
  out += ",\"seed\":";
  out += std::to_string(seed);
  out += "}";
  return out;
}

}  // namespace ucirc
