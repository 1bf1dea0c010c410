#include "ucirc/density.hpp"

#include <cmath>
#include <ostream>

#include "textio.hpp"
#include "ucirc/parallel.hpp"

namespace ucirc {

namespace {

bool is_symbolic_zero_angle(double t) { return t == 0.0 || t == kPi || t == -kPi; }

}  // namespace

KernelDiagonal kernel_diag(const WeightVector& w, double t) {
  const int m = w.m;
  double K = 0.5 * w.lambdas[static_cast<size_t>(m)] * w.lambdas[static_cast<size_t>(m)];
  double Kx = 0.0, Kxy = 0.0;
  if (is_symbolic_zero_angle(t)) {
    // sin(kt) = 0 exactly at the symbolic angles 0, +-pi
    for (int k = 1; k <= m; ++k) {
      const double lam = w.lambdas[static_cast<size_t>(m - k)];
      K += lam * lam;
    }
    return {K, 0.0, 0.0};
  }
  for (int k = 1; k <= m; ++k) {
    const double lam = w.lambdas[static_cast<size_t>(m - k)];
    const double lam2 = lam * lam;
    const double ck = std::cos(k * t), sk = std::sin(k * t);
    K += lam2 * ck * ck;
    Kx += -k * lam2 * sk * ck;
    Kxy += static_cast<double>(k) * k * lam2 * sk * sk;
  }
  return {K, Kx, Kxy};
}

double density_generic(const WeightVector& w, double t) {
  const KernelDiagonal kd = kernel_diag(w, t);
  if (kd.Kx == 0.0 && kd.Kxy == 0.0) return 0.0;
  double rad = (kd.K * kd.Kxy - kd.Kx * kd.Kx) / (kd.K * kd.K);
  if (rad < 0.0) rad = 0.0;  // Cauchy-Schwarz: only roundoff can go below 0
  return std::sqrt(rad);
}

double density_bombieri(int m, double t) {
  if (m < 1) throw ArgumentError("density_bombieri: m >= 1 required");
  const long double c = cosl(t);
  const long double s = sinl(t);
  const long double c2 = c * c;
  long double sum = 0.0L, pw = 1.0L;
  for (int k = 0; k <= 2 * m - 2; ++k) {
    sum += pw;
    pw *= c2;
  }
  long double c2m2 = 1.0L;  // c^(2m-2)
  for (int k = 0; k < m - 1; ++k) c2m2 *= c2;
  const long double rad = sum + (2.0L * m - 1.0L) * c2m2;
  const long double denom = c2m2 * c2 + 1.0L;  // cos^(2m) t + 1
  return static_cast<double>(sqrtl(0.5L * m) * fabsl(s) * sqrtl(rad) / denom);
}

double density_flat(int m, double t) {
  if (m < 1) throw ArgumentError("density_flat: m >= 1 required");
  const double dist = std::min({std::fabs(t), std::fabs(t - kPi), std::fabs(t + kPi)});
  if (dist < 1e-4) return density_generic(WeightVector::flat(m), t);
  // evaluated in long double: the terms cancel heavily near the removable
  // singularities just outside the delegation window
  const long double b = 2 * m + 1;
  const long double st = sinl(t), ct = cosl(t);
  const long double sbt = sinl(b * static_cast<long double>(t));
  const long double cbt = cosl(b * static_cast<long double>(t));
  const long double st2 = st * st;
  const long double rad = b * sbt / (2.0L * st2 * st) - 0.5L * b * b * cbt * ct / st2 +
                          sbt * sbt / (4.0L * st2 * st2) -
                          (b * b * b + 2.0L * b) / 6.0L * sbt / st -
                          0.25L * b * b / st2 +
                          (static_cast<long double>(m) * m + m) * b * b / 3.0L;
  const long double pref = 1.0L / (b + sbt / st);
  return static_cast<double>(pref * sqrtl(rad < 0.0L ? 0.0L : rad));
}

namespace {

struct SimpsonState {
  const WeightVector& w;
  double tol_spent_best = 0.0;
  bool depth_exceeded = false;
  double worst_error = 0.0;
};

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m1 = a + 0.25 * (b - a), m2 = a + 0.75 * (b - a);
  const double mid = 0.5 * (a + b);
  const double f1 = density_generic(st.w, m1), f2 = density_generic(st.w, m2);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * f1 + fm);
  const double right = (h / 12.0) * (fm + 4.0 * f2 + fb);
  const double err = (left + right - whole) / 15.0;
  if (std::fabs(err) <= tol || h <= 1e-15 * (1.0 + std::fabs(a)))
    return left + right + err;
  if (depth >= 40) {
    st.depth_exceeded = true;
    st.worst_error += std::fabs(err);
    return left + right + err;
  }
  return simpson_rec(st, a, mid, fa, f1, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(st, mid, b, fm, f2, fb, right, 0.5 * tol, depth + 1);
}

double simpson_interval(SimpsonState& st, double a, double b, double tol) {
  if (a >= b) return 0.0;
  const double fa = density_generic(st.w, a);
  const double fb = density_generic(st.w, b);
  const double fm = density_generic(st.w, 0.5 * (a + b));
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return simpson_rec(st, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double integrate_density(const WeightVector& w, const Arc& arc, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("integrate_density: tol must be positive");
  SimpsonState st{w};
  double total = 0.0;
  // p has a |t|-type kink at 0; splitting there keeps the integrand smooth
  if (arc.beta1 < 0.0 && arc.beta2 > 0.0) {
    total = simpson_interval(st, arc.beta1, 0.0, 0.5 * tol) +
            simpson_interval(st, 0.0, arc.beta2, 0.5 * tol);
  } else {
    total = simpson_interval(st, arc.beta1, arc.beta2, tol);
  }
  if (st.depth_exceeded && st.worst_error > tol)
    throw NumericError("integrate_density: subdivision depth exhausted", total,
                       st.worst_error);
  return total;
}

double expected_roots(const WeightVector& w, const Arc& arc, double tol) {
  return integrate_density(w, arc, tol) / kPi;
}

void DensityProfile::to_csv(std::ostream& os) const {
  os << "t,p\n";
  for (const auto& [t, p] : grid) os << fmt_g17(t) << ',' << fmt_g17(p) << '\n';
}

DensityProfile density_profile(const WeightVector& w, const Arc& arc, int points,
                               DensityMethod method, int threads) {
  if (points < 2) throw ArgumentError("density_profile: points >= 2 required");
  if (method == DensityMethod::BombieriClosed) {
    const WeightVector preset = WeightVector::bombieri(w.m);
    if (w.lambdas != preset.lambdas)
      throw ArgumentError("density_profile: bombieri-closed requires the bombieri preset");
  }
  if (method == DensityMethod::FlatClosed) {
    const WeightVector preset = WeightVector::flat(w.m);
    if (w.lambdas != preset.lambdas)
      throw ArgumentError("density_profile: flat-closed requires the flat preset");
  }
  DensityProfile prof{w.m, w, method, {}};
  prof.grid.resize(static_cast<size_t>(points));
  const double h = arc.length() / (points - 1);
  parallel_chunks(0, points, threads, [&](int, std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      const double t = (i == points - 1) ? arc.beta2 : arc.beta1 + h * static_cast<double>(i);
      double p = 0.0;
      switch (method) {
        case DensityMethod::Generic: p = density_generic(w, t); break;
        case DensityMethod::BombieriClosed: p = density_bombieri(w.m, t); break;
        case DensityMethod::FlatClosed: p = density_flat(w.m, t); break;
      }
      prof.grid[static_cast<size_t>(i)] = {t, p};
    }
  });
  return prof;
}

}  // namespace ucirc
