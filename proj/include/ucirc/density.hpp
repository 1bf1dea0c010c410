#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "ucirc/common.hpp"

namespace ucirc {

/// Covariance kernel of the limiting Gaussian process and its mixed partials
/// on the diagonal x = y = t.
struct KernelDiagonal {
  double K;    // K(t,t)
  double Kx;   // d/dx K(x,t) at x=t
  double Kxy;  // d2/dxdy K(x,y) at x=y=t
};

/// K = lam_m^2/2 + sum_{k=1}^m lam_{m-k}^2 cos^2(kt), with analytic partials.
/// t equal to 0 or +-pi (nearest double) is treated symbolically: all sine
/// factors are exactly zero there.
KernelDiagonal kernel_diag(const WeightVector& w, double t);

/// sqrt((K*Kxy - Kx^2)/K^2); exactly 0 when Kx = Kxy = 0.
double density_generic(const WeightVector& w, double t);

/// Closed form for lambda_k = sqrt(binom(2m,k)).
double density_bombieri(int m, double t);

/// Closed form for flat weights; within 1e-4 of {0, +-pi} it delegates to
/// density_generic (removable singularities).
double density_flat(int m, double t);

/// Adaptive-Simpson integral of density_generic over the arc, absolute error
/// target tol. Throws NumericError carrying the best estimate when the
/// subdivision depth limit is hit.
double integrate_density(const WeightVector& w, const Arc& arc, double tol);

/// (1/pi) * integrate_density.
double expected_roots(const WeightVector& w, const Arc& arc, double tol);

enum class DensityMethod { Generic, BombieriClosed, FlatClosed };

struct DensityProfile {
  int m;
  WeightVector weights;
  DensityMethod method;
  std::vector<std::pair<double, double>> grid;  // (t, p), strictly increasing t

  void to_csv(std::ostream& os) const;  // header "t,p", 17 significant digits
};

/// Uniform grid over the arc (endpoints included), evaluated by the selected
/// method. Closed-form methods require the matching weight preset.
DensityProfile density_profile(const WeightVector& w, const Arc& arc, int points,
                               DensityMethod method, int threads = 1);

}  // namespace ucirc
