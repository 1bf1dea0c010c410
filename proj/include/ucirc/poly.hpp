#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "ucirc/common.hpp"

namespace ucirc {

using BigInt = mpz_class;
using BigRat = mpq_class;

// gmpxx has no long long constructor; long is 64-bit on every platform this
// builds for
inline BigInt to_bigint(long long v) { return BigInt(static_cast<long>(v)); }
inline const BigInt& to_bigint(const BigInt& v) { return v; }

/// Dense integer polynomial, lowest degree first. Normalized: no trailing
/// zero coefficients; the zero polynomial has an empty coefficient vector.
struct IntPoly {
  std::vector<BigInt> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c(std::move(coeffs)) { normalize(); }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const BigInt& lead() const { return c.back(); }
};

BigInt eval(const IntPoly& p, const BigInt& x);
BigRat eval(const IntPoly& p, const BigRat& x);
int sign_at(const IntPoly& p, const BigRat& x);
IntPoly derivative(const IntPoly& p);
BigInt content(const IntPoly& p);  // >= 0; 0 only for the zero polynomial
IntPoly primitive_part(const IntPoly& p);
IntPoly multiply(const IntPoly& a, const IntPoly& b);
/// Exact quotient a/b over Z, or nullopt if b does not divide a.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
/// Pseudo-remainder of a by b scaled so the effective multiplier is positive:
/// returns r with |lc(b)|^(deg a - deg b + 1) * a = q*b + r.
IntPoly pseudo_rem_abs(const IntPoly& a, const IntPoly& b);
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);  // primitive, positive lead
IntPoly squarefree_part(const IntPoly& p);

/// Integer self-reciprocal polynomial P(t) = sum_{k=0}^{2m} a_k t^k with
/// a_k = a_{2m-k}, stored as its free half a_0..a_m. a_0 != 0 so the degree
/// is exactly 2m.
struct SymPoly {
  int m;
  std::vector<BigInt> a;  // a_0..a_m

  SymPoly(int m_, std::vector<BigInt> half) : m(m_), a(std::move(half)) {
    if (m < 1) throw ArgumentError("sym poly requires m >= 1");
    if (static_cast<int>(a.size()) != m + 1)
      throw ArgumentError("sym poly requires exactly m+1 stored coefficients");
    if (a[0] == 0) throw ArgumentError("sym poly requires a_0 != 0");
  }
  static SymPoly from_ints(int m, const std::vector<long>& half) {
    std::vector<BigInt> v(half.begin(), half.end());
    return SymPoly(m, std::move(v));
  }
};

/// Full palindromic evaluation P(x).
BigInt sym_eval(const SymPoly& p, const BigInt& x);

double elliptic_height(const SymPoly& p, const WeightVector& w);
BigInt naive_height(const SymPoly& p);
bool is_primitive(const SymPoly& p);
bool irreducible_over_q(const SymPoly& p);
bool is_prime_poly(const SymPoly& p);

/// Chebyshev-basis image G with G(cos t) = P(e^it) * e^{-imt} (both real):
/// G(x) = a_m + 2*sum_{k=1}^m a_{m-k} T_k(x). deg G = m, lead 2^m a_0.
IntPoly to_cheb(const SymPoly& p);

/// A root whose isolating interval still straddled an arc endpoint at
/// maximum refinement; the root was counted under the closed-arc convention.
struct BoundaryWarning {
  double root_theta;  // midpoint estimate of the ambiguous root's angle
  double endpoint;    // the arc endpoint it straddles
};

struct ArcRootCount {
  int count = 0;
  std::vector<BoundaryWarning> warnings;
};

/// Number of distinct roots of P on the arc {e^{i t} : t in [beta1, beta2]}.
/// z = -1 is counted once even when both endpoints reach +-pi. Exact for all
/// square-free P; for other inputs this is the distinct-root count.
ArcRootCount roots_on_arc(const SymPoly& p, const Arc& arc);

}  // namespace ucirc
