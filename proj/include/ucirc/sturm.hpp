#pragma once

#include <vector>

#include "ucirc/poly.hpp"

namespace ucirc {

/// Sturm chain of p (p should be square-free for root counting). Built as a
/// signed primitive pseudo-remainder sequence: each remainder is negated and
/// stripped to its primitive part, with the pseudo-division multiplier kept
/// positive so the sign-variation property is preserved.
std::vector<IntPoly> sturm_chain(const IntPoly& p);

int sign_variations(const std::vector<IntPoly>& chain, const BigRat& x);

/// Number of distinct roots of the chain's polynomial in (a, b].
int roots_in_halfopen(const std::vector<IntPoly>& chain, const BigRat& a, const BigRat& b);

/// Isolating interval for one real root. lo == hi marks an exact rational
/// root; otherwise the root lies in the open interval and neither endpoint
/// is a root.
struct RootInterval {
  BigRat lo, hi;
  bool exact() const { return lo == hi; }
};

/// All distinct real roots of square-free p in the closed interval [lo, hi],
/// in increasing order, refined until hi-lo <= max_width (exact roots
/// excepted).
std::vector<RootInterval> isolate_roots(const IntPoly& p, const BigRat& lo,
                                        const BigRat& hi, const BigRat& max_width);

}  // namespace ucirc
