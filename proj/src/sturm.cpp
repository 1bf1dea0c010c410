#include "ucirc/sturm.hpp"

#include <algorithm>

namespace ucirc {

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(primitive_part(p));
  IntPoly d = derivative(chain[0]);
  if (d.is_zero()) return chain;
  chain.push_back(primitive_part(d));
  while (true) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    IntPoly r = pseudo_rem_abs(a, b);
    if (r.is_zero()) break;
    IntPoly next = primitive_part(r);
    for (auto& coef : next.c) coef = -coef;
    chain.push_back(std::move(next));
    if (chain.back().degree() == 0) break;
  }
  return chain;
}

int sign_variations(const std::vector<IntPoly>& chain, const BigRat& x) {
  int v = 0, prev = 0;
  for (const auto& s : chain) {
    const int sg = sign_at(s, x);
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++v;
    prev = sg;
  }
  return v;
}

int roots_in_halfopen(const std::vector<IntPoly>& chain, const BigRat& a, const BigRat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

namespace {

struct Piece {
  BigRat a, b;
  int va;     // sign variations at a
  int nroots; // roots in the open interval (a, b); endpoints are not roots
};

void refine_single(const IntPoly& p, const std::vector<IntPoly>& chain, BigRat a,
                   BigRat b, int va, const BigRat& max_width,
                   std::vector<RootInterval>& out) {
  const int sa = sign_at(p, a);
  if (sa == 0) {
    // a is itself a (separately recorded) root, so p's sign at a says nothing
    // about the interior root; bisect on the variation count instead
    while (b - a > max_width) {
      BigRat mid = (a + b) / 2;
      if (sign_at(p, mid) == 0) {
        out.push_back({mid, mid});
        return;
      }
      const int vm = sign_variations(chain, mid);
      if (va - vm >= 1) {
        b = std::move(mid);
      } else {
        a = std::move(mid);
        va = vm;
      }
    }
    out.push_back({std::move(a), std::move(b)});
    return;
  }
  while (b - a > max_width) {
    BigRat mid = (a + b) / 2;
    const int sm = sign_at(p, mid);
    if (sm == 0) {
      out.push_back({mid, mid});
      return;
    }
    if (sm == sa)
      a = std::move(mid);
    else
      b = std::move(mid);
  }
  out.push_back({std::move(a), std::move(b)});
}

}  // namespace

std::vector<RootInterval> isolate_roots(const IntPoly& p, const BigRat& lo,
                                        const BigRat& hi, const BigRat& max_width) {
  std::vector<RootInterval> out;
  if (p.is_zero() || !(lo < hi)) throw ArgumentError("isolate_roots: bad input");
  const auto chain = sturm_chain(p);
  if (sign_at(p, lo) == 0) out.push_back({lo, lo});
  const bool hi_root = sign_at(p, hi) == 0;
  if (hi_root) out.push_back({hi, hi});

  const int va = sign_variations(chain, lo);
  const int vb = sign_variations(chain, hi);
  std::vector<Piece> stack;
  const int n0 = va - vb - (hi_root ? 1 : 0);
  if (n0 > 0) stack.push_back({lo, hi, va, n0});

  long iter_guard = 0;
  while (!stack.empty()) {
    if (++iter_guard > 200000)
      throw NumericError("root isolation failed to converge", 0.0, 1.0);
    Piece pc = std::move(stack.back());
    stack.pop_back();
    if (pc.nroots == 1) {
      refine_single(p, chain, std::move(pc.a), std::move(pc.b), pc.va, max_width, out);
      continue;
    }
    BigRat mid = (pc.a + pc.b) / 2;
    const bool mid_root = sign_at(p, mid) == 0;
    if (mid_root) out.push_back({mid, mid});
    const int vm = sign_variations(chain, mid);
    const int left = pc.va - vm - (mid_root ? 1 : 0);  // roots in open (a, mid)
    const int right = pc.nroots - (pc.va - vm);        // roots in open (mid, b)
    if (right > 0) stack.push_back({mid, pc.b, vm, right});
    if (left > 0) stack.push_back({std::move(pc.a), std::move(mid), pc.va, left});
  }

  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

}  // namespace ucirc
