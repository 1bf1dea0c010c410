#include "ucirc/poly.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <cstdint>

#include "ucirc/sturm.hpp"

namespace ucirc {

// ---------------------------------------------------------------------------
// IntPoly arithmetic

BigInt eval(const IntPoly& p, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigRat eval(const IntPoly& p, const BigRat& x) {
  BigRat acc = 0;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const IntPoly& p, const BigRat& x) {
  // integer Horner: sum c_k num^k den^(n-k) has the sign of p(x)
  if (p.is_zero()) return 0;
  const BigInt num = x.get_num(), den = x.get_den();
  BigInt acc = p.c.back();
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = acc * num;
    if (p.c[static_cast<size_t>(k)] != 0) {
      BigInt t;
      mpz_pow_ui(t.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p.degree() - k));
      acc += p.c[static_cast<size_t>(k)] * t;
    }
  }
  return sgn(acc);
}

IntPoly derivative(const IntPoly& p) {
  if (p.degree() <= 0) return IntPoly{};
  std::vector<BigInt> d(static_cast<size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k)
    d[static_cast<size_t>(k - 1)] = p.c[static_cast<size_t>(k)] * k;
  return IntPoly(std::move(d));
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& coef : p.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  const BigInt g = content(p);
  if (g == 1) return p;
  IntPoly q = p;
  for (auto& coef : q.c) coef /= g;
  return q;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly{};
  std::vector<BigInt> r(a.c.size() + b.c.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return IntPoly(std::move(r));
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<BigRat> rem(a.c.begin(), a.c.end());
  const int dq = a.degree() - b.degree();
  std::vector<BigRat> q(static_cast<size_t>(dq) + 1);
  const BigRat blead(b.lead());
  for (int k = dq; k >= 0; --k) {
    BigRat coef = rem[static_cast<size_t>(k + b.degree())] / blead;
    q[static_cast<size_t>(k)] = coef;
    if (coef != 0)
      for (int j = 0; j <= b.degree(); ++j)
        rem[static_cast<size_t>(k + j)] -= coef * BigRat(b.c[static_cast<size_t>(j)]);
  }
  for (int j = 0; j < b.degree(); ++j)
    if (rem[static_cast<size_t>(j)] != 0) return std::nullopt;
  std::vector<BigInt> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) return std::nullopt;
    qi[i] = q[i].get_num();
  }
  return IntPoly(std::move(qi));
}

IntPoly pseudo_rem_abs(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw ArgumentError("pseudo_rem_abs: division by zero polynomial");
  IntPoly r = a;
  const BigInt lb = abs(b.lead());
  const int sb = sgn(b.lead());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const BigInt lr = r.lead() * sb;
    std::vector<BigInt> next(r.c.size());
    for (size_t i = 0; i < r.c.size(); ++i) next[i] = r.c[i] * lb;
    for (int j = 0; j <= b.degree(); ++j)
      next[static_cast<size_t>(j + shift)] -= lr * b.c[static_cast<size_t>(j)];
    r = IntPoly(std::move(next));
  }
  return r;
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly u = primitive_part(a), v = primitive_part(b);
  if (u.is_zero()) u.c.swap(v.c);
  while (!v.is_zero()) {
    IntPoly r = pseudo_rem_abs(u, v);
    u = std::move(v);
    v = primitive_part(r);
  }
  if (!u.is_zero() && sgn(u.lead()) < 0)
    for (auto& coef : u.c) coef = -coef;
  return u;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 1) return primitive_part(p);
  const IntPoly g = poly_gcd(p, derivative(p));
  if (g.degree() == 0) return primitive_part(p);
  auto q = divide_exact(primitive_part(p), g);
  return q ? *q : primitive_part(p);
}

// ---------------------------------------------------------------------------
// SymPoly basics

namespace {

std::vector<BigInt> full_coeffs(const SymPoly& p) {
  std::vector<BigInt> f(static_cast<size_t>(2 * p.m) + 1);
  for (int k = 0; k <= 2 * p.m; ++k)
    f[static_cast<size_t>(k)] = p.a[static_cast<size_t>(std::min(k, 2 * p.m - k))];
  return f;
}

}  // namespace

BigInt sym_eval(const SymPoly& p, const BigInt& x) {
  return eval(IntPoly(full_coeffs(p)), x);
}

double elliptic_height(const SymPoly& p, const WeightVector& w) {
  if (p.m != w.m) throw ArgumentError("elliptic_height: half-degree mismatch");
  double s = 0.0;
  for (int k = 0; k < p.m; ++k) {
    const double ak = p.a[static_cast<size_t>(k)].get_d();
    const double lk = w.lambdas[static_cast<size_t>(k)];
    s += 2.0 * (ak / lk) * (ak / lk);
  }
  const double am = p.a[static_cast<size_t>(p.m)].get_d();
  const double lm = w.lambdas[static_cast<size_t>(p.m)];
  s += (am / lm) * (am / lm);
  return std::sqrt(s);
}

BigInt naive_height(const SymPoly& p) {
  BigInt h = 0;
  for (const auto& coef : p.a) {
    BigInt v = abs(coef);
    if (v > h) h = v;
  }
  return h;
}

bool is_primitive(const SymPoly& p) {
  BigInt g = 0;
  for (const auto& coef : p.a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coef.get_mpz_t());
    if (g == 1) return true;
  }
  return g == 1;
}

IntPoly to_cheb(const SymPoly& p) {
  // G = a_m*T_0 + 2*sum_{k=1}^m a_{m-k}*T_k, accumulated via the Chebyshev
  // coefficient recurrence T_{k+1} = 2x T_k - T_{k-1}
  const int m = p.m;
  std::vector<BigInt> g(static_cast<size_t>(m) + 1, BigInt(0));
  std::vector<BigInt> tprev{BigInt(1)};          // T_0
  std::vector<BigInt> tcur{BigInt(0), BigInt(1)};  // T_1
  g[0] = p.a[static_cast<size_t>(m)];
  for (int k = 1; k <= m; ++k) {
    const BigInt& coef = p.a[static_cast<size_t>(m - k)];
    for (size_t j = 0; j < tcur.size(); ++j) g[j] += 2 * coef * tcur[j];
    if (k < m) {
      std::vector<BigInt> tnext(tcur.size() + 1, BigInt(0));
      for (size_t j = 0; j < tcur.size(); ++j) tnext[j + 1] = 2 * tcur[j];
      for (size_t j = 0; j < tprev.size(); ++j) tnext[j] -= tprev[j];
      tprev = std::move(tcur);
      tcur = std::move(tnext);
    }
  }
  return IntPoly(std::move(g));
}

// ---------------------------------------------------------------------------
// Irreducibility over Q: quick filters, exact rational root test, then
// Kronecker's interpolation search for factor degrees 2..m.

namespace {

std::vector<std::uint64_t> positive_divisors_u64(std::uint64_t v) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t i = 1; i * i <= v; ++i) {
    if (v % i == 0) {
      small.push_back(i);
      if (i != v / i) large.push_back(v / i);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

long long kron_node(int i) {
  // 0, 1, -1, 2, -2, 3, -3, ...
  if (i == 0) return 0;
  return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
}

template <typename T>
bool divides_exactly(const T& num, long long den, T& out) {
  if constexpr (std::is_same_v<T, long long>) {
    if (num % den != 0) return false;
    out = num / den;
    return true;
  } else {
    const BigInt d = to_bigint(den);
    if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t())) return false;
    out = num / d;
    return true;
  }
}

template <typename T>
struct KroneckerSearch {
  const IntPoly& P;
  BigInt plead;
  int d;                                  // candidate factor degree
  std::vector<long long> nodes;           // d+1 interpolation nodes
  std::vector<std::vector<long long>> divisor_choices;  // per level
  long long x_extra;
  BigInt v_extra;
  std::vector<std::vector<T>> diag;       // diag[k][j] = g[x_j..x_k]

  bool search(int lvl) {
    for (long long choice : divisor_choices[static_cast<size_t>(lvl)]) {
      auto& row = diag[static_cast<size_t>(lvl)];
      if constexpr (std::is_same_v<T, long long>) row[static_cast<size_t>(lvl)] = choice;
      else row[static_cast<size_t>(lvl)] = to_bigint(choice);
      bool ok = true;
      for (int j = lvl - 1; j >= 0; --j) {
        const T num = row[static_cast<size_t>(j + 1)] -
                      diag[static_cast<size_t>(lvl - 1)][static_cast<size_t>(j)];
        const long long den =
            nodes[static_cast<size_t>(lvl)] - nodes[static_cast<size_t>(j)];
        if (!divides_exactly(num, den, row[static_cast<size_t>(j)])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (lvl < d) {
        if (search(lvl + 1)) return true;
        continue;
      }
      if (check_candidate()) return true;
    }
    return false;
  }

  bool check_candidate() {
    // newton coefficient of x^d is diag[d][0]; degree must be exactly d
    const T& lead = diag[static_cast<size_t>(d)][0];
    if (lead == 0) return false;
    BigInt leadz = to_bigint(lead);
    if (!mpz_divisible_p(plead.get_mpz_t(), leadz.get_mpz_t())) return false;
    // coefficient form: cand = (..((c_d (x-x_{d-1}) + c_{d-1}) (x-x_{d-2}) ...)
    std::vector<BigInt> cand{leadz};
    for (int j = d - 1; j >= 0; --j) {
      cand.insert(cand.begin(), BigInt(0));
      const BigInt node = to_bigint(nodes[static_cast<size_t>(j)]);
      for (size_t i = 0; i + 1 < cand.size(); ++i) cand[i] -= node * cand[i + 1];
      cand[0] += to_bigint(diag[static_cast<size_t>(j)][0]);
    }
    IntPoly g(std::move(cand));
    if (g.degree() != d) return false;
    // cheap filter: a true factor also divides P at the extra node (skipped
    // when the candidate vanishes there, which proves nothing either way)
    const BigInt gx = eval(g, to_bigint(x_extra));
    if (gx != 0 && !mpz_divisible_p(v_extra.get_mpz_t(), gx.get_mpz_t())) return false;
    return divide_exact(P, g).has_value();
  }
};

template <typename T>
bool kronecker_finds_factor(const IntPoly& P, int d,
                            const std::vector<long long>& nodes,
                            const std::vector<BigInt>& values, long long x_extra,
                            const BigInt& v_extra) {
  KroneckerSearch<T> ks{P, abs(P.lead()), d, nodes, {}, x_extra, v_extra, {}};
  ks.divisor_choices.resize(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    const auto pos = positive_divisors_u64(values[static_cast<size_t>(i)].get_ui());
    auto& out = ks.divisor_choices[static_cast<size_t>(i)];
    for (std::uint64_t v : pos) {
      out.push_back(static_cast<long long>(v));
      if (i > 0) out.push_back(-static_cast<long long>(v));  // g(0) > 0 normalization
    }
  }
  ks.diag.resize(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) ks.diag[static_cast<size_t>(i)].resize(static_cast<size_t>(i) + 1);
  return ks.search(0);
}

bool has_rational_root(const IntPoly& P) {
  // candidates r/s with r | P(0), s | lead(P), gcd(r,s)=1, either sign
  const BigInt c0 = abs(P.c[0]), cl = abs(P.lead());
  if (!c0.fits_ulong_p() || !cl.fits_ulong_p())
    throw ResourceError("rational root test: coefficients exceed divisor enumeration range",
                        0);
  const auto rs = positive_divisors_u64(c0.get_ui());
  const auto ss = positive_divisors_u64(cl.get_ui());
  const int n = P.degree();
  for (std::uint64_t s : ss) {
    std::vector<BigInt> spow(static_cast<size_t>(n) + 1);
    spow[0] = 1;
    for (int k = 1; k <= n; ++k) spow[static_cast<size_t>(k)] = spow[static_cast<size_t>(k - 1)] * static_cast<unsigned long>(s);
    for (std::uint64_t r : rs) {
      if (std::gcd(r, s) != 1) continue;
      // evaluate s^n P(r/s) and s^n P(-r/s) together
      BigInt accp = 0, accm = 0;
      const BigInt rz(static_cast<unsigned long>(r));
      for (int k = n; k >= 0; --k) {
        BigInt term = P.c[static_cast<size_t>(k)] * spow[static_cast<size_t>(n - k)];
        accp = accp * rz + term;
        accm = accm * (-rz) + term;
      }
      if (accp == 0 || accm == 0) return true;
    }
  }
  return false;
}

}  // namespace

bool irreducible_over_q(const SymPoly& p) {
  const IntPoly P = primitive_part(IntPoly(full_coeffs(p)));
  const int n = 2 * p.m;

  // a root at +-1 or any rational point gives a linear factor
  if (eval(P, BigInt(1)) == 0 || eval(P, BigInt(-1)) == 0) return false;
  if (n == 2) {
    // a t^2 + b t + a: reducible over Q iff the discriminant is a square
    const BigInt disc = P.c[1] * P.c[1] - 4 * P.c[0] * P.c[2];
    if (disc < 0) return true;
    return mpz_perfect_square_p(disc.get_mpz_t()) == 0;
  }
  if (has_rational_root(P)) return false;

  for (int d = 2; d <= p.m; ++d) {
    std::vector<long long> nodes(static_cast<size_t>(d) + 1);
    std::vector<BigInt> values(static_cast<size_t>(d) + 1);
    bool zero_value = false;
    for (int i = 0; i <= d; ++i) {
      nodes[static_cast<size_t>(i)] = kron_node(i);
      values[static_cast<size_t>(i)] = abs(eval(P, to_bigint(nodes[static_cast<size_t>(i)])));
      if (values[static_cast<size_t>(i)] == 0) zero_value = true;
    }
    if (zero_value) return false;  // integer root
    const long long x_extra = kron_node(d + 1);
    const BigInt v_extra = eval(P, to_bigint(x_extra));
    if (v_extra == 0) return false;

    BigInt maxv = 0;
    for (const auto& v : values)
      if (v > maxv) maxv = v;
    if (!maxv.fits_ulong_p())
      throw ResourceError("irreducibility: evaluation values exceed divisor enumeration range",
                          0);
    const bool small = maxv < to_bigint(1099511627776LL);  // 2^40: int64 arithmetic is safe
    const bool found = small
        ? kronecker_finds_factor<long long>(P, d, nodes, values, x_extra, v_extra)
        : kronecker_finds_factor<BigInt>(P, d, nodes, values, x_extra, v_extra);
    if (found) return false;
  }
  return true;
}

bool is_prime_poly(const SymPoly& p) {
  return p.a[0] > 0 && is_primitive(p) && irreducible_over_q(p);
}

// ---------------------------------------------------------------------------
// Exact root counting on arcs of the unit circle

namespace {

long double rat_to_ld(const BigRat& x) {
  const double d1 = x.get_d();
  BigRat r = x - BigRat(d1);
  return static_cast<long double>(d1) + static_cast<long double>(r.get_d());
}

long double acos_clamped(long double x) {
  if (x > 1.0L) x = 1.0L;
  if (x < -1.0L) x = -1.0L;
  return acosl(x);
}

constexpr long double kThetaMargin = 1e-17L;

// membership of the theta-interval (lo, hi) against the closed arc:
// 1 = inside, 0 = outside, 2 = straddles an endpoint
int classify_interval(long double lo, long double hi, const Arc& arc, double* endpoint) {
  const long double b1 = arc.beta1, b2 = arc.beta2;
  if (hi < b1 || lo > b2) return 0;
  if (lo >= b1 && hi <= b2) return 1;
  *endpoint = (lo < b1 && hi >= b1) ? arc.beta1 : arc.beta2;
  return 2;
}

}  // namespace

ArcRootCount roots_on_arc(const SymPoly& p, const Arc& arc) {
  ArcRootCount result;
  const IntPoly gs = squarefree_part(to_cheb(p));
  const BigRat one(1), minus_one(-1);

  const bool reaches_pi = arc.beta2 >= kPi || arc.beta1 <= -kPi;
  const bool full = arc.is_full_circle();
  const bool upper_half = arc.beta1 == 0.0 && arc.beta2 >= kPi;
  const bool lower_half = arc.beta1 <= -kPi && arc.beta2 == 0.0;

  if (full || upper_half || lower_half) {
    // pure Sturm counting: every root x in (-1,1) contributes theta = +-acos x,
    // exactly one of which lies in each closed half circle
    const auto chain = sturm_chain(gs);
    const bool at_one = sign_at(gs, one) == 0;
    const bool at_minus_one = sign_at(gs, minus_one) == 0;
    const int interior =
        roots_in_halfopen(chain, minus_one, one) - (at_one ? 1 : 0);
    result.count = (full ? 2 * interior : interior) + (at_one ? 1 : 0) +
                   (at_minus_one ? 1 : 0);
    return result;
  }

  const BigRat width(1, static_cast<unsigned long>(1) << 47);
  const auto roots = isolate_roots(gs, minus_one, one, width);
  for (const auto& root : roots) {
    if (root.exact() && root.lo == one) {
      if (arc.contains(0.0)) ++result.count;
      continue;
    }
    if (root.exact() && root.lo == minus_one) {
      if (reaches_pi) ++result.count;
      continue;
    }
    const long double tlo = acos_clamped(rat_to_ld(root.hi)) - kThetaMargin;
    const long double thi = acos_clamped(rat_to_ld(root.lo)) + kThetaMargin;
    const long double branches[2][2] = {{tlo, thi}, {-thi, -tlo}};
    for (const auto& br : branches) {
      double endpoint = 0.0;
      const int cls = classify_interval(br[0], br[1], arc, &endpoint);
      if (cls == 0) continue;
      ++result.count;
      if (cls == 2)
        result.warnings.push_back(
            {static_cast<double>((br[0] + br[1]) / 2), endpoint});
    }
  }
  return result;
}

}  // namespace ucirc
