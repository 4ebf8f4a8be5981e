#include "cohsys/invariants.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace cohsys {

namespace {

void require_rank(const Integer& n) {
  if (n < Integer(1)) throw DomainError("rank n must be >= 1, got " + n.str());
}

const Integer& g_of(const CurveContext& ctx) { return ctx.genus; }

}  // namespace

CurveContext::CurveContext(Integer g, bool is_petri) : genus(std::move(g)), petri(is_petri) {
  if (genus.sign() < 0) throw DomainError("genus must be >= 0, got " + genus.str());
}

CSType::CSType(Integer rank, Integer degree, Integer sections)
    : n(std::move(rank)), d(std::move(degree)), k(std::move(sections)) {
  require_rank(n);
  if (k.sign() < 0) throw DomainError("number of sections k must be >= 0, got " + k.str());
}

std::ostream& operator<<(std::ostream& os, const CSType& t) {
  return os << '(' << t.n << ',' << t.d << ',' << t.k << ')';
}

ExtPairData::ExtPairData(CSType first, CSType second, Integer h0, Integer h2)
    : t1(std::move(first)), t2(std::move(second)), h0_bound(std::move(h0)), h2_bound(std::move(h2)) {
  if (h0_bound.sign() < 0 || h2_bound.sign() < 0) {
    throw DomainError("Ext bounds must be non-negative");
  }
}

Integer beta(const CurveContext& ctx, const CSType& t) {
  const Integer gm1 = g_of(ctx) - 1;
  return t.n * t.n * gm1 + 1 - t.k * (t.k - t.d + t.n * gm1);
}

Integer beta_np1(const CurveContext& ctx, const Integer& n, const Integer& d) {
  require_rank(n);
  const Integer& g = g_of(ctx);
  return g - (n + 1) * (n - d + g);
}

Rational alpha_slope(const CSType& t, const Rational& alpha) {
  return Rational(t.d, t.n) + alpha * Rational(t.k, t.n);
}

Integer alpha_l(const CurveContext& ctx, const Integer& n, const Integer& d) {
  require_rank(n);
  const Integer& g = g_of(ctx);
  return d * (n - 1) - n * (n - 1 + g - floor_div(g, n));
}

Integer min_degree_generated(const CurveContext& ctx, const Integer& n) {
  require_rank(n);
  const Integer& g = g_of(ctx);
  return g + n - floor_div(g, n + 1);
}

Rational f_value(const CurveContext& ctx, const Integer& r) {
  if (r.sign() <= 0) throw DomainError("f(r) requires r >= 1, got " + r.str());
  const Integer& g = g_of(ctx);
  return Rational(g - floor_div(g, r + 1), r);
}

Integer t_max(const CurveContext& ctx, const Integer& n, const Integer& d) {
  const Integer b = beta_np1(ctx, n, d);
  if (b.sign() < 0) {
    throw DomainError("beta = " + b.str() + " < 0: G_L is empty and has no stratification");
  }
  const Integer& g = g_of(ctx);
  return d - g - n + floor_div(g, n + 1);
}

std::vector<StratumRow> stratification(const CurveContext& ctx, const Integer& n, const Integer& d) {
  const Integer t1 = t_max(ctx, n, d);
  const Integer b = beta_np1(ctx, n, d);
  const Rational bound(b, n + 1);
  std::vector<StratumRow> rows;
  for (Integer t(0); t <= t1; ++t) {
    rows.push_back({t, b - t, Rational(t) < bound});
  }
  return rows;
}

Integer cardinality_beta_zero(const CurveContext& ctx, const Integer& n, const Integer& d) {
  const Integer b = beta_np1(ctx, n, d);
  if (!b.is_zero()) {
    throw DomainError("cardinality formula requires beta = 0, got beta = " + b.str());
  }
  const Integer& g = g_of(ctx);
  Integer num = factorial(g);
  Integer den(1);
  for (Integer i(0); i <= n; ++i) {
    const Integer arg = g - d + n + i;
    if (arg.sign() < 0) {
      throw DomainError("negative factorial argument g-d+n+i = " + arg.str());
    }
    num *= factorial(i);
    den *= factorial(arg);
  }
  Rational count(num, den);
  if (!count.is_integer()) {
    throw std::logic_error("cardinality is not an integer: " + count.str());
  }
  return count.num();
}

Integer clifford_h0_max(const CurveContext& ctx, const Integer& e) {
  const Integer& g = g_of(ctx);
  if (g < Integer(1)) throw DomainError("clifford_h0_max requires g >= 1");
  if (e.sign() < 0) return Integer(0);
  if (e <= 2 * g - 2) return floor_div(e, Integer(2)) + 1;
  return e - g + 1;
}

Integer c_coeff(const CurveContext& ctx, const CSType& tj, const CSType& tl) {
  const Integer gm1 = g_of(ctx) - 1;
  return tj.n * tl.n * gm1 - tj.n * tl.d + tl.n * tj.d + tj.k * tl.d - tj.k * tl.n * gm1 -
         tj.k * tl.k;
}

Integer ext1_dim(const CurveContext& ctx, const ExtPairData& pair) {
  return c_coeff(ctx, pair.t1, pair.t2) + pair.h0_bound + pair.h2_bound;
}

Integer canonical_quotient_degree(const CurveContext& ctx, const Integer& n) {
  require_rank(n);
  const Integer& g = g_of(ctx);
  return g + n - 1 - floor_div(g, n);
}

CanonicalFlip canonical_flip(const CurveContext& ctx, const Integer& n, const Integer& d) {
  const Integer top = alpha_l(ctx, n, d);
  if (top.sign() <= 0) {
    throw DomainError("alpha_l = " + top.str() +
                      " <= 0: no top flip, G(alpha) = G_L for all alpha > 0 (Thm. 3.1)");
  }
  const Integer d2 = canonical_quotient_degree(ctx, n);
  CanonicalFlip flip{CSType(Integer(1), d - d2, Integer(1)), CSType(n - 1, d2, n), Rational(top),
                     beta_np1(ctx, n, d) - 1};
  if (alpha_slope(flip.type1, flip.alpha) != alpha_slope(flip.type2, flip.alpha)) {
    throw std::logic_error("canonical flip slopes differ");
  }
  return flip;
}

std::vector<CriticalValueCandidate> critical_value_candidates(const CurveContext& ctx,
                                                              const Integer& n, const Integer& d) {
  require_rank(n);
  if (n == Integer(1)) return {};
  const Integer cap = std::max(Integer(0), alpha_l(ctx, n, d));
  if (cap.is_zero()) return {};

  // mu_alpha(n1,d1,k1) = mu_alpha(n,d,k) solves to
  //   alpha = (n1*d - n*d1) / (n*k1 - n1*k).
  // With D = n*k1 - n1*k, the constraint 0 < alpha <= cap is linear in d1.
  const Integer k = n + 1;
  std::map<Rational, std::vector<Witness>> found;
  for (Integer n1(1); n1 < n; ++n1) {
    for (Integer k1(0); k1 <= k; ++k1) {
      const Integer den = n * k1 - n1 * k;
      if (den.is_zero()) continue;
      const Integer base = n1 * d;
      Integer lo, hi;
      if (den.sign() > 0) {
        // 0 < base - n*d1 <= cap*den
        lo = ceil_div(base - cap * den, n);
        hi = ceil_div(base, n) - 1;
      } else {
        // cap*den <= base - n*d1 < 0
        lo = floor_div(base, n) + 1;
        hi = floor_div(base - cap * den, n);
      }
      for (Integer d1 = lo; d1 <= hi; ++d1) {
        found[Rational(base - n * d1, den)].push_back({n1, d1, k1});
      }
    }
  }

  std::vector<CriticalValueCandidate> out;
  out.reserve(found.size());
  for (auto& [alpha, ws] : found) {
    std::sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) {
      if (a.n1 != b.n1) return a.n1 < b.n1;
      if (a.k1 != b.k1) return a.k1 < b.k1;
      return a.d1 < b.d1;
    });
    out.push_back({alpha, std::move(ws)});
  }
  return out;
}

CSType dual_span_type(const Integer& n, const Integer& d) {
  require_rank(n);
  if (d.sign() <= 0) throw DomainError("dual span needs a line bundle of degree d > 0, got " + d.str());
  return CSType(n, d, n + 1);
}

Integer us_existence_degree(const CurveContext& ctx, const Integer& n) {
  require_rank(n);
  const Integer& g = g_of(ctx);
  const Integer shift = g.is_even() ? Integer(2) : Integer(3);
  return floor_div(n * (g + shift), Integer(2));
}

Integer minimal_pencil_count(const CurveContext& ctx) {
  const Integer& g = g_of(ctx);
  if (!g.is_even()) throw DomainError("minimal pencil count is defined for even genus");
  const Integer h = floor_div(g, Integer(2));
  return Rational(factorial(g), factorial(h) * factorial(h + 1)).num();
}

Integer u_existence_degree(const CurveContext& ctx, const Integer& n) {
  require_rank(n);
  const Integer& g = g_of(ctx);
  if (!g.is_even()) return floor_div(n * (g + 3), Integer(2)) + 1;
  if (n <= minimal_pencil_count(ctx)) return floor_div(n * (g + 2), Integer(2)) + 1;
  return floor_div(n * (g + 4), Integer(2)) + 1;
}

}  // namespace cohsys
