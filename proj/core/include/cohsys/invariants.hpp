#pragma once

// Closed-form numerical invariants of coherent systems of type (n,d,k) on a
// smooth projective curve, with emphasis on the k = n+1 case.

#include <iosfwd>
#include <vector>

#include "cohsys/exact.hpp"

namespace cohsys {

/// The ambient curve: its genus and whether it is assumed to be Petri.
struct CurveContext {
  Integer genus;
  bool petri = true;

  CurveContext(Integer g, bool is_petri = true);
};

/// Type (n,d,k) of a coherent system: rank, degree, number of sections.
struct CSType {
  Integer n;
  Integer d;
  Integer k;

  CSType(Integer rank, Integer degree, Integer sections);

  friend bool operator==(const CSType&, const CSType&) = default;
  friend std::ostream& operator<<(std::ostream& os, const CSType& t);
};

/// Two types together with upper bounds for dim H^0 and dim H^2 of the pair.
struct ExtPairData {
  CSType t1;
  CSType t2;
  Integer h0_bound;
  Integer h2_bound;

  ExtPairData(CSType first, CSType second, Integer h0, Integer h2);
};

/// A subtype (n1,d1,k1) whose alpha-slope meets the ambient one.
struct Witness {
  Integer n1;
  Integer d1;
  Integer k1;

  friend bool operator==(const Witness&, const Witness&) = default;
  friend auto operator<=>(const Witness&, const Witness&) = default;
};

/// One candidate critical value with every witness that produces it.
struct CriticalValueCandidate {
  Rational alpha;
  std::vector<Witness> witnesses;  // sorted by (n1, k1, d1)
};

struct StratumRow {
  Integer t;
  Integer dim;
  bool irreducible;

  friend bool operator==(const StratumRow&, const StratumRow&) = default;
};

/// Data of the extension that realizes the top critical value.
struct CanonicalFlip {
  CSType type1;  // the rank-one subsystem (1, d-d2, 1)
  CSType type2;  // the quotient (n-1, d2, n)
  Rational alpha;
  Integer flip_dim_bound;
};

/// n^2(g-1) + 1 - k(k - d + n(g-1)).
Integer beta(const CurveContext& ctx, const CSType& t);

/// beta(n,d,n+1) = g - (n+1)(n - d + g).
Integer beta_np1(const CurveContext& ctx, const Integer& n, const Integer& d);

/// d/n + alpha*k/n.
Rational alpha_slope(const CSType& t, const Rational& alpha);

/// d(n-1) - n(n-1+g-[g/n]); stability is constant for alpha above max(0, this).
Integer alpha_l(const CurveContext& ctx, const Integer& n, const Integer& d);

/// g + n - [g/(n+1)]: the least degree of a generically generated system with
/// H^0(E'^*) = 0. Equivalently the least d with beta(n,d,n+1) >= 0.
Integer min_degree_generated(const CurveContext& ctx, const Integer& n);

/// (g - [g/(r+1)]) / r, a non-increasing function of r >= 1.
Rational f_value(const CurveContext& ctx, const Integer& r);

/// Largest torsion length t1 = d - g - n + [g/(n+1)] = [beta/(n+1)].
/// Throws DomainError when beta < 0.
Integer t_max(const CurveContext& ctx, const Integer& n, const Integer& d);

/// Rows (t, dim S_t) for t = 0..t1, flagged irreducible when t < beta/(n+1).
std::vector<StratumRow> stratification(const CurveContext& ctx, const Integer& n, const Integer& d);

/// Number of points of G_L when beta = 0:
///   g! * prod_{i=0..n} i! / (g-d+n+i)!
Integer cardinality_beta_zero(const CurveContext& ctx, const Integer& n, const Integer& d);

/// Upper bound for h^0 of a line bundle of degree e (Clifford, Riemann-Roch).
Integer clifford_h0_max(const CurveContext& ctx, const Integer& e);

/// C_jl for the ordered pair (tj, tl).
Integer c_coeff(const CurveContext& ctx, const CSType& tj, const CSType& tl);

/// C_jl + h0 + h2, an upper bound for dim Ext^1 when h0/h2 are bounds.
Integer ext1_dim(const CurveContext& ctx, const ExtPairData& pair);

/// Degree of the quotient in the canonical destabilizing extension,
/// d2 = g + n - 1 - [g/n].
Integer canonical_quotient_degree(const CurveContext& ctx, const Integer& n);

/// Throws DomainError when alpha_l <= 0: then G(alpha) = G_L for every alpha > 0.
CanonicalFlip canonical_flip(const CurveContext& ctx, const Integer& n, const Integer& d);

/// Candidate critical values in (0, max(0, alpha_l)] for type (n,d,n+1),
/// ascending. A superset of the actual critical values; the top entry,
/// alpha_l itself, is always an actual one.
std::vector<CriticalValueCandidate> critical_value_candidates(const CurveContext& ctx,
                                                              const Integer& n, const Integer& d);

/// Type of the dual span M*_{V,L} of a generated (1,d,n+1) system: (n,d,n+1).
CSType dual_span_type(const Integer& n, const Integer& d);

/// Degree at which direct sums of generated pencils give a non-empty U^s:
/// n(g+3)/2 for odd g, n(g+2)/2 for even g.
Integer us_existence_degree(const CurveContext& ctx, const Integer& n);

/// Threshold d1 above which U(n,d,n+1) is non-empty by elementary
/// transformations of direct sums of pencils.
Integer u_existence_degree(const CurveContext& ctx, const Integer& n);

/// g!/((g/2)!(g/2+1)!): the number of pencils of minimal degree when g is even.
Integer minimal_pencil_count(const CurveContext& ctx);

}  // namespace cohsys
