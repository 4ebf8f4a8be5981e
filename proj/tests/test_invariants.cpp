#include <gtest/gtest.h>

#include <random>

#include "cohsys/invariants.hpp"
#include "oracles.hpp"

using namespace cohsys;

namespace {

CurveContext X(long g) { return CurveContext(Integer(g)); }
CSType T(long n, long d, long k) { return CSType(Integer(n), Integer(d), Integer(k)); }
Rational Q(long p, long q = 1) { return Rational(Integer(p), Integer(q)); }
Integer I(long v) { return Integer(v); }

}  // namespace

TEST(Types, Validation) {
  EXPECT_THROW(CurveContext(Integer(-1)), DomainError);
  EXPECT_THROW(T(0, 1, 1), DomainError);
  EXPECT_THROW(T(1, 1, -1), DomainError);
  EXPECT_THROW(ExtPairData(T(1, 1, 1), T(1, 1, 1), I(-1), I(0)), DomainError);
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta(X(3), T(3, 7, 5)), I(-1));
  EXPECT_EQ(beta(X(6), T(2, 6, 3)), I(0));
  EXPECT_EQ(beta(X(6), T(2, 6, 2)), I(9));
  for (long g = 0; g < 10; ++g) EXPECT_EQ(beta(X(g), T(1, 0, 1)), I(0));
  EXPECT_EQ(beta_np1(X(2), I(2), I(6)), I(8));
  EXPECT_EQ(beta_np1(X(3), I(3), I(5)), I(-1));
  EXPECT_EQ(beta_np1(X(4), I(3), I(6)), I(0));
  EXPECT_THROW(beta_np1(X(4), I(0), I(6)), DomainError);
}

TEST(Beta, SpecialTypeIsNegativeFromGenusThree) {
  for (long g = 3; g <= 40; ++g) {
    EXPECT_EQ(beta(X(g), T(3, 7, 5)), I(17 - 6 * g));
    EXPECT_LT(beta(X(g), T(3, 7, 5)), I(0));
  }
}

TEST(AlphaSlope, Examples) {
  EXPECT_EQ(alpha_slope(T(2, 6, 3), Q(2)), Q(6));
  EXPECT_EQ(alpha_slope(T(3, 7, 4), Q(0)), Q(7, 3));
  EXPECT_EQ(alpha_slope(T(1, 4, 1), Q(4)), Q(8));
}

TEST(AlphaL, Examples) {
  EXPECT_EQ(alpha_l(X(6), I(4), I(12)), I(4));
  for (long g = 0; g < 8; ++g) {
    for (long d = -5; d < 20; ++d) EXPECT_EQ(alpha_l(X(g), I(1), I(d)), I(0));
  }
  EXPECT_EQ(alpha_l(X(6), I(2), I(6)), I(-2));
}

TEST(MinDegree, Examples) {
  EXPECT_EQ(min_degree_generated(X(5), I(3)), I(7));
  for (long n = 1; n < 10; ++n) EXPECT_EQ(min_degree_generated(X(0), I(n)), I(n));
  EXPECT_EQ(min_degree_generated(X(6), I(2)), I(6));
}

TEST(FValue, Examples) {
  EXPECT_EQ(f_value(X(6), I(1)), Q(3));
  EXPECT_EQ(f_value(X(6), I(2)), Q(2));
  EXPECT_EQ(f_value(X(1), I(1)), Q(1));
  EXPECT_THROW(f_value(X(6), I(0)), DomainError);
}

TEST(FValue, NonIncreasing) {
  for (long g = 1; g <= 60; ++g) {
    for (long r = 1; r <= 30; ++r) {
      ASSERT_GE(f_value(X(g), I(r)), f_value(X(g), I(r + 1))) << "g=" << g << " r=" << r;
    }
  }
}

TEST(Stratification, Examples) {
  EXPECT_EQ(t_max(X(2), I(2), I(6)), I(2));
  EXPECT_EQ(t_max(X(4), I(3), I(6)), I(0));
  EXPECT_EQ(t_max(X(6), I(2), I(8)), I(2));
  EXPECT_THROW(t_max(X(3), I(3), I(5)), DomainError);

  const std::vector<StratumRow> a{{I(0), I(8), true}, {I(1), I(7), true}, {I(2), I(6), true}};
  EXPECT_EQ(stratification(X(2), I(2), I(6)), a);
  const std::vector<StratumRow> b{{I(0), I(0), false}};  // t = beta/(n+1) = 0
  EXPECT_EQ(stratification(X(4), I(3), I(6)), b);
  const std::vector<StratumRow> c{{I(0), I(6), true}, {I(1), I(5), true}, {I(2), I(4), false}};
  EXPECT_EQ(stratification(X(6), I(2), I(8)), c);
  EXPECT_THROW(stratification(X(3), I(3), I(5)), DomainError);
}

TEST(Stratification, RowsDecreaseByOne) {
  for (long g = 0; g <= 12; ++g) {
    for (long n = 1; n <= 5; ++n) {
      for (long d = 0; d <= 30; ++d) {
        const Integer b = beta_np1(X(g), I(n), I(d));
        if (b.sign() < 0) continue;
        const auto rows = stratification(X(g), I(n), I(d));
        ASSERT_EQ(rows.front().dim, b);
        for (std::size_t i = 1; i < rows.size(); ++i) {
          ASSERT_EQ(rows[i].dim, rows[i - 1].dim - 1);
        }
        if (b.sign() > 0 && rows.size() > 1) {
          ASSERT_GT(rows.back().dim, I(0));
        }
      }
    }
  }
}

TEST(Cardinality, Examples) {
  EXPECT_EQ(cardinality_beta_zero(X(4), I(1), I(3)), I(2));
  EXPECT_EQ(cardinality_beta_zero(X(2), I(1), I(2)), I(1));
  EXPECT_EQ(cardinality_beta_zero(X(6), I(2), I(6)), I(5));
  EXPECT_EQ(cardinality_beta_zero(X(4), I(3), I(6)), I(1));
  EXPECT_THROW(cardinality_beta_zero(X(4), I(3), I(7)), DomainError);
}

TEST(Cardinality, MatchesTableauxCount) {
  for (long g = 0; g <= 30; ++g) {
    for (long n = 1; n <= g + 1; ++n) {
      for (long d = 0; d <= 2 * g + n; ++d) {
        if (!beta_np1(X(g), I(n), I(d)).is_zero()) continue;
        const Integer c = cardinality_beta_zero(X(g), I(n), I(d));
        ASSERT_GE(c, I(1));
        const auto syt = oracle::syt_rectangle(static_cast<int>(n + 1), static_cast<int>(g - d + n));
        ASSERT_EQ(c.str(), std::to_string(syt)) << "g=" << g << " n=" << n << " d=" << d;
      }
    }
  }
}

TEST(Cardinality, EvenGenusPencils) {
  for (long g = 2; g <= 30; g += 2) {
    EXPECT_EQ(cardinality_beta_zero(X(g), I(1), I(g / 2 + 1)), minimal_pencil_count(X(g)));
  }
}

TEST(Clifford, Examples) {
  EXPECT_EQ(clifford_h0_max(X(3), I(4)), I(3));
  EXPECT_EQ(clifford_h0_max(X(3), I(-1)), I(0));
  EXPECT_EQ(clifford_h0_max(X(3), I(7)), I(5));
  EXPECT_EQ(clifford_h0_max(X(3), I(0)), I(1));
  EXPECT_THROW(clifford_h0_max(X(0), I(1)), DomainError);
}

TEST(CCoeff, Examples) {
  EXPECT_EQ(c_coeff(X(6), T(1, 3, 1), T(1, 3, 1)), I(2));
  EXPECT_EQ(c_coeff(X(6), T(2, 6, 2), T(2, 6, 3)), I(6));
  EXPECT_EQ(c_coeff(X(3), T(2, 6, 2), T(2, 4, 3)), I(6));
  // Quotient first, line subsystem second.
  EXPECT_EQ(c_coeff(X(6), T(3, 8, 4), T(1, 4, 1)), I(3));
}

TEST(CCoeff, QuotientAgainstLineSubsystem) {
  for (long g = 0; g <= 15; ++g) {
    for (long n = 2; n <= 8; ++n) {
      const Integer d2 = canonical_quotient_degree(X(g), I(n));
      for (long d = 0; d <= 40; ++d) {
        const CSType line(I(1), I(d) - d2, I(1));
        const CSType quot(I(n - 1), d2, I(n));
        ASSERT_EQ(c_coeff(X(g), quot, line), I(d - g - n + 1));
      }
    }
  }
}

TEST(CCoeff, FactoredFormAgrees) {
  std::mt19937_64 rng(20260517);
  std::uniform_int_distribution<long> rank(1, 8), deg(-30, 60), sec(0, 10), genus(0, 40);
  for (int i = 0; i < 1000; ++i) {
    const long g = genus(rng);
    const long nj = rank(rng), dj = deg(rng), kj = sec(rng);
    const long nl = rank(rng), dl = deg(rng), kl = sec(rng);
    ASSERT_EQ(c_coeff(X(g), T(nj, dj, kj), T(nl, dl, kl)).to_i64(),
              oracle::c_coeff_factored(g, nj, dj, kj, nl, dl, kl));
  }
}

TEST(Ext1, Examples) {
  EXPECT_EQ(ext1_dim(X(6), ExtPairData(T(1, 3, 1), T(1, 3, 1), I(1), I(0))), I(3));
  EXPECT_EQ(ext1_dim(X(6), ExtPairData(T(2, 6, 2), T(2, 6, 3), I(0), I(3))), I(9));
  // C = 0 with no correction terms: the extension splits.
  EXPECT_EQ(ext1_dim(X(3), ExtPairData(T(1, 3, 2), T(2, 4, 3), I(0), I(0))), I(0));
}

TEST(CanonicalFlip, Examples) {
  const auto a = canonical_flip(X(6), I(4), I(12));
  EXPECT_EQ(a.type1, T(1, 4, 1));
  EXPECT_EQ(a.type2, T(3, 8, 4));
  EXPECT_EQ(a.alpha, Q(4));
  EXPECT_EQ(a.flip_dim_bound, I(15));  // beta = 16

  const auto b = canonical_flip(X(2), I(2), I(6));
  EXPECT_EQ(b.type1, T(1, 4, 1));
  EXPECT_EQ(b.type2, T(1, 2, 2));
  EXPECT_EQ(b.alpha, Q(2));
  EXPECT_EQ(b.flip_dim_bound, I(7));

  EXPECT_THROW(canonical_flip(X(5), I(3), I(9)), DomainError);
  EXPECT_THROW(canonical_flip(X(5), I(1), I(9)), DomainError);
}

TEST(CanonicalFlip, SlopesMeetAtAlphaL) {
  for (long g = 0; g <= 20; ++g) {
    for (long n = 2; n <= 8; ++n) {
      for (long d = 0; d <= 60; ++d) {
        if (alpha_l(X(g), I(n), I(d)).sign() <= 0) continue;
        const auto f = canonical_flip(X(g), I(n), I(d));
        ASSERT_EQ(alpha_slope(f.type1, f.alpha), alpha_slope(f.type2, f.alpha));
        ASSERT_EQ(alpha_slope(f.type1, f.alpha), alpha_slope(T(n, d, n + 1), f.alpha));
      }
    }
  }
}

TEST(CriticalValues, Examples) {
  std::vector<Rational> got;
  for (const auto& c : critical_value_candidates(X(2), I(2), I(6))) got.push_back(c.alpha);
  EXPECT_EQ(got, (std::vector<Rational>{Q(2, 3), Q(4, 3), Q(2)}));
  EXPECT_TRUE(critical_value_candidates(X(2), I(2), I(4)).empty());
  for (long g = 0; g < 6; ++g) EXPECT_TRUE(critical_value_candidates(X(g), I(1), I(9)).empty());
}

TEST(CriticalValues, MatchBruteForceScan) {
  for (long g = 0; g <= 6; ++g) {
    for (long n = 1; n <= 4; ++n) {
      for (long d = -4; d <= 20; ++d) {
        const auto got = critical_value_candidates(X(g), I(n), I(d));
        const auto want = oracle::critical_scan(g, n, d);
        ASSERT_EQ(got.size(), want.size()) << "g=" << g << " n=" << n << " d=" << d;
        auto it = want.begin();
        for (const auto& c : got) {
          ASSERT_EQ(c.alpha, Q(it->first.num, it->first.den));
          std::vector<oracle::Triple> ws;
          for (const auto& w : c.witnesses) ws.emplace_back(w.n1.to_i64(), w.d1.to_i64(), w.k1.to_i64());
          auto expect = it->second;
          std::sort(ws.begin(), ws.end());
          std::sort(expect.begin(), expect.end());
          ASSERT_EQ(ws, expect);
          ++it;
        }
      }
    }
  }
}

TEST(CriticalValues, TopCandidateIsAlphaL) {
  for (long g = 0; g <= 12; ++g) {
    for (long n = 2; n <= 6; ++n) {
      for (long d = 0; d <= 40; ++d) {
        const Integer top = alpha_l(X(g), I(n), I(d));
        if (top.sign() <= 0) continue;
        const auto cands = critical_value_candidates(X(g), I(n), I(d));
        ASSERT_FALSE(cands.empty());
        ASSERT_EQ(cands.back().alpha, Rational(top));
        const Witness flip{I(1), I(d) - canonical_quotient_degree(X(g), I(n)), I(1)};
        const auto& ws = cands.back().witnesses;
        ASSERT_NE(std::find(ws.begin(), ws.end(), flip), ws.end());
        ASSERT_TRUE(std::is_sorted(cands.begin(), cands.end(),
                                   [](const auto& a, const auto& b) { return a.alpha < b.alpha; }));
      }
    }
  }
}

TEST(Identities, AgreeOverBox) {
  for (long g = 0; g <= 40; g += 3) {
    for (long n = 1; n <= 10; ++n) {
      for (long d = -60; d <= 60; ++d) {
        const Integer b = beta_np1(X(g), I(n), I(d));
        ASSERT_EQ(b, beta(X(g), T(n, d, n + 1)));
        ASSERT_EQ(b.to_i64(), oracle::beta_np1(g, n, d));
        const long a = alpha_l(X(g), I(n), I(d)).to_i64();
        ASSERT_EQ(a, oracle::alpha_l_form1(g, n, d));
        ASSERT_EQ(a, oracle::alpha_l_form2(g, n, d));
        ASSERT_EQ(b.sign() >= 0, I(d) >= min_degree_generated(X(g), I(n)));
        if (b.sign() >= 0) {
          ASSERT_EQ(t_max(X(g), I(n), I(d)).to_i64(), oracle::t1_from_beta(g, n, d));
        }
      }
    }
  }
}

TEST(DualSpan, Examples) {
  EXPECT_EQ(dual_span_type(I(3), I(9)), T(3, 9, 4));
  EXPECT_EQ(dual_span_type(I(1), I(2)), T(1, 2, 2));
  EXPECT_EQ(dual_span_type(I(4), I(10)), T(4, 10, 5));
  EXPECT_THROW(dual_span_type(I(4), I(0)), DomainError);
}

TEST(ExistenceDegrees, Values) {
  EXPECT_EQ(us_existence_degree(X(3), I(4)), I(12));
  EXPECT_EQ(us_existence_degree(X(4), I(3)), I(9));
  EXPECT_EQ(u_existence_degree(X(3), I(4)), I(13));
  // g = 4 has 2 pencils of minimal degree.
  EXPECT_EQ(minimal_pencil_count(X(4)), I(2));
  EXPECT_EQ(u_existence_degree(X(4), I(2)), I(7));
  EXPECT_EQ(u_existence_degree(X(4), I(3)), I(13));
  EXPECT_EQ(minimal_pencil_count(X(10)), I(42));
  EXPECT_THROW(minimal_pencil_count(X(3)), DomainError);
}

TEST(BigValues, NoOverflowAtLargeGenus) {
  const Integer c = cardinality_beta_zero(X(198), I(1), I(100));
  EXPECT_EQ(c, minimal_pencil_count(X(198)));
  EXPECT_GT(c.str().size(), 50u);
  EXPECT_EQ(beta_np1(X(200), I(50), I(1000)), I(200) - I(51) * (I(50) - I(1000) + I(200)));
}
