#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcm/analysis.hpp"
#include "test_support.hpp"

namespace pcm {
namespace {

PriorityEstimate simple(std::vector<double> omega, std::vector<double> domega) {
  PriorityEstimate e;
  e.omega_star = omega;
  e.delta.assign(omega.size(), 0.0);
  e.omega = std::move(omega);
  e.domega = std::move(domega);
  e.normalized = true;
  return e;
}

TEST(Rank, ReferenceMatrixGmm) {
  const auto r = rank(normalize(gmm_estimate(testing::saaty_vargas())));
  EXPECT_EQ(r.order, (std::vector<std::size_t>{3, 1, 2, 0, 4}));
  EXPECT_EQ(r.verdict(1, 3), Verdict::INDISTINGUISHABLE);
  EXPECT_NE(std::find(r.warnings.begin(), r.warnings.end(), IndexPair{1, 3}), r.warnings.end());
  // Element 3 sits reliably above element 1 and element 5.
  EXPECT_EQ(r.verdict(2, 0), Verdict::RELIABLE_GT);
  EXPECT_EQ(r.verdict(2, 4), Verdict::RELIABLE_GT);
}

TEST(Rank, ZeroErrorsAllReliable) {
  const auto r = rank(simple({3, 2, 1}, {0, 0, 0}));
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1, 2}));
  for (const auto& p : r.pair_verdicts) EXPECT_EQ(p.verdict, Verdict::RELIABLE_GT);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Rank, TieIsIndistinguishableWithoutWarning) {
  const auto r = rank(simple({1, 1}, {0, 0}));
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.verdict(0, 1), Verdict::INDISTINGUISHABLE);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Rank, TouchingIntervalsAreIndistinguishable) {
  const auto r = rank(simple({2, 1}, {0.5, 0.5}));
  EXPECT_EQ(r.verdict(0, 1), Verdict::INDISTINGUISHABLE);
  EXPECT_EQ(rank(simple({2, 1}, {0.5, 0.5}), 0.99).verdict(0, 1), Verdict::RELIABLE_GT);
}

TEST(Rank, VerdictsMatchIntervalDefinitionAndAreAntisymmetric) {
  testing::Generator gen(51);
  for (int t = 0; t < 200; ++t) {
    const auto e = normalize(gmm_estimate(gen.reciprocal(gen.size(2, 8))));
    const auto r = rank(e);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (i == k) continue;
        const bool gt = e.omega[i] - e.domega[i] > e.omega[k] + e.domega[k];
        const bool lt = e.omega[k] - e.domega[k] > e.omega[i] + e.domega[i];
        const auto v = r.verdict(i, k);
        EXPECT_EQ(v == Verdict::RELIABLE_GT, gt);
        EXPECT_EQ(v == Verdict::RELIABLE_LT, lt);
        EXPECT_EQ(r.verdict(k, i), flip(v));
      }
    for (std::size_t j = 1; j < r.order.size(); ++j) EXPECT_GE(e.omega[r.order[j - 1]], e.omega[r.order[j]]);
  }
}

TEST(Rank, ShrinkingErrorsNeverLosesReliability) {
  testing::Generator gen(52);
  for (int t = 0; t < 200; ++t) {
    const auto e = normalize(gmm_estimate(gen.reciprocal(gen.size(2, 8))));
    const auto wide = rank(e, 1.0);
    const auto narrow = rank(e, gen.uniform(0.0, 1.0));
    for (std::size_t j = 0; j < wide.pair_verdicts.size(); ++j)
      if (wide.pair_verdicts[j].verdict != Verdict::INDISTINGUISHABLE) {
        EXPECT_EQ(narrow.pair_verdicts[j].verdict, wide.pair_verdicts[j].verdict);
      }
  }
}

TEST(Rank, PermutationEquivariance) {
  testing::Generator gen(53);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.size(2, 8);
    const auto a = gen.reciprocal(n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    Grid pg(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) pg[i][k] = a(perm[i], perm[k]);
    const auto e = normalize(gmm_estimate(a));
    const auto pe = normalize(gmm_estimate(validate_matrix(pg)));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(pe.omega[i], e.omega[perm[i]], 1e-13);
      EXPECT_NEAR(pe.domega[i], e.domega[perm[i]], 1e-13);
    }
    const auto r = rank(e), pr = rank(pe);
    for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(perm[pr.order[j]], r.order[j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(pr.verdict(i, k), r.verdict(perm[i], perm[k]));
  }
}

TEST(CompareMethods, ReferenceMatrixReversalResolved) {
  const auto mc = compare_methods(testing::saaty_vargas());
  ASSERT_EQ(mc.mean_rank_reversal_pairs.size(), 1u);
  EXPECT_EQ(mc.mean_rank_reversal_pairs[0], (IndexPair{1, 3}));
  EXPECT_TRUE(mc.resolved);
  for (bool b : mc.interval_overlap) EXPECT_TRUE(b);
  // The actual GMM and EM values agree within the combined errors.
  for (std::size_t i = 0; i < 5; ++i)
    EXPECT_LE(std::abs(mc.gmm.omega[i] - mc.em.omega[i]), mc.gmm.domega[i] + mc.em.domega[i]);
}

TEST(CompareMethods, ConsistentAndUniform) {
  auto mc = compare_methods(consistent_matrix_from_values({1, 2, 4, 8}));
  EXPECT_TRUE(mc.mean_rank_reversal_pairs.empty());
  EXPECT_TRUE(mc.resolved);
  mc = compare_methods(validate_matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  EXPECT_TRUE(mc.mean_rank_reversal_pairs.empty());
  EXPECT_TRUE(mc.resolved);
}

TEST(CompareMethods, UnresolvedWhenReversalPairIsReliable) {
  // Fabricated estimates: the GMM and EM means disagree while both report
  // zero error, so the disagreement cannot be explained away.
  const auto mc = compare_estimates(simple({0.6, 0.4}, {0, 0}), simple({0.4, 0.6}, {0, 0}));
  ASSERT_EQ(mc.mean_rank_reversal_pairs.size(), 1u);
  EXPECT_FALSE(mc.resolved);
  EXPECT_FALSE(mc.interval_overlap[0]);
}

TEST(TransposedEstimate, ReferenceMatrixMatchesGmm) {
  const auto a = testing::saaty_vargas();
  const auto t = normalize(transposed_estimate(a));
  const auto g = normalize(gmm_estimate(a));
  EXPECT_EQ(t.method, Method::GMM_TRANSPOSED);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(t.omega[i], g.omega[i], 1e-10);
    EXPECT_NEAR(t.domega[i], g.domega[i], 1e-10);
  }
}

TEST(TransposedEstimate, ConsistentAndUniform) {
  const auto t = transposed_estimate(consistent_matrix_from_values({1, 2, 4}));
  const double expected[] = {0.5, 1, 2};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(t.omega[i], expected[i], 1e-14);
    EXPECT_NEAR(t.domega[i], 0.0, 1e-14);
  }
  const auto u = normalize(transposed_estimate(validate_matrix({{1, 1}, {1, 1}})));
  EXPECT_DOUBLE_EQ(u.omega[0], 0.5);
  EXPECT_DOUBLE_EQ(u.domega[1], 0.0);
}

TEST(TransposedEstimate, EquivalenceOnRandomReciprocal) {
  testing::Generator gen(54);
  for (int t = 0; t < 300; ++t) {
    const auto a = gen.reciprocal(gen.size(2, 8));
    const auto te = normalize(transposed_estimate(a));
    const auto ge = normalize(gmm_estimate(a));
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(te.omega[i], ge.omega[i], 1e-10);
      EXPECT_NEAR(te.domega[i], ge.domega[i], 1e-10);
    }
  }
}

TEST(TransposedEstimate, NonReciprocalStillFinite) {
  testing::Generator gen(55);
  for (int t = 0; t < 100; ++t) {
    const auto e = transposed_estimate(gen.positive(gen.size(2, 6)));
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_GT(e.omega[i], 0.0);
      EXPECT_GE(e.domega[i], 0.0);
    }
  }
}

TEST(Gci, Examples) {
  EXPECT_NEAR(gci(consistent_matrix_from_values({1, 2, 4})), 0.0, 1e-28);
  EXPECT_NEAR(gci(testing::saaty_vargas()), 0.273, 3e-3);
  EXPECT_NEAR(gci(testing::saaty_vargas()), testing::oracle_gci(testing::saaty_vargas()), 1e-14);
}

TEST(Gci, NotApplicable) {
  try {
    gci(validate_matrix({{1, 2}, {0.5, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
  }
  EXPECT_THROW(gci(validate_matrix({{1, 2, 3}, {1, 1, 1}, {1, 1, 1}})), Error);
}

TEST(Gci, IdentityWithErrorExponents) {
  testing::Generator gen(56);
  for (int t = 0; t < 300; ++t) {
    const auto a = gen.reciprocal(gen.size(3, 8));
    const auto d = gmm_error_exponents(a);
    double sum_sq = 0.0;
    for (double x : d) sum_sq += x * x;
    const double g = gci(a);
    EXPECT_NEAR(g * static_cast<double>(a.size() - 2), sum_sq, 1e-10);
    EXPECT_NEAR(g, testing::oracle_gci(a), 1e-12);
  }
}

}  // namespace
}  // namespace pcm
