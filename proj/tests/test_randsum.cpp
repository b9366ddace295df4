#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "weibull_mix/errors.hpp"
#include "weibull_mix/randsum.hpp"

namespace wmix {
namespace {

RandomSumScheme scheme_of(IncrementFamily f, std::uint64_t k, double gamma = 1.0, double mu = 0.0) {
  RandomSumScheme s;
  s.family = f;
  s.k_n = k;
  s.target_gamma = gamma;
  s.mu = mu;
  return s;
}

TEST(RandomSum, Validation) {
  auto s = scheme_of(IncrementFamily::normal, 0);
  EXPECT_THROW(s.validate(), DomainError);
  s.k_n = 10;
  s.target_gamma = 1.2;
  EXPECT_THROW(s.validate(), DomainError);
  EXPECT_THROW(increment_family_from_string("poisson"), DomainError);
  EXPECT_EQ(increment_family_from_string(to_string(IncrementFamily::two_point)), IncrementFamily::two_point);
}

TEST(RandomSum, ConstantRowOfOne) {
  auto s = scheme_of(IncrementFamily::constant, 1, 1.0, 2.5);
  RandomStream r(1);
  EXPECT_EQ(simulate_row_sum(s, r), 2.5);
}

TEST(RandomSum, RowMean) {
  for (auto f : {IncrementFamily::two_point, IncrementFamily::uniform, IncrementFamily::normal}) {
    const auto s = scheme_of(f, 400, 1.0, 1.0);
    const auto d = draw_ensemble(100000, RandomStream(2), [&](RandomStream& r) { return simulate_row_sum(s, r); });
    EXPECT_LT(estimate_mean(d).z_score(1.0), 4.0) << to_string(f);
  }
}

TEST(RandomSum, RowCltUniform) {
  const auto s = scheme_of(IncrementFamily::uniform, 400);
  const EmpiricalSample d(draw_ensemble(100000, RandomStream(3), [&](RandomStream& r) { return simulate_row_sum(s, r); }));
  EXPECT_LT(ks_one_sample(d, std_normal_cdf).statistic, 0.02);
}

// Two-point sums at k_n = 400 live on a lattice of step 0.1; the atom at 0
// alone keeps the KS distance to Phi at P(S = 0) / 2.
TEST(RandomSum, TwoPointRowLatticeFloor) {
  const double atom = std::exp(std::lgamma(401.0) - 2.0 * std::lgamma(201.0) - 400.0 * std::log(2.0));
  EXPECT_NEAR(atom / 2.0, 0.01993, 1e-4);
  const auto s = scheme_of(IncrementFamily::two_point, 400);
  const EmpiricalSample d(draw_ensemble(100000, RandomStream(4), [&](RandomStream& r) { return simulate_row_sum(s, r); }));
  const double stat = ks_one_sample(d, std_normal_cdf).statistic;
  EXPECT_GT(stat, 0.019);
  EXPECT_LT(stat, 0.026);
}

TEST(RandomSum, TwoPointIncrementsAreSigns) {
  const auto s = scheme_of(IncrementFamily::two_point, 1);
  RandomStream r(5);
  for (int i = 0; i < 100; ++i) {
    const double v = simulate_row_sum(s, r);
    ASSERT_TRUE(v == 1.0 || v == -1.0);
  }
}

TEST(Lindeberg, Examples) {
  auto s = scheme_of(IncrementFamily::two_point, 4);
  EXPECT_EQ(lindeberg_fraction(s, 0.1), 1.0);
  s.k_n = 101;
  EXPECT_EQ(lindeberg_fraction(s, 0.1), 0.0);
  EXPECT_EQ(lindeberg_fraction(scheme_of(IncrementFamily::constant, 4), 0.1), 0.0);
  EXPECT_THROW(lindeberg_fraction(s, 0.0), DomainError);
}

TEST(Lindeberg, NonincreasingInK) {
  for (auto f : {IncrementFamily::two_point, IncrementFamily::uniform, IncrementFamily::normal}) {
    double prev = INFINITY;
    for (std::uint64_t k : {4, 16, 64, 256}) {
      const double v = lindeberg_fraction(scheme_of(f, k), 0.1);
      EXPECT_LE(v, prev) << to_string(f) << " " << k;
      EXPECT_GE(v, 0.0);
      prev = v;
    }
  }
}

TEST(Lindeberg, NormalMatchesMonteCarlo) {
  const auto s = scheme_of(IncrementFamily::normal, 50);
  const double sd = 1.0 / std::sqrt(50.0);
  const auto d = draw_ensemble(400000, RandomStream(6), [sd](RandomStream& r) {
    const double x = sd * r.normal();
    return std::abs(x) >= 0.1 ? 50.0 * x * x : 0.0;
  });
  EXPECT_LT(estimate_mean(d).z_score(lindeberg_fraction(s, 0.1)), 4.0);
}

TEST(RandomSum, IndexLaw) {
  auto s = scheme_of(IncrementFamily::two_point, 400);
  RandomStream r(7);
  s.index_law = IndexLaw::constant;
  EXPECT_EQ(draw_index(s, r), 400u);
  s.index_law = IndexLaw::mixing;
  for (int i = 0; i < 1000; ++i) ASSERT_GE(draw_index(s, r), 1u);
}

TEST(ConvergenceStudy, LaplaceLimitGammaOne) {
  const auto s = scheme_of(IncrementFamily::two_point, 400, 1.0, 1.0);
  const auto rep = run_convergence_study(s, 100000, RandomStream(8));
  ASSERT_TRUE(rep.closed_form_ks.has_value());
  EXPECT_LT(*rep.closed_form_ks, 0.02);
  EXPECT_LT(rep.index_ks, 0.02);
  EXPECT_LT(rep.randsum_ks, 0.02);
  EXPECT_EQ(rep.lindeberg_fraction, 0.0);
}

TEST(ConvergenceStudy, NoClosedFormBelowOne) {
  const auto s = scheme_of(IncrementFamily::normal, 100, 0.7, 0.0);
  const auto rep = run_convergence_study(s, 2000, RandomStream(9));
  EXPECT_FALSE(rep.closed_form_ks.has_value());
  EXPECT_THROW(run_convergence_study(s, 999, RandomStream(9)), DomainError);
}

TEST(ConvergenceStudy, DeterministicAndWorkerInvariant) {
  const auto s = scheme_of(IncrementFamily::uniform, 50, 1.0, 0.5);
  StudyOptions one, four;
  four.workers = 4;
  const auto a = run_convergence_study(s, 5000, RandomStream(10), one);
  const auto b = run_convergence_study(s, 5000, RandomStream(10), one);
  const auto c = run_convergence_study(s, 5000, RandomStream(10), four);
  for (const auto* r : {&b, &c}) {
    EXPECT_EQ(a.row_ks, r->row_ks);
    EXPECT_EQ(a.index_ks, r->index_ks);
    EXPECT_EQ(a.randsum_ks, r->randsum_ks);
    EXPECT_EQ(a.closed_form_ks, r->closed_form_ks);
  }
}

TEST(ConvergenceStudy, SweepOneReportPerK) {
  const auto s = scheme_of(IncrementFamily::normal, 1, 1.0, 1.0);
  const std::array<std::uint64_t, 3> ks{25, 100, 400};
  const auto reps = run_convergence_sweep(s, ks, 20000, RandomStream(11));
  ASSERT_EQ(reps.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(reps[i].k_n, ks[i]);
  EXPECT_THROW(run_convergence_sweep(s, std::span<const std::uint64_t>{}, 20000, RandomStream(11)), DomainError);
}

TEST(ConvergenceStudy, NecessityProxy) {
  auto s = scheme_of(IncrementFamily::uniform, 400, 0.5, 1.0);
  s.index_law = IndexLaw::constant;
  const EmpiricalSample sums(draw_ensemble(100000, RandomStream(12), [&](RandomStream& r) { return simulate_random_sum(s, r); }));
  const AsymWeibullIILaw law(1.0, 1.0, 0.5);
  const EmpiricalSample ref(draw_ensemble(100000, RandomStream(13), [&](RandomStream& r) { return sample_asym_weibull2(law, r); }));
  EXPECT_LT(ks_one_sample(sums, [](double x) { return std_normal_cdf(x - 1.0); }).statistic, 0.02);
  EXPECT_GT(ks_two_sample(sums, ref).statistic, 0.05);
}

TEST(HTable, MatchesQuadrature) {
  const MixingLawH h(0.6);
  const auto t = tabulate_h_gamma(h, 200);
  EXPECT_TRUE(t.log_axis());
  for (double y : {0.05, 0.8, 3.0, 20.0}) EXPECT_NEAR(t(y), h_gamma_cdf(h, y), 5e-4) << y;
}

}  // namespace
}  // namespace wmix
