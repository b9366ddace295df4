#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "weibull_mix/montecarlo.hpp"
#include "weibull_mix/rng.hpp"

namespace wmix {
namespace {

using Ctr = Philox4x32::Counter;
using Key = Philox4x32::Key;

TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::apply(Ctr{0, 0, 0, 0}, Key{0, 0});
  EXPECT_EQ(out, (Ctr{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::apply(Ctr{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                     Key{0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (Ctr{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::apply(Ctr{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                     Key{0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (Ctr{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

std::vector<std::uint64_t> words(RandomStream s, int n) {
  std::vector<std::uint64_t> v;
  for (int i = 0; i < n; ++i) v.push_back(s());
  return v;
}

TEST(RandomStream, SameSeedSameSequence) {
  EXPECT_EQ(words(RandomStream(42), 100), words(RandomStream(42), 100));
  EXPECT_NE(words(RandomStream(42), 100), words(RandomStream(43), 100));
  EXPECT_NE(words(RandomStream(42, 0), 100), words(RandomStream(42, 1), 100));
}

TEST(RandomStream, SubstreamsDifferAndDoNotAdvanceParent) {
  RandomStream base(7);
  const auto a = words(base.substream(0), 50);
  const auto b = words(base.substream(1), 50);
  EXPECT_NE(a, b);
  EXPECT_EQ(words(base, 50), a);
  EXPECT_EQ(words(base.substream(1), 50), b);
}

TEST(RandomStream, DeriveIsDeterministicAndSeparated) {
  const RandomStream base(11);
  EXPECT_EQ(words(base.derive(3), 20), words(RandomStream(11).derive(3), 20));
  EXPECT_NE(words(base.derive(3), 20), words(base.derive(4), 20));
  EXPECT_NE(words(base.substream(1).derive(3), 20), words(base.derive(3), 20));
  EXPECT_NE(words(base.derive(0), 20), words(base, 20));
}

TEST(RandomStream, UniformOpenInterval) {
  RandomStream s(1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(RandomStream, NormalAndExponentialMoments) {
  const auto z = draw_ensemble(200000, RandomStream(5), [](RandomStream& s) { return s.normal(); });
  const auto e = draw_ensemble(200000, RandomStream(6), [](RandomStream& s) { return s.exponential(); });
  EXPECT_LT(estimate_mean(z).z_score(0.0), 4.0);
  EXPECT_LT(estimate_mean(e).z_score(1.0), 4.0);
}

TEST(DrawEnsemble, IndependentOfWorkerCount) {
  const RandomStream s(99);
  auto f = [](RandomStream& r) { return r.normal() + r.uniform(); };
  const auto one = draw_ensemble(10001, s, f, 1);
  EXPECT_EQ(one, draw_ensemble(10001, s, f, 3));
  EXPECT_EQ(one, draw_ensemble(10001, s, f, 8));
}

}  // namespace
}  // namespace wmix
