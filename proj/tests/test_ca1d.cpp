#include <gtest/gtest.h>

#include "hca/ca1d.hpp"

using namespace hca;

TEST(Elementary, Rule110Entries) {
  const auto r = elementary(110);
  EXPECT_EQ(r(0, 1, 0), 1);
  EXPECT_EQ(r(1, 0, 0), 0);
  EXPECT_EQ(r(0, 0, 0), 0);
  // 110 = 01101110b, bit 4a+2b+c
  const int bits[8] = {0, 1, 1, 1, 0, 1, 1, 0};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) EXPECT_EQ(r(a, b, c), bits[4 * a + 2 * b + c]);
}

TEST(Elementary, ZeroAndIdentity) {
  const auto z = elementary(0), id = elementary(204);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        EXPECT_EQ(z(a, b, c), 0);
        EXPECT_EQ(id(a, b, c), b);
      }
  EXPECT_THROW(elementary(256), PreconditionError);
}

TEST(Rule1D, RejectsBadTables) {
  EXPECT_THROW(Rule1D(2, std::vector<State>(7, 0)), PreconditionError);
  EXPECT_THROW(Rule1D(2, std::vector<State>(8, 2)), PreconditionError);
}

TEST(Fixable, KnownRules) {
  const auto w = is_fixable(elementary(110));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (FixabilityWitness{0, 1}));
  EXPECT_FALSE(is_fixable(elementary(0)));
  EXPECT_EQ(*is_fixable(elementary(204)), (FixabilityWitness{0, 1}));
}

TEST(Fixable, AgreesWithDirectInspectionForAllElementaryRules) {
  for (int k = 0; k < 256; ++k) {
    const auto r = elementary(k);
    bool direct = false;
    for (int q = 0; q < 2; ++q) {
      const int u = 1 - q;
      const int bit_qqq = (k >> (4 * q + 2 * q + q)) & 1;
      const int bit_uqq = (k >> (4 * u + 2 * q + q)) & 1;
      const int bit_quq = (k >> (4 * q + 2 * u + q)) & 1;
      direct = direct || (bit_qqq == q && bit_uqq == q && bit_quq == u);
    }
    EXPECT_EQ(is_fixable(r).has_value(), direct) << "rule " << k;
  }
}

TEST(Fixable, WitnessNeedNotBeZeroOne) {
  // 3 states: 2 is quiescent, fixed in context (0, 2); 0 is fixed in (2, 2)
  std::vector<State> t(27, 1);
  Rule1D r(3, t);
  r.at(2, 2, 2) = 2;
  r.at(0, 2, 2) = 2;
  r.at(2, 0, 2) = 0;
  EXPECT_EQ(*is_fixable(r), (FixabilityWitness{2, 0}));
}

TEST(Step1D, Rule110SingleOne) {
  Tape t{{0, 0, 0, 1, 0, 0, 0}, -3, 0};
  const Tape n = step_1d(elementary(110), t);
  EXPECT_EQ(n.origin, -4);
  std::vector<State> expect = {0, 0, 0, 1, 1, 0, 0, 0, 0};
  EXPECT_EQ(n.window, expect);
}

TEST(Step1D, ZeroRuleAndIdentity) {
  Tape t{{1, 0, 1, 1}, 5, 0};
  const Tape z = step_1d(elementary(0), t);
  for (State s : z.window) EXPECT_EQ(s, 0);
  const Tape id = step_1d(elementary(204), t);
  EXPECT_EQ(id.window.size(), 6u);
  for (long p = t.first(); p <= t.last(); ++p) EXPECT_EQ(id.at(p), t.at(p));
}

TEST(Step1D, PaddingEvolvesWithTheBackground) {
  // rule 1 maps 000 -> 1: the uniform background flips
  const Tape n = step_1d(elementary(1), Tape{{0}, 0, 0});
  EXPECT_EQ(n.padding, 1);
  EXPECT_EQ(n.at(100), 1);
  EXPECT_THROW(step_1d(elementary(1), Tape{}), PreconditionError);
}

TEST(Run1D, TraceLengthLightConeDeterminism) {
  const auto r = elementary(110);
  const Tape t{{1}, 0, 0};
  EXPECT_EQ(run_1d(r, t, 0).size(), 1u);
  const auto trace = run_1d(r, t, 5);
  ASSERT_EQ(trace.size(), 6u);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_EQ(trace[i].first(), trace[i - 1].first() - 1);
    EXPECT_EQ(trace[i].last(), trace[i - 1].last() + 1);
  }
  EXPECT_EQ(run_1d(r, trace[2], 3).back(), trace[5]);
  EXPECT_EQ(run_1d(r, t, 5), trace);
}

TEST(Rule1D, JsonRoundTrip) {
  const auto r = elementary(30);
  EXPECT_EQ(rule1d_from_json(to_json(r)), r);
}
