#include <gtest/gtest.h>

#include <random>

#include "hca/embed.hpp"

using namespace hca;

namespace {

RuleContext ctx(State self, std::vector<State> nb) { return {self, std::move(nb)}; }

}  // namespace

TEST(Theorem1, StateCounts) {
  EXPECT_EQ(embed_theorem1(elementary(110), GridKind::Pentagrid).n_states(), 3);
  for (int n = 1; n <= 4; ++n) {
    Rule1D a(n, std::vector<State>(n * n * n, 0));
    for (auto g : {GridKind::Pentagrid, GridKind::Heptagrid, GridKind::Dodecagrid})
      EXPECT_EQ(embed_theorem1(a, g).n_states(), n + 1);
  }
}

TEST(Theorem1, PentagridYellowAction) {
  const auto a = elementary(110);
  const auto b = embed_theorem1(a, GridKind::Pentagrid);
  const State bl = *b.blue();
  EXPECT_EQ(bl, 2);
  // left at side 1, right at side 4
  for (int l = 0; l < 2; ++l)
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r < 2; ++r) {
        const RuleContext c = ctx(s, {State(l), bl, bl, State(r), bl});
        EXPECT_EQ(b.next_state(c), a(l, s, r));
        // any rotation of the same context
        EXPECT_EQ(b.next_state(rotated_context(c, 2)), a(l, s, r));
      }
}

TEST(Theorem1, BlueCellsAreUntouched) {
  const auto b = embed_theorem1(elementary(110), GridKind::Pentagrid);
  EXPECT_EQ(b.next_state(ctx(2, {1, 2, 2, 2, 2})), 2);
  EXPECT_EQ(b.next_state(ctx(2, {1, 2, 2, 1, 2})), 2);
  EXPECT_EQ(b.next_state(ctx(0, {2, 2, 2, 2, 2})), 0);
}

TEST(Theorem1, InvariantSchemaOnPlanarGrids) {
  for (int k : {110, 30, 54}) {
    for (auto g : {GridKind::Pentagrid, GridKind::Heptagrid}) {
      const auto rules = schema_rules(embed_theorem1(elementary(k), g));
      EXPECT_EQ(rules.size(), 8u);
      EXPECT_TRUE(check_rotation_invariance(rules, g).ok());
    }
  }
}

TEST(Theorem1, DodecagridHalfTurnSwapsLeftAndRight) {
  // The half-turn about the axis of the edge between faces 0 and 5 fixes
  // the all-blue positions and swaps faces 1 and 4.
  const auto m = motion_mapping(0, 5, 5, 0);
  EXPECT_EQ(m(1), 4);
  EXPECT_EQ(m(4), 1);
  for (int f : {2, 3, 6, 7, 8, 9, 10, 11}) EXPECT_NE(m(f), 1);
  // so the schema is invariant exactly for left-right symmetric rules
  for (int k : {90, 150, 204, 0, 232})
    EXPECT_TRUE(check_rotation_invariance(schema_rules(embed_theorem1(elementary(k), GridKind::Dodecagrid)),
                                          GridKind::Dodecagrid).ok()) << k;
  const auto rep = check_rotation_invariance(schema_rules(embed_theorem1(elementary(110), GridKind::Dodecagrid)),
                                             GridKind::Dodecagrid);
  EXPECT_FALSE(rep.ok());
  // rule 110 differs from its mirror image only on (0,0,1) vs (1,0,0)
  ASSERT_EQ(rep.conflicts.size(), 1u);
  EXPECT_EQ(rep.conflicts[0].minimal.self, 0);
}

TEST(Theorem3, TwoStatesAndPattern) {
  const auto b = embed_theorem3(elementary(110));
  EXPECT_EQ(b.n_states(), 2);
  EXPECT_EQ(b.white(), 0);
  EXPECT_EQ(b.red(), 1);
  const auto& p = b.pattern();
  EXPECT_EQ(p.left(), 4);   // position 5
  EXPECT_EQ(p.right(), 2);  // position 3
  EXPECT_EQ(p.positions[0], (PatternPosition{PositionKind::Fixed, 1}));
  EXPECT_TRUE(check_rotation_invariance(schema_rules(b), GridKind::Pentagrid).ok());
}

TEST(Theorem3, NotFixable) {
  EXPECT_THROW(embed_theorem3(elementary(0)), NotFixableError);
  EXPECT_THROW(embed(elementary(110), Theorem::T3, GridKind::Heptagrid), PreconditionError);
}

TEST(Theorem3, GreenCellKeepsW) {
  const auto b = embed_theorem3(elementary(110));
  // cell 2_1: W with neighbours B W W W W matches with left = right = W and keeps W
  const RuleContext c = ctx(0, {1, 0, 0, 0, 0});
  const auto e = b.evaluate(c);
  EXPECT_EQ(e.matches, 1);
  EXPECT_EQ(b.next_state(c), 0);
  EXPECT_EQ(b.next_state(ctx(0, {0, 0, 0, 0, 0})), 0);
}

TEST(Theorem3, WitnessStatesAreUsed) {
  // q = 2, u = 0 (see the 1D tests)
  Rule1D r(3, std::vector<State>(27, 1));
  r.at(2, 2, 2) = 2;
  r.at(0, 2, 2) = 2;
  r.at(2, 0, 2) = 0;
  const auto b = embed_theorem3(r);
  EXPECT_EQ(b.white(), 2);
  EXPECT_EQ(b.red(), 0);
  EXPECT_EQ(b.n_states(), 3);
}

TEST(Theorem4, StateCountsAndPreconditions) {
  EXPECT_EQ(embed_theorem4(elementary(110), GridKind::Heptagrid).n_states(), 2);
  EXPECT_EQ(embed_theorem4(elementary(110), GridKind::Dodecagrid).n_states(), 2);
  EXPECT_THROW(embed_theorem4(Rule1D(1, {0}), GridKind::Heptagrid), PreconditionError);
  EXPECT_THROW(embed_theorem4(elementary(110), GridKind::Pentagrid), PreconditionError);
  EXPECT_EQ(embed_theorem1(Rule1D(1, {0}), GridKind::Heptagrid).n_states(), 2);
}

TEST(Theorem4, DodecagridRedFaces) {
  const auto b = embed_theorem4(elementary(110), GridKind::Dodecagrid);
  std::vector<int> red;
  for (int f = 0; f < 12; ++f)
    if (b.pattern().positions[f] == PatternPosition{PositionKind::Fixed, b.red()}) red.push_back(f);
  EXPECT_EQ(red, (std::vector<int>{0, 3, 9, 10}));
  EXPECT_EQ(b.pattern().left(), 1);
  EXPECT_EQ(b.pattern().right(), 4);
}

TEST(Theorem4, HeptagridAdjacentMarkersDoNotMatch) {
  const auto b = embed_theorem4(elementary(110), GridKind::Heptagrid);
  // the central cell of the heptagrid matches
  EXPECT_EQ(b.evaluate(ctx(1, {0, 1, 0, 1, 1, 0, 0})).matches, 1);
  // exactly two B's, cyclically consecutive: never matches
  for (int i = 0; i < 7; ++i)
    for (State self : {0, 1}) {
      std::vector<State> nb(7, 0);
      nb[i] = nb[(i + 1) % 7] = 1;
      EXPECT_EQ(b.evaluate(ctx(self, nb)).matches, 0);
    }
  EXPECT_EQ(b.evaluate(ctx(1, {1, 0, 0, 0, 0, 0, 0})).matches, 0);
}

TEST(Theorem4, DodecagridSchemaInvariantForRule110) {
  const auto b = embed_theorem4(elementary(110), GridKind::Dodecagrid);
  EXPECT_TRUE(check_rotation_invariance(schema_rules(b), GridKind::Dodecagrid).ok());
  // the marker set admits no motion exchanging faces 1 and 4
  for (const auto& m : enumerate_motions()) {
    if (m(1) != 4 || m(4) != 1) continue;
    std::set<int> img;
    for (int f : {0, 3, 9, 10}) img.insert(m(f));
    EXPECT_NE(img, (std::set<int>{0, 3, 9, 10}));
  }
}

TEST(Evaluate, RotationInvariantByConstruction) {
  std::mt19937 rng(5);
  for (auto g : {GridKind::Pentagrid, GridKind::Heptagrid, GridKind::Dodecagrid}) {
    const auto b = embed_theorem1(elementary(110), g);
    for (int trial = 0; trial < 100; ++trial) {
      RuleContext c{State(rng() % 2), std::vector<State>(arity(g), 2)};
      c.neighbors[rng() % arity(g)] = rng() % 2;
      c.neighbors[rng() % arity(g)] = rng() % 2;
      const auto& group = rotation_group(g);
      const auto m = group[rng() % group.size()];
      EXPECT_EQ(b.evaluate(c).outputs, b.evaluate(rotated_context(c, m)).outputs);
    }
  }
}

TEST(Automaton, JsonRoundTrip) {
  for (const auto& b : {embed_theorem1(elementary(110), GridKind::Dodecagrid), embed_theorem3(elementary(110)),
                        embed_theorem4(elementary(54), GridKind::Heptagrid)}) {
    const auto j = to_json(b);
    const auto c = automaton_from_json(j);
    EXPECT_EQ(c.grid(), b.grid());
    EXPECT_EQ(c.theorem(), b.theorem());
    EXPECT_EQ(c.n_states(), b.n_states());
    EXPECT_EQ(c.pattern(), b.pattern());
    EXPECT_EQ(c.action(), b.action());
    EXPECT_EQ(to_json(c), j);
  }
}

TEST(Automaton, ContextRulesOnePerAlignment) {
  const auto b = embed_theorem1(elementary(110), GridKind::Dodecagrid);
  RuleContext c{0, std::vector<State>(12, 2)};
  c.neighbors[1] = 1;
  c.neighbors[4] = 0;
  const auto rules = context_rules(b, {c});
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_NE(rules[0].next, rules[1].next);
}
