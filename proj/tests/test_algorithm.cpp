#include "support.hpp"

#include <gtest/gtest.h>

using namespace apf;
using namespace apf::testing;

namespace {

std::vector<TurnAngle> moved(std::vector<TurnAngle> by_id, std::size_t id, const Decision& d) {
  if (d.is_move()) by_id[id] = d.destination;
  return by_id;
}

}  // namespace

TEST(SelectInInterval, FrozenValues) {
  EXPECT_EQ(select_in_interval(0, frac(1, 12), {}).chosen, frac(1, 24));
  EXPECT_EQ(select_in_interval(0, frac(1, 2), {frac(1, 4)}).chosen, frac(1, 8));
  auto c = select_in_interval(frac(1, 8), frac(1, 4), {frac(3, 16), frac(5, 32)});
  EXPECT_EQ(c.chosen, frac(9, 64));
  EXPECT_GT(c.chosen, frac(1, 8));
  EXPECT_LT(c.chosen, frac(1, 4));
  EXPECT_THROW(select_in_interval(frac(1, 4), frac(1, 4), {}), PreconditionError);
}

TEST(SelectInInterval, AlwaysInsideAndAllowed) {
  Rng rng(20);
  for (int k = 0; k < 500; ++k) {
    Rational lo = frac(static_cast<long>(rng() % 50), 100), hi = lo + frac(1 + static_cast<long>(rng() % 50), 100);
    std::set<Rational> forbidden;
    Rational probe = hi;
    for (int j = 0; j < 8; ++j) {
      probe = (lo + probe) / 2;
      if (rng() % 2) forbidden.insert(probe);
    }
    auto c = select_in_interval(lo, hi, forbidden);
    EXPECT_GT(c.chosen, lo);
    EXPECT_LT(c.chosen, hi);
    EXPECT_EQ(forbidden.count(c.chosen), 0u);
  }
}

TEST(ForbiddenEpsilons, Trivial) {
  Configuration two(turns({{0, 1}, {1, 4}}));
  EXPECT_TRUE(forbidden_epsilons_bisector(two, two[0], two[1], Direction::Forward).empty());
  Configuration three(turns({{0, 1}, {1, 4}, {1, 8}}));
  EXPECT_TRUE(forbidden_epsilons_bisector(three, three[0], three[2], Direction::Forward).count(frac(0, 1)));
}

TEST(ForbiddenEpsilons, ExactlyTheBisectorHits) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    auto c = Configuration(random_positions(rng, 3 + rng() % 6, 48));
    std::size_t m = rng() % c.size();
    Direction d = rng() % 2 ? Direction::Forward : Direction::Reverse;
    std::size_t q = c.neighbor(m, d);
    auto bad = forbidden_epsilons_bisector(c, c[m], c[q], d);
    Rational theta = angle_between(c[m], c[q], d);
    for (long s = 0; s < 96; ++s) {
      Rational a = theta * frac(s, 96);
      TurnAngle at = c[m].shifted(a, d);
      bool hit = false;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != m && i != q && on_bisector(c[i], at, c[q])) hit = true;
      EXPECT_EQ(hit, bad.count(wrap_turn(a)) > 0);
    }
    for (const auto& a : bad) {
      if (!(a < theta)) continue;
      TurnAngle at = c[m].shifted(a, d);
      bool hit = false;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (i != m && i != q && on_bisector(c[i], at, c[q])) hit = true;
      EXPECT_TRUE(hit);
    }
  }
}

TEST(Rfc, HandBuiltCases) {
  auto pat = TargetPattern::from_gaps(GapSequence(5, frac(1, 5)));
  Configuration yes(turns({{0, 1}, {1, 20}, {3, 20}, {2, 5}, {7, 10}}));
  EXPECT_TRUE(is_rfc(yes, pat));
  Configuration tie(turns({{0, 1}, {1, 20}, {3, 20}, {4, 20}, {1, 2}}));
  EXPECT_FALSE(is_rfc(tie, pat));
  Configuration at_beta(turns({{0, 1}, {1, 20}, {1, 4}, {1, 2}, {3, 4}}));
  EXPECT_FALSE(is_rfc(at_beta, pat));
}

TEST(Pfc, HandBuiltCases) {
  auto pat = TargetPattern::from_gaps(GapSequence(5, frac(1, 5)));
  auto emb = embed_targets(TurnAngle(0, 1), Direction::Forward, pat);
  Configuration placed(turns({{0, 1}, {1, 40}, {3, 40}, {3, 5}, {4, 5}}));
  EXPECT_TRUE(is_pfc(placed, emb));
  Configuration off(turns({{0, 1}, {1, 40}, {3, 40}, {7, 10}, {4, 5}}));
  EXPECT_FALSE(is_pfc(off, emb));
  auto pat3 = TargetPattern::from_gaps({frac(1, 3), frac(1, 3), frac(1, 3)});
  Configuration three(turns({{0, 1}, {1, 40}, {3, 40}}));
  EXPECT_TRUE(is_rfc(three, pat3));
  EXPECT_TRUE(is_pfc(three, embed_targets(TurnAngle(0, 1), Direction::Forward, pat3)));
}

TEST(MoveReady, TargetBehindSecondNeighbourSide) {
  auto pat = TargetPattern::from_gaps(GapSequence(5, frac(1, 5)));
  auto emb = embed_targets(TurnAngle(0, 1), Direction::Forward, pat);
  Configuration c(turns({{0, 1}, {1, 40}, {3, 40}, {7, 10}, {17, 20}}));
  auto r = move_ready(c, emb, Direction::Forward);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(c[*r], TurnAngle(7, 10));
  Configuration done(turns({{0, 1}, {1, 40}, {3, 40}, {3, 5}, {4, 5}}));
  EXPECT_FALSE(move_ready(done, emb, Direction::Forward).has_value());
  Configuration tied(turns({{0, 1}, {1, 20}, {3, 20}, {4, 20}, {1, 2}}));
  EXPECT_THROW(move_ready(tied, emb, Direction::Forward), PreconditionError);
}

TEST(MoveReady, MatchesDefinitionOracle) {
  Rng rng(22);
  int compared = 0, found = 0;
  for (int k = 0; k < 20000 && compared < 1000; ++k) {
    std::size_t n = 4 + rng() % 9;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 8 * static_cast<long>(n)));
    auto c = rfc_instance(rng, pat, k % 2 == 0);
    if (!c) continue;
    if (!LeaderView(*c, 0, Direction::Forward, pat).rfc()) continue;
    auto emb = embed_targets(TurnAngle(0, 1), Direction::Forward, pat);
    auto got = move_ready(*c, emb, Direction::Forward);
    auto want = oracle_move_ready(c->positions(), emb, Direction::Forward);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_EQ((*c)[*got], *want);
      ++found;
    }
    ++compared;
  }
  EXPECT_EQ(compared, 1000);
  EXPECT_GT(found, 100);
}

// Whenever an RFC is not yet a PFC some robot is Move Ready.
TEST(MoveReady, ExistsUntilPfc) {
  Rng rng(23);
  int seen = 0;
  for (int k = 0; k < 5000; ++k) {
    std::size_t n = 4 + rng() % 9;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 8 * static_cast<long>(n)));
    auto c = rfc_instance(rng, pat, true);
    if (!c) continue;
    LeaderView v(*c, 0, Direction::Forward, pat, TargetAnchor::Leader);
    if (!v.rfc()) continue;
    ++seen;
    EXPECT_EQ(v.move_ready_rank().has_value(), !v.all_placed());
  }
  EXPECT_GT(seen, 500);
}

TEST(Compute, TerminatesOnFormedPattern) {
  Rng rng(24);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 3 + rng() % 8;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 6 * static_cast<long>(n)));
    Configuration c(embed_targets(TurnAngle(static_cast<long>(rng() % 30), 30), Direction::Forward, pat).targets);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_EQ(compute(snapshot_of(c, i, rng() % 2), pat).kind, Decision::Kind::Terminate);
  }
}

TEST(Compute, RejectsBadInput) {
  auto pat5 = TargetPattern::from_gaps({frac(1, 10), frac(1, 5), frac(1, 5), frac(1, 5), frac(3, 10)});
  Configuration sym(turns({{0, 1}, {1, 8}, {1, 2}, {5, 8}}));
  auto pat_other = TargetPattern::from_gaps({frac(1, 10), frac(1, 5), frac(1, 5), frac(1, 2)});
  EXPECT_THROW(compute(snapshot_of(sym, 0, false), pat_other), UnsolvableError);
  EXPECT_THROW(compute(snapshot_of(sym, 0, false), pat5), StructuralError);
}

TEST(Compute, BisectorRobotYieldsLeaderConfiguration) {
  Rng rng(25);
  int seen = 0;
  for (int k = 0; k < 20000 && seen < 200; ++k) {
    std::size_t n = 3 + 2 * (rng() % 4);
    auto c = random_asymmetric(rng, n, 48);
    auto cls = classify(c);
    auto* t = std::get_if<DoubleNomineeTied>(&cls);
    if (!t || !t->bisector_robot) continue;
    ++seen;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 6 * static_cast<long>(n)));
    std::size_t b = *t->bisector_robot;
    for (bool flip : {false, true}) {
      Decision d = decide(c.positions(), b, flip, pat, std::nullopt);
      ASSERT_TRUE(d.is_move());
      EXPECT_EQ(d.rule, Rule::BisectorEscape);
      Configuration after(moved(c.positions(), b, d));
      EXPECT_TRUE(std::holds_alternative<LeaderConfig>(classify(after)));
      for (std::size_t i = 0; i < n; ++i) {
        if (i != b) {
          EXPECT_FALSE(decide(c.positions(), i, flip, pat, std::nullopt).is_move());
        }
      }
    }
  }
  EXPECT_EQ(seen, 200);
}

TEST(Compute, LeaderShrinkMakesFirstGapStrictMinimum) {
  Rng rng(26);
  int seen = 0;
  for (int k = 0; k < 20000 && seen < 300; ++k) {
    std::size_t n = 3 + rng() % 9;
    auto c = random_asymmetric(rng, n, 36);
    auto cls = classify(c);
    auto* lc = std::get_if<LeaderConfig>(&cls);
    if (!lc) continue;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 4 * static_cast<long>(n)));
    if (pattern_formed(c, pat)) continue;
    LeaderView v(c, lc->leader, lc->pivotal, pat);
    if (v.first_gap_strict_min()) continue;
    ++seen;
    Decision d = decide(c.positions(), lc->leader, rng() % 2, pat, std::nullopt);
    ASSERT_TRUE(d.is_move());
    EXPECT_EQ(d.rule, Rule::LeaderShrink);
    Configuration after(moved(c.positions(), lc->leader, d));
    auto acls = classify(after);
    auto* alc = std::get_if<LeaderConfig>(&acls);
    ASSERT_NE(alc, nullptr);
    EXPECT_EQ(after[alc->leader], d.destination);
    EXPECT_TRUE(LeaderView(after, alc->leader, alc->pivotal, pat).first_gap_strict_min());
  }
  EXPECT_EQ(seen, 300);
}

TEST(Compute, SecondGapShrinkReachesRfc) {
  Rng rng(27);
  int seen = 0;
  for (int k = 0; k < 50000 && seen < 200; ++k) {
    std::size_t n = 3 + rng() % 9;
    auto c = random_asymmetric(rng, n, 36);
    auto cls = classify(c);
    auto* lc = std::get_if<LeaderConfig>(&cls);
    if (!lc) continue;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 4 * static_cast<long>(n)));
    if (pattern_formed(c, pat)) continue;
    LeaderView v(c, lc->leader, lc->pivotal, pat);
    if (!v.first_gap_strict_min() || v.rfc() || v.final_stage()) continue;
    ++seen;
    std::size_t r2 = v.index_of_rank(2);
    Decision d = decide(c.positions(), r2, rng() % 2, pat, std::nullopt);
    ASSERT_TRUE(d.is_move());
    EXPECT_EQ(d.rule, Rule::SecondGapShrink);
    Configuration after(moved(c.positions(), r2, d));
    auto acls = classify(after);
    auto* alc = std::get_if<LeaderConfig>(&acls);
    ASSERT_NE(alc, nullptr);
    EXPECT_EQ(after[alc->leader], c[lc->leader]);
    EXPECT_TRUE(LeaderView(after, alc->leader, alc->pivotal, pat).rfc());
  }
  EXPECT_EQ(seen, 200);
}

// r3.. on the working targets, r2 short of T2: r2 steps onto T2, then the
// leader steps back onto T0 and the pattern is formed.
TEST(Compute, FinalStageFormsPattern) {
  Rng rng(28);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 3 + rng() % 10;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 5 * static_cast<long>(n)));
    Rational m = *std::min_element(pat.betas.begin(), pat.betas.end());
    Rational a0 = m / 4, a1 = m / 2;
    std::vector<TurnAngle> pos = {TurnAngle(0, 1), TurnAngle(a0)};
    Rational acc = a0;
    for (std::size_t j = 2; j < n; ++j) {
      acc += pat.betas[j - 1];
      pos.emplace_back(acc);
    }
    const TurnAngle t2 = pos[2];
    pos[2] = TurnAngle(a0 + a1);
    Configuration c(pos);
    for (std::size_t i = 0; i < n; ++i) {
      Decision d = decide(c.positions(), i, rng() % 2, pat, std::nullopt);
      if (c[i] == TurnAngle(a0 + a1)) {
        ASSERT_TRUE(d.is_move());
        EXPECT_EQ(d.rule, Rule::SecondFinal);
        EXPECT_EQ(d.destination, t2);
      } else {
        EXPECT_FALSE(d.is_move()) << "robot " << i << " rule " << to_string(d.rule);
      }
    }
    pos[2] = t2;
    Configuration ready(pos);
    auto cls = classify(ready);
    ASSERT_TRUE(std::holds_alternative<LeaderConfig>(cls));
    EXPECT_EQ(ready[std::get<LeaderConfig>(cls).leader], TurnAngle(0, 1));
    std::size_t leader = *ready.index_of(TurnAngle(0, 1));
    Decision d = decide(ready.positions(), leader, rng() % 2, pat, std::nullopt);
    ASSERT_TRUE(d.is_move());
    EXPECT_EQ(d.rule, Rule::LeaderFinal);
    EXPECT_EQ(d.destination, TurnAngle(a0 - pat.betas[0]));
    EXPECT_TRUE(pattern_formed(Configuration(moved(ready.positions(), leader, d)), pat));
  }
}

TEST(Compute, DecisionIsIndependentOfOrientation) {
  Rng rng(29);
  for (int k = 0; k < 600; ++k) {
    std::size_t n = 3 + rng() % 9;
    auto c = random_asymmetric(rng, n, 40);
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 4 * static_cast<long>(n)));
    for (std::size_t i = 0; i < n; ++i) {
      Decision a = decide(c.positions(), i, false, pat, std::nullopt);
      Decision b = decide(c.positions(), i, true, pat, std::nullopt);
      ASSERT_EQ(a.kind, b.kind);
      EXPECT_EQ(a.rule, b.rule);
      if (!a.is_move()) continue;
      bool mirror_axis = c.rooted_sequence(i, Direction::Forward) == c.rooted_sequence(i, Direction::Reverse);
      if (a.destination == b.destination) {
        EXPECT_EQ(a.path, b.path);
      } else {
        // Only a robot on a mirror axis may pick either side.
        EXPECT_TRUE(mirror_axis);
        EXPECT_EQ(angle_between(c[i], a.destination, a.path), angle_between(c[i], b.destination, b.path));
        EXPECT_EQ(a.path, opposite(b.path));
      }
    }
  }
}

TEST(Compute, MutantWidensSecondGapInterval) {
  auto pat = TargetPattern::from_gaps({frac(1, 12), frac(5, 12), frac(1, 2)});
  Configuration c(turns({{0, 1}, {1, 24}, {3, 8}}));
  std::size_t r2 = *c.index_of(TurnAngle(3, 8));
  AlgorithmOptions mutant;
  mutant.drop_second_gap_lower_bound = true;
  Decision good = decide(c.positions(), r2, false, pat, std::nullopt);
  Decision bad = decide(c.positions(), r2, false, pat, std::nullopt, mutant);
  ASSERT_EQ(good.rule, Rule::SecondGapShrink);
  ASSERT_EQ(bad.rule, Rule::SecondGapShrink);
  EXPECT_NE(good.destination, bad.destination);
  Configuration after_good(moved(c.positions(), r2, good));
  Configuration after_bad(moved(c.positions(), r2, bad));
  EXPECT_TRUE(is_rfc(after_good, pat));
  EXPECT_FALSE(is_rfc(after_bad, pat));
}

TEST(Randomized, TieBreakYieldsLeader) {
  Rng rng(30);
  int seen = 0;
  for (int k = 0; k < 50000 && seen < 200; ++k) {
    std::size_t n = 4 + 2 * (rng() % 3);
    auto c = random_asymmetric(rng, n, 40);
    auto cls = classify(c);
    auto* t = std::get_if<DoubleNomineeTied>(&cls);
    if (!t) continue;
    ++seen;
    auto pat = TargetPattern::from_gaps(random_gaps(rng, n, 4 * static_cast<long>(n)));
    std::size_t a = t->nominee_a.index, b = t->nominee_b.index;
    Decision da = decide(c.positions(), a, rng() % 2, pat, rng());
    Decision db = decide(c.positions(), b, rng() % 2, pat, rng());
    ASSERT_EQ(da.rule, Rule::RandomTieBreak);
    ASSERT_EQ(db.rule, Rule::RandomTieBreak);
    ASSERT_TRUE(da.random_epsilon && db.random_epsilon);
    EXPECT_EQ(angle_between(c[a], da.destination, da.path), *da.random_epsilon);
    EXPECT_TRUE(std::holds_alternative<LeaderConfig>(classify(Configuration(moved(c.positions(), a, da)))));
    if (*da.random_epsilon != *db.random_epsilon) {
      auto both = moved(moved(c.positions(), a, da), b, db);
      EXPECT_TRUE(std::holds_alternative<LeaderConfig>(classify(Configuration(both))));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != a && i != b) {
        EXPECT_FALSE(decide(c.positions(), i, false, pat, rng()).is_move());
      }
    }
  }
  EXPECT_EQ(seen, 200);
}

TEST(Randomized, Preconditions) {
  Rng rng(31);
  Configuration odd(turns({{1, 10}, {9, 10}, {1, 2}}));
  EXPECT_THROW(randomized_nominee_move(snapshot_of(odd, 0, false), rng), PreconditionError);
  Configuration lead(turns({{0, 1}, {1, 20}, {3, 20}, {1, 2}}));
  EXPECT_THROW(randomized_nominee_move(snapshot_of(lead, 0, false), rng), PreconditionError);
}

TEST(ToGlobal, MapsLocalMoveBack) {
  Decision d = Decision::move(TurnAngle(1, 10), Direction::Forward, Rule::MoveReady);
  Decision g = to_global(d, TurnAngle(1, 2), true);
  EXPECT_EQ(g.destination, TurnAngle(2, 5));
  EXPECT_EQ(g.path, Direction::Reverse);
  Decision h = to_global(d, TurnAngle(1, 2), false);
  EXPECT_EQ(h.destination, TurnAngle(3, 5));
  EXPECT_EQ(h.path, Direction::Forward);
}
