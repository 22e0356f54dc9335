#include "support.hpp"

#include "apf/harness.hpp"

#include <gtest/gtest.h>

using namespace apf;
using namespace apf::testing;

TEST(Gen, DeterministicPerSeed) {
  for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
    auto a = gen_instance(7, seed), b = gen_instance(7, seed);
    EXPECT_EQ(instance_config_text(a), instance_config_text(b));
    EXPECT_EQ(instance_pattern_text(a), instance_pattern_text(b));
  }
  EXPECT_NE(instance_config_text(gen_instance(7, 1)), instance_config_text(gen_instance(7, 2)));
}

TEST(Gen, AsymmetricGridInstances) {
  for (std::size_t n = 3; n <= 12; ++n)
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto inst = gen_instance(n, seed);
      ASSERT_EQ(inst.config.size(), n);
      EXPECT_EQ(oracle_fold(inst.config.positions()), 1u);
      EXPECT_TRUE(is_valid_gap_sequence(inst.pattern));
      ASSERT_EQ(inst.pattern.size(), n);
      for (const auto& p : inst.config.positions()) EXPECT_EQ(Rational(p.value() * static_cast<long>(4 * n)).get_den(), 1);
      for (const auto& g : inst.pattern) EXPECT_EQ(Rational(g * static_cast<long>(4 * n)).get_den(), 1);
    }
}

TEST(Gen, Preconditions) {
  EXPECT_THROW(gen_instance(2, 0), PreconditionError);
  EXPECT_THROW(gen_instance(5, 0, 19), PreconditionError);
  EXPECT_NO_THROW(gen_instance(5, 0, 20));
}

TEST(Gen, UniformBelowStaysInRange) {
  std::mt19937_64 rng(9);
  std::vector<int> hits(7);
  for (int k = 0; k < 7000; ++k) ++hits[uniform_below(rng, 7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Batch, ZeroTrialsIsEmpty) {
  BatchOptions o;
  o.ns = {3, 5};
  o.trials = 0;
  auto cells = batch(o);
  EXPECT_TRUE(cells.empty());
  EXPECT_EQ(batch_table(cells), "(no trials)\n");
}

TEST(Batch, EvenCountInDeterministicModeIsAnErrorCell) {
  BatchOptions o;
  o.ns = {4};
  o.trials = 2;
  o.schedulers = {SchedulerKind::FullSync};
  auto cells = batch(o);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_FALSE(cells[0].error.empty());
  EXPECT_FALSE(cells[0].ok());
  EXPECT_FALSE(batch_ok(cells));
  EXPECT_NE(batch_csv(cells).find("error"), std::string::npos);
}

TEST(Batch, SmallRunIsClean) {
  BatchOptions o;
  o.ns = {3, 5};
  o.trials = 6;
  o.seed = 11;
  auto cells = batch(o);
  ASSERT_EQ(cells.size(), 8u);
  for (const auto& c : cells) {
    EXPECT_TRUE(c.ok()) << c.n << " " << to_string(c.scheduler) << (c.failures.empty() ? "" : c.failures.front());
    EXPECT_EQ(c.trials, 6u);
    EXPECT_EQ(c.bound, c.n + 4);
    EXPECT_LE(c.max_epochs, c.bound);
  }
  auto csv = batch_csv(cells);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,scheduler,trials,formed,max_epochs,mean_epochs,bound,violations,collisions");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(Batch, ParallelMatchesSerial) {
  BatchOptions o;
  o.ns = {5, 7};
  o.trials = 5;
  o.seed = 3;
  auto serial = batch_csv(batch(o));
  o.jobs = 4;
  EXPECT_EQ(batch_csv(batch(o)), serial);
}

TEST(Batch, RandomizedEvenCells) {
  BatchOptions o;
  o.ns = {4, 6};
  o.trials = 5;
  o.mode = Mode::RandomizedEven;
  auto cells = batch(o);
  for (const auto& c : cells) {
    EXPECT_TRUE(c.ok()) << (c.failures.empty() ? c.error : c.failures.front());
    EXPECT_EQ(c.bound, c.n + 6);
  }
}

TEST(Batch, TrialSeedsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::size_t n = 3; n < 10; ++n)
    for (std::size_t t = 0; t < 50; ++t) seeds.insert(trial_seed(0, n, t));
  EXPECT_EQ(seeds.size(), 7u * 50u);
}
