#pragma once

// Bounded model checking of the SSYNC safety claims, and the FSYNC
// symmetry experiment.

#include "apf/simulator.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <unordered_set>

namespace apf {

struct ExploreOptions {
  AlgorithmOptions algorithm;
  // Refuse when the raw prefix count (3^n - 1)^budget exceeds this.
  double max_prefixes = 1e9;
};

struct ExploreReport {
  bool safe = true;
  std::size_t transitions = 0;  // distinct (state, depth) expansions
  std::size_t states = 0;
  std::string failure;
  std::vector<RoundRecord> counterexample;
};

struct ExploreRefusal : PreconditionError {
  ExploreRefusal(const std::string& what, double estimate) : PreconditionError(what), estimate(estimate) {}
  double estimate;
};

inline double explore_estimate(std::size_t n, std::size_t round_budget) {
  return std::pow(std::pow(3.0, static_cast<double>(n)) - 1, static_cast<double>(round_budget));
}

// Enumerates every nonempty activation set with every flip assignment
// for round_budget rounds from c0. Each prefix is checked for collisions,
// compute or classification errors, nominee count, per-rule
// post-conditions and leader stability after the first RFC. Prefixes
// reaching an already explored state with the same remaining budget and
// the same stable leader are cut.
inline ExploreReport explore_schedules(const Configuration& c0, const TargetPattern& pattern, std::size_t round_budget,
                                       const ExploreOptions& opts = {}) {
  const std::size_t n = c0.size();
  if (n != pattern.size()) throw StructuralError("explore: robot count differs from pattern length");
  if (n < 3 || n > 5) throw PreconditionError("explore: n must be between 3 and 5");
  if (round_budget > 6) throw PreconditionError("explore: round budget must be at most 6");
  double estimate = explore_estimate(n, round_budget);
  if (estimate > opts.max_prefixes)
    throw ExploreRefusal("explore: about " + std::to_string(static_cast<long long>(estimate)) +
                             " schedule prefixes; over the limit",
                         estimate);

  ExploreReport report;
  std::unordered_set<std::string> seen;
  std::vector<RoundRecord> path;

  auto key_of = [](const std::vector<TurnAngle>& by_id, const InvariantMonitor& m, std::size_t left) {
    std::string k = std::to_string(left);
    for (const auto& p : by_id) k += " " + p.str();
    if (auto& s = m.stable_leader()) k += " L" + std::to_string(s->first) + to_string(s->second);
    return k;
  };

  std::function<bool(const std::vector<TurnAngle>&, const InvariantMonitor&, std::size_t)> dfs =
      [&](const std::vector<TurnAngle>& by_id, const InvariantMonitor& monitor, std::size_t left) -> bool {
    if (left == 0) return true;
    if (!seen.insert(key_of(by_id, monitor, left)).second) return true;
    ++report.transitions;
    const std::size_t round = round_budget - left + 1;

    // Every robot's decision under both orientations, computed once.
    std::vector<std::array<std::optional<Decision>, 2>> decisions(n);
    auto decision_for = [&](std::size_t id, bool flip) -> const Decision& {
      auto& slot = decisions[id][flip ? 1 : 0];
      if (!slot) slot = decide(by_id, id, flip, pattern, std::nullopt, opts.algorithm);
      return *slot;
    };

    for (std::uint32_t subset = 1; subset < (1U << n); ++subset) {
      std::vector<std::size_t> ids;
      for (std::size_t id = 0; id < n; ++id)
        if (subset & (1U << id)) ids.push_back(id);
      for (std::uint32_t flips = 0; flips < (1U << ids.size()); ++flips) {
        RoundRecord rec;
        rec.round = round;
        rec.positions_before = by_id;
        std::vector<std::optional<Decision>> chosen(n);
        try {
          for (std::size_t k = 0; k < ids.size(); ++k) {
            bool flip = (flips & (1U << k)) != 0;
            const Decision& d = decision_for(ids[k], flip);
            chosen[ids[k]] = d;
            rec.activations.push_back({ids[k], flip, std::nullopt, d});
          }
        } catch (const std::exception& e) {
          report.failure = "round " + std::to_string(round) + ": compute failed: " + e.what();
        }
        rec.positions_after = by_id;
        if (report.failure.empty()) {
          if (auto hit = detect_collision(by_id, chosen)) {
            report.failure = "round " + std::to_string(round) + ": collision between robots " +
                             std::to_string(hit->robot_a) + " and " + std::to_string(hit->robot_b);
          } else {
            for (std::size_t id = 0; id < n; ++id)
              if (chosen[id] && chosen[id]->is_move()) rec.positions_after[id] = chosen[id]->destination;
          }
        }
        InvariantMonitor next = monitor;
        if (report.failure.empty()) {
          try {
            const std::size_t before = next.violations().size();
            next.after_round(round, by_id, rec.positions_after, rec.activations);
            rec.class_after = describe_state(rec.positions_after);
            if (next.violations().size() > before) report.failure = next.violations()[before].message;
          } catch (const std::exception& e) {
            report.failure = "round " + std::to_string(round) + ": classification failed: " + e.what();
          }
        }
        path.push_back(rec);
        if (!report.failure.empty()) {
          report.safe = false;
          report.counterexample = path;
          return false;
        }
        if (!dfs(rec.positions_after, next, left - 1)) return false;
        path.pop_back();
      }
    }
    return true;
  };

  InvariantMonitor root(c0.positions(), pattern, false);
  if (!root.violations().empty()) {
    report.safe = false;
    report.failure = root.violations().front().message;
    return report;
  }
  dfs(c0.positions(), root, round_budget);
  report.states = seen.size();
  return report;
}

// Deterministic rule used by the symmetry experiment: maps a snapshot to
// a local-frame decision.
using LocalRule = std::function<Decision(const Snapshot&)>;

// Sample rules for the experiment. Each moves a robot by at most a third
// of an adjacent gap, so robots never meet or cross.
inline std::vector<std::pair<std::string, LocalRule>> symmetry_rules() {
  auto move_by = [](const Rational& d, Direction dir) {
    TurnAngle origin;
    return Decision::move(origin.shifted(d, dir), dir, Rule::None);
  };
  std::vector<std::pair<std::string, LocalRule>> rules;
  rules.emplace_back("approach_nearer", [=](const Snapshot& s) {
    const Rational& f = s.forward_gaps.front();
    const Rational& b = s.reverse_gaps.front();
    if (b < f) return move_by(b / 3, Direction::Reverse);
    return move_by(f / 3, Direction::Forward);
  });
  rules.emplace_back("forward_third", [=](const Snapshot& s) {
    return move_by(s.forward_gaps.front() / 3, Direction::Forward);
  });
  rules.emplace_back("balance", [=](const Snapshot& s) {
    const Rational& f = s.forward_gaps.front();
    const Rational& b = s.reverse_gaps.front();
    if (f == b) return Decision::stay();
    if (f > b) return move_by((f - b) / 4, Direction::Forward);
    return move_by((b - f) / 4, Direction::Reverse);
  });
  return rules;
}

// FSYNC rounds from a k-fold symmetric start. Orientation bits are
// assigned symmetry-consistently: robots in the same orbit under the
// rotation by 1/k share a bit. Returns the fold after every round.
inline std::vector<std::size_t> fsync_symmetry_experiment(const Configuration& c0, const LocalRule& rule,
                                                          std::size_t rounds, std::uint64_t seed = 0) {
  const std::size_t k = rotational_fold(c0.positions());
  if (k < 2) throw PreconditionError("symmetry experiment needs a rotationally symmetric start");
  const std::size_t n = c0.size();
  const std::size_t orbit = n / k;
  std::vector<TurnAngle> by_id = c0.positions();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> folds;
  for (std::size_t r = 0; r < rounds; ++r) {
    Configuration c(by_id);
    // Sorted index i and i + orbit are images under the rotation.
    std::vector<bool> bit(orbit);
    for (std::size_t j = 0; j < orbit; ++j) bit[j] = (rng() & 1U) != 0;
    std::vector<TurnAngle> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool flip = bit[i % orbit];
      Decision d = to_global(rule(snapshot_of(c, i, flip)), c[i], flip);
      next[i] = d.is_move() ? d.destination : c[i];
    }
    by_id = std::move(next);
    std::size_t fold = rotational_fold(by_id);
    if (fold < k) throw std::logic_error("symmetry experiment: fold dropped below the initial " + std::to_string(k));
    folds.push_back(fold);
  }
  return folds;
}

}  // namespace apf
