#pragma once

// Semi-synchronous round engine. Robots carry fixed ids 0..n-1 (their
// order in the initial configuration); ids are simulator bookkeeping and
// are never visible to the compute rule.

#include "apf/algorithm.hpp"

#include <map>
#include <string>
#include <vector>

namespace apf {

enum class SchedulerKind { FullSync, RoundRobin, RandomSubset, Lazy };

inline const char* to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::FullSync: return "fsync";
    case SchedulerKind::RoundRobin: return "rr";
    case SchedulerKind::RandomSubset: return "random";
    case SchedulerKind::Lazy: return "lazy";
  }
  return "fsync";
}

inline SchedulerKind parse_scheduler(std::string_view s) {
  for (auto k : {SchedulerKind::FullSync, SchedulerKind::RoundRobin, SchedulerKind::RandomSubset, SchedulerKind::Lazy})
    if (s == to_string(k)) return k;
  throw ParseError("unknown scheduler '" + std::string{s} + "'");
}

struct ActivationPolicy {
  SchedulerKind kind = SchedulerKind::FullSync;
  double p = 0.5;             // RandomSubset activation probability
  std::size_t fairness = 0;   // window F; 0 means n
  std::uint64_t seed = 0;
};

enum class Mode { Deterministic, RandomizedEven };

inline const char* to_string(Mode m) { return m == Mode::Deterministic ? "det" : "rand"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "det") return Mode::Deterministic;
  if (s == "rand") return Mode::RandomizedEven;
  throw ParseError("unknown mode '" + std::string{s} + "'");
}

// Deterministic mode needs an odd count of at least 3, randomized mode an
// even count of at least 4.
inline void check_mode(Mode mode, std::size_t n) {
  if (mode == Mode::Deterministic && (n < 3 || n % 2 == 0))
    throw PreconditionError("deterministic mode requires an odd robot count >= 3 (got " + std::to_string(n) + ")");
  if (mode == Mode::RandomizedEven && (n < 4 || n % 2 != 0))
    throw PreconditionError("randomized mode requires an even robot count >= 4 (got " + std::to_string(n) + ")");
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed handed to robot `id` when activated in `round` (randomized mode).
inline std::uint64_t activation_seed(std::uint64_t run_seed, std::size_t round, std::size_t id) {
  return splitmix64(splitmix64(run_seed ^ 0x5851f42d4c957f2dULL) + round * 0x10001ULL + id);
}

struct Activation {
  std::size_t robot = 0;
  bool flip = false;
  std::optional<std::uint64_t> seed;
  Decision decision;  // global frame
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t epoch = 0;
  std::vector<Activation> activations;
  std::vector<TurnAngle> positions_before;  // by robot id
  std::vector<TurnAngle> positions_after;
  std::string class_after;
};

struct CollisionWitness {
  std::size_t robot_a;
  std::size_t robot_b;
  Rational time;
};

// Each mover sweeps its chosen arc at constant speed over t in [0, 1];
// stationary robots stay put. Returns the earliest t at which two robots
// share a position (t = 1 included), solved exactly.
inline std::optional<CollisionWitness> detect_collision(const std::vector<TurnAngle>& before,
                                                        const std::vector<std::optional<Decision>>& decisions) {
  const std::size_t n = before.size();
  std::vector<Rational> velocity(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i < decisions.size() && decisions[i] && decisions[i]->is_move()) {
      const auto& d = *decisions[i];
      velocity[i] = sign(d.path) * angle_between(before[i], d.destination, d.path);
    }
  }
  std::optional<CollisionWitness> best;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      // gap(t) = gap0 + v t must hit an integer for t in [0, 1].
      Rational gap0 = angle_between(before[b], before[a], Direction::Forward);
      Rational v = velocity[a] - velocity[b];
      std::optional<Rational> t;
      if (sgn(gap0) == 0) {
        t = Rational(0);
      } else if (sgn(v) > 0 && gap0 + v >= 1) {
        t = Rational((1 - gap0) / v);
      } else if (sgn(v) < 0 && gap0 + v <= 0) {
        t = Rational(-gap0 / v);
      }
      if (t && (!best || *t < best->time)) best = CollisionWitness{a, b, *t};
    }
  }
  return best;
}

struct RunOptions {
  ActivationPolicy policy;
  Mode mode = Mode::Deterministic;
  std::size_t max_epochs = 0;  // 0 means n + 6
  bool fixed_orientation = false;  // every robot sees the presentation frame
  std::uint64_t seed = 0;          // orientation adversary + tie-break draws
  AlgorithmOptions algorithm;
  bool record_trace = true;
};

struct Violation {
  std::size_t round;
  std::string message;
};

struct RunReport {
  bool formed = false;
  bool all_terminated = false;
  std::size_t epochs = 0;
  std::size_t rounds = 0;
  std::size_t collisions = 0;
  std::size_t terminated = 0;
  std::size_t bound = 0;  // n + 4
  bool bound_ok = false;
  std::vector<Violation> violations;
  std::string error;
  // Phase bookkeeping, epoch indices (1-based, 0 = never).
  std::size_t leader_epoch = 0;
  std::size_t rfc_epoch = 0;
  std::size_t pfc_epoch = 0;
  std::size_t formed_epoch = 0;
  // Even-size tie breaks where at least two nominees moved in one round.
  std::size_t joint_tie_breaks = 0;
  std::size_t equal_tie_break_draws = 0;

  bool clean() const { return formed && all_terminated && bound_ok && collisions == 0 && violations.empty() && error.empty(); }
};

struct RunResult {
  RunReport report;
  std::vector<RoundRecord> trace;
};

// Configuration of a by-id position list and the id of each sorted index.
inline std::pair<Configuration, std::vector<std::size_t>> indexed_configuration(const std::vector<TurnAngle>& by_id) {
  Configuration c(by_id);
  std::vector<std::size_t> ids(by_id.size());
  for (std::size_t id = 0; id < by_id.size(); ++id) ids[*c.index_of(by_id[id])] = id;
  return {std::move(c), std::move(ids)};
}

inline std::string describe(const ConfigClass& cls, const std::vector<std::size_t>& ids) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Symmetric>) {
          return "symmetric(" + std::to_string(v.fold) + ")";
        } else if constexpr (std::is_same_v<T, LeaderConfig>) {
          return "leader(" + std::to_string(ids[v.leader]) + "," + to_string(v.pivotal) + ")";
        } else {
          std::string s = "tied(" + std::to_string(ids[v.nominee_a.index]) + "," + std::to_string(ids[v.nominee_b.index]);
          if (v.bisector_robot) s += ",bisector=" + std::to_string(ids[*v.bisector_robot]);
          return s + ")";
        }
      },
      cls);
}

inline std::string describe_state(const std::vector<TurnAngle>& by_id) {
  if (by_id.size() < 3) return "small";
  auto [c, ids] = indexed_configuration(by_id);
  return describe(classify(c), ids);
}

// Decision of robot `id` given the current by-id positions.
inline Decision decide(const std::vector<TurnAngle>& by_id, std::size_t id, bool flip, const TargetPattern& pattern,
                       std::optional<std::uint64_t> seed, const AlgorithmOptions& opts = {}) {
  auto [c, ids] = indexed_configuration(by_id);
  std::size_t index = *c.index_of(by_id[id]);
  Decision local = compute(snapshot_of(c, index, flip), pattern, seed, opts);
  return to_global(local, by_id[id], flip);
}

class Scheduler {
 public:
  Scheduler(const ActivationPolicy& policy, std::size_t n)
      : policy_(policy), n_(n), fairness_(policy.fairness == 0 ? n : policy.fairness), rng_(policy.seed),
        last_(n, 0) {
    if (fairness_ == 0) fairness_ = 1;
  }

  // would_move[id] reports whether robot id would move if activated now;
  // only the lazy adversary consults it.
  std::vector<std::size_t> select(std::size_t round, const std::vector<bool>& would_move) {
    std::vector<bool> on(n_, false);
    auto overdue = [&](std::size_t id) { return round - last_[id] >= fairness_; };
    switch (policy_.kind) {
      case SchedulerKind::FullSync:
        on.assign(n_, true);
        break;
      case SchedulerKind::RoundRobin:
        on[(round - 1) % n_] = true;
        break;
      case SchedulerKind::RandomSubset: {
        const auto threshold = static_cast<std::uint64_t>(policy_.p * 18446744073709551615.0);
        for (std::size_t id = 0; id < n_; ++id) on[id] = rng_() <= threshold || overdue(id);
        break;
      }
      case SchedulerKind::Lazy:
        for (std::size_t id = 0; id < n_; ++id) on[id] = !would_move[id] || overdue(id);
        break;
    }
    if (std::none_of(on.begin(), on.end(), [](bool b) { return b; })) {
      if (policy_.kind == SchedulerKind::Lazy) {
        std::size_t oldest = 0;
        for (std::size_t id = 1; id < n_; ++id)
          if (last_[id] < last_[oldest]) oldest = id;
        on[oldest] = true;
      } else {
        on[rng_() % n_] = true;
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < n_; ++id)
      if (on[id]) {
        out.push_back(id);
        last_[id] = round;
      }
    return out;
  }

  bool needs_lookahead() const { return policy_.kind == SchedulerKind::Lazy; }

 private:
  ActivationPolicy policy_;
  std::size_t n_;
  std::size_t fairness_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> last_;
};

// Per-round bookkeeping of leader, phases and epochs, shared by the
// simulator and the trace verifier.
class InvariantMonitor {
 public:
  // With track_epochs off only state and per-move checks run; used when
  // rounds are enumerated without any fairness guarantee.
  InvariantMonitor(const std::vector<TurnAngle>& initial, const TargetPattern& pattern, bool track_epochs = true)
      : pattern_(pattern), n_(initial.size()), track_epochs_(track_epochs), covered_(initial.size(), false) {
    observe_state(initial, 0);
    epoch_start_placed_ = placed_;
    epoch_start_rfc_not_pfc_ = rfc_ && !all_placed_;
  }

  std::size_t epoch() const { return epoch_; }
  const std::vector<Violation>& violations() const { return violations_; }
  std::size_t leader_epoch() const { return leader_epoch_; }
  std::size_t rfc_epoch() const { return rfc_epoch_; }
  std::size_t pfc_epoch() const { return pfc_epoch_; }
  std::size_t formed_epoch() const { return formed_epoch_; }
  bool formed() const { return formed_; }
  bool all_terminated() const { return terminated_.size() == n_; }
  std::size_t terminated() const { return terminated_.size(); }
  std::size_t joint_tie_breaks() const { return joint_tie_breaks_; }
  std::size_t equal_tie_break_draws() const { return equal_draws_; }
  const std::optional<std::pair<std::size_t, Direction>>& stable_leader() const { return stable_leader_; }

  // Call once per round after moves are applied. Returns true when the
  // round closed an epoch.
  bool after_round(std::size_t round, const std::vector<TurnAngle>& before, const std::vector<TurnAngle>& after,
                   const std::vector<Activation>& acts) {
    const std::size_t epoch_of_round = epoch_;
    check_moves(round, before, after, acts);
    observe_state(after, round);
    for (const auto& a : acts) {
      if (a.decision.kind == Decision::Kind::Terminate) terminated_.insert(a.robot);
      covered_[a.robot] = true;
    }
    if (formed_ && formed_epoch_ == 0) formed_epoch_ = epoch_of_round;
    if (formed_ && !all_terminated() && epoch_of_round > formed_epoch_ + 1)
      flag(round, "robots still running more than one epoch after formation");
    bool closed = std::all_of(covered_.begin(), covered_.end(), [](bool b) { return b; });
    if (closed && track_epochs_) close_epoch(round);
    return closed;
  }

 private:
  void flag(std::size_t round, std::string msg) { violations_.push_back({round, std::move(msg)}); }

  void observe_state(const std::vector<TurnAngle>& by_id, std::size_t round) {
    auto [c, ids] = indexed_configuration(by_id);
    formed_ = pattern_formed(c, pattern_);
    auto cls = classify(c);
    if (auto* sym = std::get_if<Symmetric>(&cls)) {
      if (!formed_) flag(round, "configuration became symmetric (fold " + std::to_string(sym->fold) + ")");
      leader_ = std::nullopt;
      return;
    }
    auto noms = nominees(c);
    if (noms.empty() || noms.size() > 2) flag(round, "nominee count " + std::to_string(noms.size()));
    rfc_ = false;
    all_placed_ = false;
    placed_ = 0;
    if (auto* lc = std::get_if<LeaderConfig>(&cls)) {
      LeaderView v(c, lc->leader, lc->pivotal, pattern_);
      leader_ = std::pair{ids[lc->leader], lc->pivotal};
      rfc_ = v.rfc();
      all_placed_ = v.all_placed();
      for (std::size_t i = 3; i < n_; ++i) placed_ += v.on_target(i) ? 1 : 0;
      if (leader_epoch_ == 0) leader_epoch_ = epoch_;
      if (rfc_ && rfc_epoch_ == 0) {
        rfc_epoch_ = epoch_;
        stable_leader_ = leader_;
      }
      if ((rfc_ || v.final_stage()) && all_placed_ && pfc_epoch_ == 0) pfc_epoch_ = epoch_;
    } else {
      leader_ = std::nullopt;
    }
    if (formed_ && leader_epoch_ == 0) leader_epoch_ = epoch_;
    if (stable_leader_ && !formed_ && leader_ != stable_leader_)
      flag(round, "leader or pivotal direction changed after the first RFC");
  }

  void check_moves(std::size_t round, const std::vector<TurnAngle>& before, const std::vector<TurnAngle>& after,
                   const std::vector<Activation>& acts) {
    std::vector<const Activation*> movers;
    for (const auto& a : acts)
      if (a.decision.is_move()) movers.push_back(&a);
    if (movers.empty()) return;
    auto [pre, pre_ids] = indexed_configuration(before);
    auto [post, post_ids] = indexed_configuration(after);
    auto post_cls = classify(post);
    auto* post_leader = std::get_if<LeaderConfig>(&post_cls);
    bool formed_now = pattern_formed(post, pattern_);

    std::size_t tie_movers = 0;
    std::vector<Rational> draws;
    for (const auto* m : movers) {
      const Rule rule = m->decision.rule;
      const std::string tag = std::string(to_string(rule)) + " by robot " + std::to_string(m->robot) + ": ";
      if (rule == Rule::RandomTieBreak) {
        ++tie_movers;
        if (m->decision.random_epsilon) draws.push_back(*m->decision.random_epsilon);
        continue;
      }
      if (movers.size() > 1) flag(round, tag + "moved together with another robot");
      if (rule == Rule::BisectorEscape) {
        GapSequence g = pre.gaps();
        Rational alpha0 = *std::min_element(g.begin(), g.end());
        // The approached neighbour keeps its position; it is the robot
        // adjacent to the mover on the side of the move.
        std::size_t mi = *post.index_of(after[m->robot]);
        std::size_t ni = post.neighbor(mi, m->decision.path);
        if (!(angle_between(post[mi], post[ni], m->decision.path) < alpha0))
          flag(round, tag + "new gap is not below the old minimum");
        for (std::size_t k = 0; k < post.size(); ++k)
          if (k != mi && k != ni && on_bisector(post[k], post[mi], post[ni]))
            flag(round, tag + "a robot sits on the bisector after the move");
        if (!post_leader && !formed_now) flag(round, tag + "post-state is not a leader configuration");
        continue;
      }
      if (!post_leader) {
        if (!formed_now) flag(round, tag + "post-state is not a leader configuration");
        continue;
      }
      LeaderView v(post, post_leader->leader, post_leader->pivotal, pattern_);
      switch (rule) {
        case Rule::LeaderShrink:
          if (!v.first_gap_strict_min()) flag(round, tag + "first gap is not strictly below all others and beta_0");
          break;
        case Rule::SecondGapShrink:
          if (!(leader_ && *leader_ == std::pair{post_ids[post_leader->leader], post_leader->pivotal}))
            flag(round, tag + "leader changed");
          if (!(v.alpha(0) < v.alpha(1) && v.alpha(1) < v.min_except_two()))
            flag(round, tag + "second gap not strictly between alpha_0 and the other gaps");
          break;
        case Rule::MoveReady:
          if (!(leader_ && *leader_ == std::pair{post_ids[post_leader->leader], post_leader->pivotal}))
            flag(round, tag + "leader changed");
          if (!v.rfc()) flag(round, tag + "configuration is no longer an RFC");
          break;
        case Rule::LeaderFinal:
          if (!formed_now) flag(round, tag + "pattern not formed after the leader's final step");
          break;
        case Rule::SecondFinal:
          if (!formed_now && !(leader_ && *leader_ == std::pair{post_ids[post_leader->leader], post_leader->pivotal}))
            flag(round, tag + "leader changed");
          break;
        default:
          break;
      }
    }
    if (tie_movers > 0) {
      if (tie_movers >= 2) {
        ++joint_tie_breaks_;
        std::sort(draws.begin(), draws.end());
        if (std::adjacent_find(draws.begin(), draws.end()) != draws.end()) ++equal_draws_;
      }
      if (!post_leader && !formed_now) flag(round, "random tie break did not yield a leader configuration");
    }
  }

  void close_epoch(std::size_t round) {
    if (epoch_ == 1 && leader_epoch_ == 0) flag(round, "no leader configuration by the end of the first epoch");
    if (epoch_ == 3 && rfc_epoch_ == 0 && pfc_epoch_ == 0 && !formed_ && formed_epoch_ == 0)
      flag(round, "no RFC within three epochs");
    if (epoch_start_rfc_not_pfc_ && !formed_ && placed_ <= epoch_start_placed_)
      flag(round, "RFC epoch ended without a robot reaching its target");
    if (rfc_epoch_ != 0 && pfc_epoch_ == 0 && !formed_ && epoch_ >= rfc_epoch_ + (n_ - 3))
      flag(round, "RFC did not become a PFC within n-3 epochs");
    ++epoch_;
    std::fill(covered_.begin(), covered_.end(), false);
    epoch_start_placed_ = placed_;
    epoch_start_rfc_not_pfc_ = rfc_ && !all_placed_;
  }

  const TargetPattern& pattern_;
  std::size_t n_;
  bool track_epochs_;
  std::size_t epoch_ = 1;
  std::vector<bool> covered_;
  std::set<std::size_t> terminated_;
  std::vector<Violation> violations_;
  bool formed_ = false;
  bool rfc_ = false;
  bool all_placed_ = false;
  std::size_t placed_ = 0;
  std::size_t epoch_start_placed_ = 0;
  bool epoch_start_rfc_not_pfc_ = false;
  std::optional<std::pair<std::size_t, Direction>> leader_;
  std::optional<std::pair<std::size_t, Direction>> stable_leader_;
  std::size_t leader_epoch_ = 0;
  std::size_t rfc_epoch_ = 0;
  std::size_t pfc_epoch_ = 0;
  std::size_t formed_epoch_ = 0;
  std::size_t joint_tie_breaks_ = 0;
  std::size_t equal_draws_ = 0;
};

// One SSYNC round: every activated robot looks at the same pre-round
// configuration, and all moves land simultaneously.
struct RoundOutcome {
  std::vector<TurnAngle> after;
  std::vector<Activation> activations;
  std::optional<CollisionWitness> collision;
};

inline RoundOutcome step_round(const std::vector<TurnAngle>& by_id, const TargetPattern& pattern,
                               const std::vector<std::size_t>& activated, const std::vector<bool>& flips,
                               const std::vector<std::optional<std::uint64_t>>& seeds, const AlgorithmOptions& opts = {}) {
  if (activated.empty()) throw PreconditionError("step_round: activation set must be nonempty");
  RoundOutcome out{by_id, {}, std::nullopt};
  std::vector<std::optional<Decision>> decisions(by_id.size());
  for (std::size_t k = 0; k < activated.size(); ++k) {
    std::size_t id = activated[k];
    Decision d = decide(by_id, id, flips[k], pattern, seeds[k], opts);
    decisions[id] = d;
    out.activations.push_back({id, flips[k], seeds[k], d});
  }
  out.collision = detect_collision(by_id, decisions);
  for (std::size_t id = 0; id < by_id.size(); ++id)
    if (decisions[id] && decisions[id]->is_move()) out.after[id] = decisions[id]->destination;
  return out;
}

inline RunResult run(const Configuration& c0, const TargetPattern& pattern, const RunOptions& options) {
  const std::size_t n = c0.size();
  if (n != pattern.size()) throw StructuralError("run: robot count differs from pattern length");
  if (auto k = rotational_fold(c0.positions()); k > 1) throw UnsolvableError(k);
  check_mode(options.mode, n);

  RunResult result;
  RunReport& rep = result.report;
  rep.bound = n + 4;
  const std::size_t max_epochs = options.max_epochs == 0 ? n + 6 : options.max_epochs;

  std::vector<TurnAngle> positions = c0.positions();
  Scheduler scheduler(options.policy, n);
  std::mt19937_64 orientation(splitmix64(options.seed ^ 0xa5a5a5a5ULL));
  InvariantMonitor monitor(positions, pattern);

  std::size_t round = 0;
  std::size_t last_epoch = 0;
  while (!monitor.all_terminated()) {
    if (monitor.epoch() > max_epochs) {
      rep.error = "epoch budget of " + std::to_string(max_epochs) + " exceeded";
      break;
    }
    ++round;
    auto seed_for = [&](std::size_t id) -> std::optional<std::uint64_t> {
      if (options.mode == Mode::RandomizedEven) return activation_seed(options.seed, round, id);
      return std::nullopt;
    };
    std::vector<bool> would_move(n, false);
    if (scheduler.needs_lookahead())
      for (std::size_t id = 0; id < n; ++id)
        would_move[id] = decide(positions, id, false, pattern, seed_for(id), options.algorithm).is_move();
    auto activated = scheduler.select(round, would_move);
    std::vector<bool> flips;
    std::vector<std::optional<std::uint64_t>> seeds;
    for (std::size_t id : activated) {
      flips.push_back(options.fixed_orientation ? false : (orientation() & 1U) != 0);
      seeds.push_back(seed_for(id));
    }
    RoundOutcome outcome;
    try {
      outcome = step_round(positions, pattern, activated, flips, seeds, options.algorithm);
    } catch (const std::exception& e) {
      rep.error = "round " + std::to_string(round) + ": " + e.what();
      break;
    }
    RoundRecord rec;
    rec.round = round;
    rec.epoch = monitor.epoch();
    last_epoch = rec.epoch;
    rec.activations = outcome.activations;
    rec.positions_before = positions;
    rec.positions_after = outcome.after;
    if (outcome.collision) {
      ++rep.collisions;
      rec.class_after = "collision";
      if (options.record_trace) result.trace.push_back(std::move(rec));
      rep.error = "collision between robots " + std::to_string(outcome.collision->robot_a) + " and " +
                  std::to_string(outcome.collision->robot_b) + " at t=" + to_fraction_string(outcome.collision->time) +
                  " in round " + std::to_string(round);
      break;
    }
    try {
      monitor.after_round(round, positions, outcome.after, outcome.activations);
      rec.class_after = describe_state(outcome.after);
    } catch (const std::exception& e) {
      rep.error = "round " + std::to_string(round) + ": " + e.what();
      break;
    }
    positions = std::move(outcome.after);
    if (options.record_trace) result.trace.push_back(std::move(rec));
  }

  rep.rounds = round;
  rep.epochs = last_epoch;
  rep.formed = monitor.formed();
  rep.all_terminated = monitor.all_terminated();
  rep.terminated = monitor.terminated();
  rep.violations = monitor.violations();
  rep.bound_ok = rep.all_terminated && rep.epochs <= rep.bound;
  rep.leader_epoch = monitor.leader_epoch();
  rep.rfc_epoch = monitor.rfc_epoch();
  rep.pfc_epoch = monitor.pfc_epoch();
  rep.formed_epoch = monitor.formed_epoch();
  rep.joint_tie_breaks = monitor.joint_tie_breaks();
  rep.equal_tie_break_draws = monitor.equal_tie_break_draws();
  return result;
}

}  // namespace apf
