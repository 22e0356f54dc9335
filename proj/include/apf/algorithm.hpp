#pragma once

// The compute rule executed by every robot on activation. It is a pure
// function of the observer's snapshot and the input pattern (plus a seed
// for the even-size tie break); robots keep no state between activations.

#include "apf/pattern.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>

namespace apf {

// Which rule produced a decision. Used by the simulator's inline checks
// and by the trace verifier; robots never read it.
enum class Rule {
  None,
  Formed,           // pattern already formed
  BisectorEscape,   // robot on the nominees' bisector breaks the tie
  LeaderShrink,     // leader makes its first gap the strict minimum
  SecondGapShrink,  // r2 makes the second gap the strict runner-up
  MoveReady,        // a Move Ready robot jumps to its target
  SecondFinal,      // r2 once the rest of the pattern is in place
  LeaderFinal,      // leader steps back to T0, completing the pattern
  RandomTieBreak,   // even-size nominee perturbation
};

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::None: return "none";
    case Rule::Formed: return "formed";
    case Rule::BisectorEscape: return "bisector_escape";
    case Rule::LeaderShrink: return "leader_shrink";
    case Rule::SecondGapShrink: return "second_gap_shrink";
    case Rule::MoveReady: return "move_ready";
    case Rule::SecondFinal: return "second_final";
    case Rule::LeaderFinal: return "leader_final";
    case Rule::RandomTieBreak: return "random_tie_break";
  }
  return "none";
}

inline Rule parse_rule(std::string_view s) {
  for (Rule r : {Rule::None, Rule::Formed, Rule::BisectorEscape, Rule::LeaderShrink, Rule::SecondGapShrink,
                 Rule::MoveReady, Rule::SecondFinal, Rule::LeaderFinal, Rule::RandomTieBreak})
    if (s == to_string(r)) return r;
  throw ParseError("unknown rule '" + std::string{s} + "'");
}

// A robot's output. For MoveTo, destination is expressed in the frame of
// whoever produced the decision: compute() answers in the observer's local
// frame (itself at 0); the simulator converts to the global frame.
struct Decision {
  enum class Kind { Stay, MoveTo, Terminate };
  Kind kind = Kind::Stay;
  TurnAngle destination;
  Direction path = Direction::Forward;
  Rule rule = Rule::None;
  std::optional<Rational> random_epsilon;

  static Decision stay(Rule r = Rule::None) { return {Kind::Stay, {}, Direction::Forward, r, std::nullopt}; }
  static Decision terminate() { return {Kind::Terminate, {}, Direction::Forward, Rule::Formed, std::nullopt}; }
  static Decision move(TurnAngle to, Direction path, Rule r) { return {Kind::MoveTo, to, path, r, std::nullopt}; }

  bool is_move() const { return kind == Kind::MoveTo; }
};

inline const char* to_string(Decision::Kind k) {
  switch (k) {
    case Decision::Kind::Stay: return "stay";
    case Decision::Kind::MoveTo: return "move";
    case Decision::Kind::Terminate: return "terminate";
  }
  return "stay";
}

// Maps a local-frame decision of a robot at `position` observing with
// orientation `flip` into the global frame.
inline Decision to_global(Decision d, const TurnAngle& position, bool flip) {
  if (!d.is_move()) return d;
  Direction frame = flip ? Direction::Reverse : Direction::Forward;
  d.destination = position.shifted(d.destination.value(), frame);
  if (flip) d.path = opposite(d.path);
  return d;
}

struct IntervalChoice {
  Rational lo;
  Rational hi;
  std::set<Rational> forbidden;
  Rational chosen;
};

// Deterministic pick from the open interval (lo, hi) avoiding a finite
// forbidden set: the midpoint, else the midpoint of the left half, and so on.
inline IntervalChoice select_in_interval(const Rational& lo, const Rational& hi, std::set<Rational> forbidden) {
  if (!(lo < hi)) throw PreconditionError("select_in_interval: empty interval");
  Rational right = hi;
  Rational mid = (lo + right) / 2;
  while (forbidden.count(mid) > 0) {
    right = mid;
    mid = (lo + right) / 2;
  }
  return {lo, hi, std::move(forbidden), mid};
}

// Move amounts a >= 0 (taken mod one turn) at which some other robot would
// sit on a bisector point of (mover shifted by a along path, neighbour).
// The bisector points of (m + s*a, q) are (m + s*a + q)/2 and its antipode,
// so a robot at x is hit exactly when s*a = 2x - m - q (mod 1).
inline std::set<Rational> forbidden_epsilons_bisector(const Configuration& c, const TurnAngle& mover,
                                                      const TurnAngle& neighbor, Direction path) {
  if (mover == neighbor) throw StructuralError("forbidden_epsilons_bisector: mover equals neighbour");
  std::set<Rational> out;
  for (const auto& x : c.positions()) {
    if (x == mover || x == neighbor) continue;
    Rational rhs = 2 * x.value() - mover.value() - neighbor.value();
    out.insert(wrap_turn(sign(path) * rhs));
  }
  return out;
}

struct AlgorithmOptions {
  // Test hook: widens r2's shrink interval to (0, a1 - a0), dropping the
  // lower bound that guarantees the new second gap is below every other.
  bool drop_second_gap_lower_bound = false;
};

// Where T_0 of the working embedding goes. Leader puts it on the leader.
// FirstNeighbor lays the pattern out so that T_1 is r1's current spot;
// T_0 then lies beta_0 - alpha_0 behind the leader.
enum class TargetAnchor { Leader, FirstNeighbor };

// Geometry of a leader configuration read along the pivotal direction:
// robot r_i, its offset x_i from the leader, gaps alpha_i and targets tau_i.
class LeaderView {
 public:
  LeaderView(const Configuration& c, std::size_t leader, Direction pivotal, const TargetPattern& pattern,
             TargetAnchor anchor = TargetAnchor::FirstNeighbor)
      : config_(&c), pattern_(&pattern), pivotal_(pivotal), anchor_(anchor) {
    const std::size_t n = c.size();
    if (n != pattern.size()) throw StructuralError("robot count differs from pattern length");
    if (n < 3) throw PreconditionError("leader view needs at least three robots");
    std::size_t idx = leader;
    Rational acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      order_.push_back(idx);
      alpha_.push_back(pivotal == Direction::Forward ? c.gap(idx) : c.gap(idx + n - 1));
      offset_.push_back(i == 0 ? Rational(0) : Rational(offset_[i - 1] + alpha_[i - 1]));
      target_offset_.push_back(acc);
      acc += pattern.betas[i];
      idx = c.neighbor(idx, pivotal);
    }
    if (anchor == TargetAnchor::FirstNeighbor) {
      Rational shift = alpha_[0] - pattern.betas[0];
      target_offset_[0] = wrap_turn(shift);
      for (std::size_t i = 1; i < n; ++i) target_offset_[i] += shift;
    }
    min_except_first_ = pattern.betas[0];
    for (std::size_t i = 1; i < n; ++i) min_except_first_ = std::min(min_except_first_, alpha_[i]);
    min_except_two_ = pattern.betas[0];
    for (std::size_t i = 2; i < n; ++i) min_except_two_ = std::min(min_except_two_, alpha_[i]);
  }

  std::size_t size() const { return order_.size(); }
  Direction pivotal() const { return pivotal_; }
  std::size_t index_of_rank(std::size_t i) const { return order_[i]; }
  std::optional<std::size_t> rank_of_index(std::size_t index) const {
    for (std::size_t i = 0; i < order_.size(); ++i)
      if (order_[i] == index) return i;
    return std::nullopt;
  }
  const Rational& offset(std::size_t i) const { return offset_[i]; }
  const Rational& target_offset(std::size_t i) const { return target_offset_[i]; }
  const Rational& alpha(std::size_t i) const { return alpha_[i]; }
  const Rational& beta(std::size_t j) const { return pattern_->beta(j); }
  // min over i != 0 of {alpha_i, beta_0}
  const Rational& min_except_first() const { return min_except_first_; }
  // min over j != 0,1 of {alpha_j, beta_0}
  const Rational& min_except_two() const { return min_except_two_; }

  TurnAngle leader_position() const { return (*config_)[order_[0]]; }
  TurnAngle position_at(const Rational& offset) const { return leader_position().shifted(offset, pivotal_); }
  Embedding embedding() const { return embed_targets(position_at(target_offset_[0]), pivotal_, *pattern_); }

  bool on_target(std::size_t i) const { return offset_[i] == target_offset_[i]; }

  bool all_placed() const {
    for (std::size_t i = 3; i < size(); ++i)
      if (!on_target(i)) return false;
    return true;
  }

  bool first_gap_strict_min() const { return alpha_[0] < min_except_first_; }
  bool rfc() const { return first_gap_strict_min() && alpha_[1] < min_except_two_; }

  // Once r3.. sit on their targets: r2 heads for T2 while the RFC lasts,
  // and with r2 there the leader's step back to T0 completes the pattern.
  bool final_stage() const {
    return all_placed() && first_gap_strict_min() && (rfc() || (anchor_ == TargetAnchor::FirstNeighbor && on_target(2)));
  }

  // First robot from r3 on, not yet on target, whose target lies strictly
  // closer than its neighbour on that side by more than alpha_1.
  std::optional<std::size_t> move_ready_rank() const {
    const std::size_t n = size();
    for (std::size_t i = 3; i < n; ++i) {
      if (on_target(i)) continue;
      const Rational& x = offset_[i];
      const Rational& tau = target_offset_[i];
      Rational clearance = tau > x ? Rational((i + 1 < n ? offset_[i + 1] : Rational(1)) - tau) : Rational(tau - offset_[i - 1]);
      if (clearance > alpha_[1]) return i;
    }
    return std::nullopt;
  }

  Direction direction_towards_target(std::size_t i) const {
    return target_offset_[i] > offset_[i] ? pivotal_ : opposite(pivotal_);
  }

 private:
  const Configuration* config_;
  const TargetPattern* pattern_;
  Direction pivotal_;
  TargetAnchor anchor_;
  std::vector<std::size_t> order_;
  std::vector<Rational> offset_;
  std::vector<Rational> target_offset_;
  std::vector<Rational> alpha_;
  Rational min_except_first_;
  Rational min_except_two_;
};

inline LeaderView leader_view(const Configuration& c, const TargetPattern& pattern) {
  auto cls = classify(c);
  auto* lc = std::get_if<LeaderConfig>(&cls);
  if (lc == nullptr) throw PreconditionError("not a leader configuration");
  return LeaderView(c, lc->leader, lc->pivotal, pattern);
}

inline bool is_rfc(const Configuration& c, const TargetPattern& pattern) { return leader_view(c, pattern).rfc(); }

// Every robot r_i with i >= 3, counted from the embedding's anchor along
// its direction, sits on T_i. Meaningful on RFCs.
inline bool is_pfc(const Configuration& c, const Embedding& emb) {
  if (c.size() != emb.targets.size()) throw StructuralError("is_pfc: robot count differs from embedding");
  auto leader = c.index_of(emb.anchor);
  if (!leader) throw PreconditionError("is_pfc: embedding anchor is not a robot position");
  std::size_t idx = *leader;
  for (std::size_t i = 0; i < c.size(); ++i, idx = c.neighbor(idx, emb.direction))
    if (i >= 3 && c[idx] != emb.targets[i]) return false;
  return true;
}

// Index (in c) of the Move Ready robot of an RFC, or nullopt once every
// r_i with i >= 3 is on its target.
inline std::optional<std::size_t> move_ready(const Configuration& c, const Embedding& emb, Direction pivotal) {
  auto leader = c.index_of(emb.anchor);
  if (!leader || c.size() != emb.targets.size()) throw PreconditionError("move_ready: embedding does not match configuration");
  GapSequence betas;
  for (std::size_t j = 0; j < emb.targets.size(); ++j)
    betas.push_back(angle_between(emb.targets[j], emb.targets[(j + 1) % emb.targets.size()], pivotal));
  TargetPattern pattern{betas, betas};
  LeaderView view(c, *leader, pivotal, pattern, TargetAnchor::Leader);
  if (!view.rfc()) throw PreconditionError("move_ready: configuration is not an RFC");
  auto rank = view.move_ready_rank();
  if (!rank) return std::nullopt;
  return view.index_of_rank(*rank);
}

// Even-size tie break: perturb toward the neighbour on the side of the
// observer's least sequence by a random eps in (0, a0/2), drawn as a
// fraction k/M with a fresh random modulus M.
template <typename Rng>
Decision randomized_nominee_move(const Snapshot& s, Rng& rng) {
  Configuration local = local_configuration(s);
  const std::size_t n = local.size();
  if (n % 2 != 0 || n < 4) throw PreconditionError("randomized move requires an even robot count of at least four");
  auto cls = classify(local);
  auto* tied = std::get_if<DoubleNomineeTied>(&cls);
  if (tied == nullptr) throw PreconditionError("randomized move requires a tied double nominee configuration");
  const Nominee* me = tied->nominee_a.index == 0 ? &tied->nominee_a
                      : tied->nominee_b.index == 0 ? &tied->nominee_b
                                                    : nullptr;
  if (me == nullptr) throw PreconditionError("randomized move: observer is not a nominee");
  Rational alpha0 = local.rooted_sequence(0, me->direction)[0];
  std::uniform_int_distribution<std::int64_t> modulus(std::int64_t{1} << 20, std::int64_t{1} << 30);
  std::int64_t m = modulus(rng);
  std::uniform_int_distribution<std::int64_t> numerator(1, m - 1);
  Rational eps = alpha0 / 2 * make_rational(numerator(rng), m);
  eps.canonicalize();
  Decision d = Decision::move(local[0].shifted(eps, me->direction), me->direction, Rule::RandomTieBreak);
  d.random_epsilon = eps;
  return d;
}

namespace detail {

inline Decision bisector_escape(const Configuration& local) {
  auto order = lex_compare(local.rooted_sequence(0, Direction::Forward), local.rooted_sequence(0, Direction::Reverse));
  // Equal sequences mean a mirror axis through the observer; both sides are
  // then equivalent and the local forward side is taken.
  Direction d = order <= 0 ? Direction::Forward : Direction::Reverse;
  std::size_t nb = local.neighbor(0, d);
  Rational theta = angle_between(local[0], local[nb], d);
  GapSequence g = local.gaps();
  Rational alpha0 = *std::min_element(g.begin(), g.end());
  Rational lo = theta - alpha0;
  if (sgn(lo) < 0) lo = 0;
  auto choice = select_in_interval(lo, theta, forbidden_epsilons_bisector(local, local[0], local[nb], d));
  return Decision::move(local[0].shifted(choice.chosen, d), d, Rule::BisectorEscape);
}

inline Decision leader_rule(const Configuration& local, const LeaderView& v, std::size_t rank,
                            const AlgorithmOptions& opts) {
  const Direction piv = v.pivotal();
  auto move_to_offset = [&](const Rational& x, Direction path, Rule rule) {
    if (x == v.offset(rank)) return Decision::stay(rule);
    return Decision::move(v.position_at(x), path, rule);
  };

  if (v.final_stage()) {
    if (!v.on_target(2)) {
      if (rank == 2) return move_to_offset(v.target_offset(2), piv, Rule::SecondFinal);
      return Decision::stay();
    }
    if (rank == 0) return Decision::move(v.position_at(v.target_offset(0)), opposite(piv), Rule::LeaderFinal);
    return Decision::stay();
  }

  if (rank == 0) {
    if (v.first_gap_strict_min()) return Decision::stay();
    const TurnAngle me = local[v.index_of_rank(0)];
    const TurnAngle next = local[v.index_of_rank(1)];
    auto choice = select_in_interval(v.alpha(0) - v.min_except_first(), v.alpha(0),
                                     forbidden_epsilons_bisector(local, me, next, piv));
    return move_to_offset(choice.chosen, piv, Rule::LeaderShrink);
  }
  if (!v.first_gap_strict_min()) return Decision::stay();

  if (rank == 2) {
    if (v.alpha(1) < v.min_except_two()) return Decision::stay();
    Rational lo = opts.drop_second_gap_lower_bound ? Rational(0) : Rational(v.alpha(1) - v.min_except_two());
    auto choice = select_in_interval(lo, v.alpha(1) - v.alpha(0), {});
    return move_to_offset(v.offset(2) - choice.chosen, opposite(piv), Rule::SecondGapShrink);
  }
  if (rank >= 3 && v.rfc()) {
    auto ready = v.move_ready_rank();
    if (ready && *ready == rank) return move_to_offset(v.target_offset(rank), v.direction_towards_target(rank), Rule::MoveReady);
  }
  return Decision::stay();
}

}  // namespace detail

// One LCM compute step for the observer of snapshot s. The result is in
// the observer's local frame (itself at 0, its own forward orientation).
inline Decision compute(const Snapshot& s, const TargetPattern& pattern, std::optional<std::uint64_t> rng_seed = std::nullopt,
                        const AlgorithmOptions& opts = {}) {
  if (s.size() != pattern.size()) throw StructuralError("compute: robot count differs from pattern length");
  if (s.size() < 3) throw PreconditionError("compute: at least three robots are required");
  Configuration local = local_configuration(s);
  if (pattern_formed(local, pattern)) return Decision::terminate();
  if (auto k = rotational_fold(local.positions()); k > 1) throw UnsolvableError(k);

  auto cls = classify(local);
  if (auto* tied = std::get_if<DoubleNomineeTied>(&cls)) {
    if (tied->bisector_robot && *tied->bisector_robot == 0) return detail::bisector_escape(local);
    bool is_nominee = tied->nominee_a.index == 0 || tied->nominee_b.index == 0;
    if (rng_seed && is_nominee && local.size() % 2 == 0) {
      std::mt19937_64 rng(*rng_seed);
      return randomized_nominee_move(s, rng);
    }
    return Decision::stay();
  }
  const auto& lc = std::get<LeaderConfig>(cls);
  LeaderView view(local, lc.leader, lc.pivotal, pattern);
  return detail::leader_rule(local, view, *view.rank_of_index(0), opts);
}

}  // namespace apf
