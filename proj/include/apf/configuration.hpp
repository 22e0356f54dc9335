#pragma once

#include "apf/circle_math.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace apf {

// Robot positions on the circle, sorted ascending in the presentation
// frame. Index i is simply the i-th robot in that order; it carries no
// identity the robots themselves could observe.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<TurnAngle> positions) : positions_(std::move(positions)) {
    if (positions_.empty()) throw StructuralError("configuration needs at least one robot");
    std::sort(positions_.begin(), positions_.end());
    if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
      throw StructuralError("configuration positions must be distinct");
    const std::size_t n = positions_.size();
    gaps_.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) gaps_[i] = positions_[i + 1].value() - positions_[i].value();
    gaps_[n - 1] = n == 1 ? Rational(1) : Rational(1 + positions_[0].value() - positions_[n - 1].value());
  }

  std::size_t size() const { return positions_.size(); }
  const std::vector<TurnAngle>& positions() const { return positions_; }
  const TurnAngle& operator[](std::size_t i) const { return positions_[i]; }

  // Gap from robot i to robot i+1 (forward); the last gap wraps to robot 0.
  const Rational& gap(std::size_t i) const { return gaps_[i % gaps_.size()]; }

  const GapSequence& gaps() const { return gaps_; }

  // Neighbour index of robot i in direction d.
  std::size_t neighbor(std::size_t i, Direction d) const {
    const std::size_t n = size();
    return d == Direction::Forward ? (i + 1) % n : (i + n - 1) % n;
  }

  // Gaps read from robot i in direction d.
  GapSequence rooted_sequence(std::size_t i, Direction d) const {
    const std::size_t n = size();
    GapSequence out(n);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = d == Direction::Forward ? gap(i + k) : gap((i + n - 1 - k) % n);
    return out;
  }

  std::optional<std::size_t> index_of(const TurnAngle& p) const {
    auto it = std::lower_bound(positions_.begin(), positions_.end(), p);
    if (it == positions_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - positions_.begin());
  }

  Configuration rotated(const Rational& amount) const {
    std::vector<TurnAngle> out;
    for (const auto& p : positions_) out.push_back(p.shifted(amount));
    return Configuration(std::move(out));
  }

  Configuration mirrored() const {
    std::vector<TurnAngle> out;
    for (const auto& p : positions_) out.push_back(TurnAngle(-p.value()));
    return Configuration(std::move(out));
  }

  friend bool operator==(const Configuration& a, const Configuration& b) { return a.positions_ == b.positions_; }

 private:
  std::vector<TurnAngle> positions_;
  GapSequence gaps_;
};

// What an activated robot observes: both gap sequences rooted at itself,
// labelled by its private (adversary-chosen) orientation. No absolute
// position is exposed.
struct Snapshot {
  GapSequence forward_gaps;
  GapSequence reverse_gaps;
  std::size_t observer_index = 0;

  std::size_t size() const { return forward_gaps.size(); }
};

inline Snapshot snapshot_of(const Configuration& c, std::size_t i, bool flip) {
  if (i >= c.size()) throw StructuralError("snapshot_of: robot index out of range");
  Snapshot s{c.rooted_sequence(i, Direction::Forward), c.rooted_sequence(i, Direction::Reverse), i};
  if (flip) std::swap(s.forward_gaps, s.reverse_gaps);
  return s;
}

// The observer's own view as a configuration: itself at 0, index 0, and
// Forward meaning its private forward direction.
inline Configuration local_configuration(const Snapshot& s) {
  if (!is_valid_gap_sequence(s.forward_gaps)) throw StructuralError("snapshot gaps are not a valid cycle");
  std::vector<TurnAngle> positions;
  Rational acc = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    positions.emplace_back(acc);
    acc += s.forward_gaps[k];
  }
  return Configuration(std::move(positions));
}

struct Nominee {
  std::size_t index;
  Direction direction;
  friend bool operator==(const Nominee&, const Nominee&) = default;
};

struct UnsolvableError : std::runtime_error {
  explicit UnsolvableError(std::size_t fold)
      : std::runtime_error("configuration is rotationally symmetric (fold " + std::to_string(fold) +
                           "); no deterministic algorithm can form an arbitrary pattern"),
        fold(fold) {}
  std::size_t fold;
};

// Robots owning the globally least rooted gap sequence. A robot whose two
// sequences are both minimal appears once, with direction Forward.
inline std::vector<Nominee> nominees(const Configuration& c) {
  if (auto k = rotational_fold(c.positions()); k > 1) throw UnsolvableError(k);
  const std::size_t n = c.size();
  const GapSequence fwd = c.gaps();
  const GapSequence rev = reversed(fwd);
  // Reverse sequence of robot i is rotation (n - i) % n of rev.
  auto fwd_best = min_rotation(fwd);
  auto rev_best = min_rotation(rev);
  auto order = lex_compare(fwd_best.sequence, rev_best.sequence);
  std::vector<Nominee> out;
  auto add = [&](std::size_t index, Direction d) {
    for (const auto& e : out)
      if (e.index == index) return;
    out.push_back({index, d});
  };
  if (order <= 0) {
    for (std::size_t i = 0; i < n; ++i)
      if (compare_rotations(fwd, i, fwd_best.offset) == 0) add(i, Direction::Forward);
  }
  if (order >= 0) {
    for (std::size_t j = 0; j < n; ++j)
      if (compare_rotations(rev, j, rev_best.offset) == 0) add((n - j) % n, Direction::Reverse);
  }
  return out;
}

struct ArcPopulation {
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  std::vector<std::size_t> on_bisector;
};

// Splits the other robots by the diameter bisecting nominees a and b.
// The nominees themselves are not counted; robots sitting exactly on
// either bisector point belong to neither arc.
inline ArcPopulation arc_population(const Configuration& c, std::size_t a, std::size_t b) {
  if (a == b) throw StructuralError("arc_population: nominees must differ");
  auto [p, q] = bisector_points(c[a], c[b]);
  const Rational half{1, 2};
  auto side = [&](const TurnAngle& x) { return angle_between(p, x, Direction::Forward) < half; };
  const bool a_side = side(c[a]);
  ArcPopulation out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i == a || i == b) continue;
    if (c[i] == p || c[i] == q) {
      out.on_bisector.push_back(i);
    } else if (side(c[i]) == a_side) {
      ++out.count_a;
    } else {
      ++out.count_b;
    }
  }
  return out;
}

struct PivotalAmbiguity : std::logic_error {
  using std::logic_error::logic_error;
};

inline Direction pivotal_direction(const Configuration& c, std::size_t leader) {
  auto order = lex_compare(c.rooted_sequence(leader, Direction::Forward),
                           c.rooted_sequence(leader, Direction::Reverse));
  if (order == 0) throw PivotalAmbiguity("leader has two equal rooted sequences");
  return order < 0 ? Direction::Forward : Direction::Reverse;
}

struct Symmetric {
  std::size_t fold;
  friend bool operator==(const Symmetric&, const Symmetric&) = default;
};

struct LeaderConfig {
  std::size_t leader;
  Direction pivotal;
  friend bool operator==(const LeaderConfig&, const LeaderConfig&) = default;
};

// Two nominees whose arcs hold equal numbers of robots. With an odd robot
// count exactly one robot sits on the bisector; with an even count there
// are either none or two, and bisector_robot stays empty.
struct DoubleNomineeTied {
  Nominee nominee_a;
  Nominee nominee_b;
  std::optional<std::size_t> bisector_robot;
  std::vector<std::size_t> on_bisector;
  friend bool operator==(const DoubleNomineeTied&, const DoubleNomineeTied&) = default;
};

using ConfigClass = std::variant<Symmetric, LeaderConfig, DoubleNomineeTied>;

inline ConfigClass classify(const Configuration& c) {
  if (c.size() < 3) throw PreconditionError("classify requires at least three robots");
  if (auto k = rotational_fold(c.positions()); k > 1) return Symmetric{k};
  auto noms = nominees(c);
  if (noms.size() == 1) return LeaderConfig{noms[0].index, pivotal_direction(c, noms[0].index)};
  const auto& a = noms[0];
  const auto& b = noms[1];
  auto pop = arc_population(c, a.index, b.index);
  if (pop.count_a > pop.count_b) return LeaderConfig{a.index, a.direction};
  if (pop.count_b > pop.count_a) return LeaderConfig{b.index, b.direction};
  DoubleNomineeTied tied{a, b, std::nullopt, pop.on_bisector};
  if (pop.on_bisector.size() == 1) tied.bisector_robot = pop.on_bisector.front();
  return tied;
}

inline std::string describe(const ConfigClass& cls) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Symmetric>) {
          return "symmetric(" + std::to_string(v.fold) + ")";
        } else if constexpr (std::is_same_v<T, LeaderConfig>) {
          return "leader(" + std::to_string(v.leader) + "," + to_string(v.pivotal) + ")";
        } else {
          std::string s = "tied(" + std::to_string(v.nominee_a.index) + "," +
                          std::to_string(v.nominee_b.index);
          if (v.bisector_robot) s += ",bisector=" + std::to_string(*v.bisector_robot);
          return s + ")";
        }
      },
      cls);
}

}  // namespace apf
