#pragma once

#include "apf/configuration.hpp"

namespace apf {

// Input pattern. betas is the least rotation of the supplied gap cycle or
// of its mirror image, so no rooted reading of the formed pattern is
// smaller than betas itself.
struct TargetPattern {
  GapSequence betas;
  GapSequence original;

  static TargetPattern from_gaps(GapSequence gaps) {
    if (!is_valid_gap_sequence(gaps))
      throw StructuralError("pattern gaps must be positive and sum to one turn");
    TargetPattern p;
    p.betas = min_rotation(gaps).sequence;
    auto mirror = min_rotation(reversed(gaps)).sequence;
    if (lex_compare(mirror, p.betas) < 0) p.betas = std::move(mirror);
    p.original = std::move(gaps);
    return p;
  }

  std::size_t size() const { return betas.size(); }
  const Rational& beta(std::size_t j) const { return betas[j % betas.size()]; }
};

struct Embedding {
  std::vector<TurnAngle> targets;  // T_0 .. T_{n-1}
  TurnAngle anchor;
  Direction direction = Direction::Forward;

  // Distance of target j from the anchor, measured along direction.
  Rational offset(std::size_t j) const { return angle_between(anchor, targets[j], direction); }
};

inline Embedding embed_targets(const TurnAngle& anchor, Direction direction, const TargetPattern& pattern) {
  Embedding e{{}, anchor, direction};
  Rational acc = 0;
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    e.targets.push_back(anchor.shifted(acc, direction));
    acc += pattern.betas[j];
  }
  return e;
}

inline Embedding embed_targets(const Configuration& c, std::size_t leader, Direction pivotal,
                               const TargetPattern& pattern) {
  if (c.size() != pattern.size()) throw StructuralError("embed_targets: robot count differs from pattern length");
  auto cls = classify(c);
  auto* lc = std::get_if<LeaderConfig>(&cls);
  if (lc == nullptr || lc->leader != leader || lc->pivotal != pivotal)
    throw PreconditionError("embed_targets: not a leader configuration with this leader and direction");
  return embed_targets(c[leader], pivotal, pattern);
}

// True iff, read from some robot in some direction, the gaps of c are a
// rotation of the pattern.
inline bool pattern_formed(const Configuration& c, const TargetPattern& pattern) {
  if (c.size() != pattern.size()) throw StructuralError("pattern_formed: robot count differs from pattern length");
  GapSequence g = c.gaps();
  if (min_rotation(g).sequence == pattern.betas) return true;
  return min_rotation(reversed(g)).sequence == pattern.betas;
}

}  // namespace apf
