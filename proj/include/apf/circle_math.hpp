#pragma once

#include "apf/turn_angle.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace apf {

// Cyclic list of consecutive gaps between robots. The gaps of a valid
// configuration are strictly positive and sum to exactly one turn.
using GapSequence = std::vector<Rational>;

inline bool is_valid_gap_sequence(const GapSequence& gaps) {
  if (gaps.empty()) return false;
  Rational total = 0;
  for (const auto& g : gaps) {
    if (sgn(g) <= 0) return false;
    total += g;
  }
  return total == 1;
}

// Angular distance travelled from a to b moving in direction d.
inline Rational angle_between(const TurnAngle& a, const TurnAngle& b, Direction d) {
  Rational diff = d == Direction::Forward ? b.value() - a.value() : a.value() - b.value();
  return wrap_turn(diff);
}

inline std::strong_ordering lex_compare(const GapSequence& lhs, const GapSequence& rhs) {
  if (lhs.size() != rhs.size()) throw StructuralError("lex_compare: length mismatch");
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    int c = cmp(lhs[i], rhs[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

inline GapSequence rotate_left(const GapSequence& s, std::size_t offset) {
  GapSequence out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[(i + offset) % s.size()];
  return out;
}

inline GapSequence reversed(const GapSequence& s) { return GapSequence(s.rbegin(), s.rend()); }

// Compares rotation a of s against rotation b of s without materialising either.
inline int compare_rotations(const GapSequence& s, std::size_t a, std::size_t b) {
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    int c = cmp(s[(a + k) % n], s[(b + k) % n]);
    if (c != 0) return c;
  }
  return 0;
}

struct MinRotation {
  GapSequence sequence;
  std::size_t offset = 0;
};

// Lexicographically least rotation; ties resolve to the smallest offset.
inline MinRotation min_rotation(const GapSequence& s) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < s.size(); ++j)
    if (compare_rotations(s, j, best) < 0) best = j;
  return {rotate_left(s, best), best};
}

// Largest k such that rotating by 1/k maps the point set onto itself,
// i.e. the cyclic gap sequence repeats with period n/k.
inline std::size_t rotational_fold(const std::vector<TurnAngle>& positions) {
  if (positions.empty()) throw StructuralError("rotational_fold: empty position set");
  const std::size_t n = positions.size();
  std::vector<const Rational*> sorted;
  for (const auto& p : positions) sorted.push_back(&p.value());
  std::sort(sorted.begin(), sorted.end(), [](const Rational* a, const Rational* b) { return *a < *b; });
  GapSequence g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g[i] = *sorted[i + 1] - *sorted[i];
    if (sgn(g[i]) == 0) throw StructuralError("rotational_fold: positions not distinct");
  }
  g[n - 1] = 1 + *sorted[0] - *sorted[n - 1];
  for (std::size_t k = n; k >= 2; --k) {
    if (n % k != 0) continue;
    const std::size_t period = n / k;
    bool ok = true;
    for (std::size_t i = 0; i + period < n && ok; ++i) ok = g[i] == g[i + period];
    if (ok) return k;
  }
  return 1;
}

// The two antipodal points where the perpendicular bisector of chord ab
// meets the circle. The first is the midpoint (a+b)/2 of the raw values.
inline std::pair<TurnAngle, TurnAngle> bisector_points(const TurnAngle& a, const TurnAngle& b) {
  if (a == b) throw StructuralError("bisector_points: coincident inputs");
  Rational mid = (a.value() + b.value()) / 2;
  return {TurnAngle(mid), TurnAngle(mid + Rational(1, 2))};
}

inline bool on_bisector(const TurnAngle& x, const TurnAngle& a, const TurnAngle& b) {
  auto [p, q] = bisector_points(a, b);
  return x == p || x == q;
}

}  // namespace apf
