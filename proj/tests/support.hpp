#pragma once

// Generators and brute-force oracles shared by the test binaries. The
// oracles work from raw positions and never call the library routine
// they are compared against.

#include "apf/simulator.hpp"

#include <map>
#include <random>
#include <set>

namespace apf::testing {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

inline Rational frac(long p, long q) { return make_rational(p, q); }

inline std::vector<TurnAngle> turns(std::initializer_list<std::pair<long, long>> fr) {
  std::vector<TurnAngle> out;
  for (auto [p, q] : fr) out.emplace_back(p, q);
  return out;
}

// n distinct points on the 1/q grid, in random order.
inline std::vector<TurnAngle> random_positions(Rng& rng, std::size_t n, long q) {
  std::set<long> picked;
  while (picked.size() < n) picked.insert(static_cast<long>(below(rng, q)));
  std::vector<TurnAngle> out;
  for (long k : picked) out.emplace_back(k, q);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline std::size_t oracle_fold(const std::vector<TurnAngle>& pos);

inline Configuration random_asymmetric(Rng& rng, std::size_t n, long q) {
  for (;;) {
    auto pos = random_positions(rng, n, q);
    if (oracle_fold(pos) == 1) return Configuration(pos);
  }
}

// Random composition of one turn into n positive parts of 1/q.
inline GapSequence random_gaps(Rng& rng, std::size_t n, long q) {
  std::vector<long> parts(n, 1);
  for (long rest = q - static_cast<long>(n); rest > 0; --rest) ++parts[below(rng, n)];
  GapSequence g;
  for (long p : parts) g.push_back(frac(p, q));
  return g;
}

// Largest k such that the point set is invariant under rotation by 1/k.
inline std::size_t oracle_fold(const std::vector<TurnAngle>& pos) {
  std::set<TurnAngle> s(pos.begin(), pos.end());
  for (std::size_t k = pos.size(); k >= 2; --k) {
    bool ok = true;
    for (const auto& p : pos)
      if (!s.count(p.shifted(frac(1, static_cast<long>(k))))) {
        ok = false;
        break;
      }
    if (ok) return k;
  }
  return 1;
}

// All n rotations materialised; least one, smallest offset on ties.
inline std::pair<GapSequence, std::size_t> oracle_min_rotation(const GapSequence& s) {
  GapSequence best;
  std::size_t at = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    GapSequence r;
    for (std::size_t k = 0; k < s.size(); ++k) r.push_back(s[(j + k) % s.size()]);
    if (j == 0 || r < best) {
      best = r;
      at = j;
    }
  }
  return {best, at};
}

// Gaps read from position x in direction d, measured to each other
// robot in turn, from raw positions.
inline GapSequence oracle_rooted(const std::vector<TurnAngle>& pos, const TurnAngle& x, Direction d) {
  std::vector<Rational> dist;
  for (const auto& p : pos) dist.push_back(angle_between(x, p, d));
  std::sort(dist.begin(), dist.end());  // dist[0] is x itself
  GapSequence g;
  for (std::size_t k = 1; k < dist.size(); ++k) g.push_back(dist[k] - dist[k - 1]);
  g.push_back(1 - dist.back());
  return g;
}

// Every robot owning the least of all 2n rooted sequences. Positions are
// returned instead of indices; a robot minimal both ways is listed once.
inline std::map<TurnAngle, std::set<Direction>> oracle_nominees(const std::vector<TurnAngle>& pos) {
  GapSequence best;
  bool first = true;
  for (const auto& p : pos)
    for (auto d : {Direction::Forward, Direction::Reverse}) {
      auto g = oracle_rooted(pos, p, d);
      if (first || g < best) best = g;
      first = false;
    }
  std::map<TurnAngle, std::set<Direction>> out;
  for (const auto& p : pos)
    for (auto d : {Direction::Forward, Direction::Reverse})
      if (oracle_rooted(pos, p, d) == best) out[p].insert(d);
  return out;
}

// Robots in order from `from` along d, starting with `from` itself.
inline std::vector<TurnAngle> oracle_walk(const std::vector<TurnAngle>& pos, const TurnAngle& from, Direction d) {
  std::vector<TurnAngle> out(pos.begin(), pos.end());
  std::sort(out.begin(), out.end(), [&](const TurnAngle& a, const TurnAngle& b) {
    return angle_between(from, a, d) < angle_between(from, b, d);
  });
  return out;
}

// Move Ready robot straight from its definition: the first robot from the
// leader along the pivotal direction, other than the first two
// neighbours, whose clearance toward its destination exceeds alpha_1.
// Robots already on their target have no destination direction and are
// skipped.
inline std::optional<TurnAngle> oracle_move_ready(const std::vector<TurnAngle>& pos, const Embedding& emb,
                                                  Direction piv) {
  auto walk = oracle_walk(pos, emb.anchor, piv);
  const Rational alpha1 = angle_between(walk[1], walk[2], piv);
  for (std::size_t i = 3; i < walk.size(); ++i) {
    const TurnAngle& r = walk[i];
    const TurnAngle& t = emb.targets[i];
    if (r == t) continue;
    Direction d = angle_between(emb.anchor, t, piv) > angle_between(emb.anchor, r, piv) ? piv : opposite(piv);
    auto around = oracle_walk(pos, r, d);
    const TurnAngle& next = around[1];
    if (angle_between(r, next, d) - angle_between(r, t, d) > alpha1) return r;
  }
  return std::nullopt;
}

// Leader at 0 reading forward: r1 at a0, r2 at a0 + a1, and r3.. on the
// leader-anchored targets of pattern. nullopt unless the draw is a leader
// configuration with that leader and direction.
inline std::optional<Configuration> rfc_instance(Rng& rng, const TargetPattern& pat, bool snap_some) {
  const std::size_t n = pat.size();
  const long den = 4000 * static_cast<long>(n);
  const long a0 = 1 + static_cast<long>(rng() % 20), a1 = a0 + 1 + static_cast<long>(rng() % 20);
  std::vector<TurnAngle> pos = {TurnAngle(0, 1), TurnAngle(a0, den), TurnAngle(a0 + a1, den)};
  std::set<long> rest;
  while (rest.size() < n - 3) rest.insert(a0 + a1 + 1 + static_cast<long>(rng() % static_cast<unsigned long>(den - a0 - a1 - 1)));
  for (long r : rest) pos.emplace_back(r, den);
  if (snap_some) {
    auto emb = embed_targets(TurnAngle(0, 1), Direction::Forward, pat);
    for (std::size_t i = 3; i < n; ++i)
      if (rng() % 2 == 0 && std::find(pos.begin(), pos.end(), emb.targets[i]) == pos.end()) pos[i] = emb.targets[i];
  }
  if (oracle_fold(pos) != 1) return std::nullopt;
  Configuration c(pos);
  auto cls = classify(c);
  auto* lc = std::get_if<LeaderConfig>(&cls);
  if (!lc || c[lc->leader] != TurnAngle(0, 1) || lc->pivotal != Direction::Forward) return std::nullopt;
  return c;
}

}  // namespace apf::testing
