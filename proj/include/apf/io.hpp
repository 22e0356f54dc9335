#pragma once

// File formats: configuration and pattern JSON, JSON-Lines traces, and
// the offline trace verifier.

#include "apf/simulator.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace apf {

using json = nlohmann::json;

inline json configuration_to_json(const Configuration& c) {
  json positions = json::array();
  for (const auto& p : c.positions()) positions.push_back(p.str());
  return json{{"positions", positions}};
}

inline Configuration configuration_from_json(const json& j) {
  if (!j.is_object() || !j.contains("positions") || !j["positions"].is_array())
    throw ParseError("configuration JSON needs a \"positions\" array");
  std::vector<TurnAngle> positions;
  for (const auto& v : j["positions"]) {
    if (!v.is_string()) throw ParseError("configuration positions must be \"p/q\" strings");
    Rational r = parse_fraction(v.get<std::string>());
    if (sgn(r) < 0 || r >= 1) throw StructuralError("position " + v.get<std::string>() + " is outside [0, 1)");
    positions.emplace_back(r);
  }
  if (positions.size() < 3) throw StructuralError("a configuration needs at least three robots");
  return Configuration(std::move(positions));
}

inline json pattern_to_json(const GapSequence& gaps) {
  json out = json::array();
  for (const auto& g : gaps) out.push_back(to_fraction_string(g));
  return json{{"pattern", out}};
}

inline TargetPattern pattern_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pattern") || !j["pattern"].is_array())
    throw ParseError("pattern JSON needs a \"pattern\" array");
  GapSequence gaps;
  for (const auto& v : j["pattern"]) {
    if (!v.is_string()) throw ParseError("pattern entries must be \"p/q\" strings");
    gaps.push_back(parse_fraction(v.get<std::string>()));
  }
  if (gaps.size() < 3) throw StructuralError("a pattern needs at least three gaps");
  return TargetPattern::from_gaps(std::move(gaps));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline Configuration read_configuration(const std::string& path) { return configuration_from_json(read_json_file(path)); }
inline TargetPattern read_pattern(const std::string& path) { return pattern_from_json(read_json_file(path)); }

inline json decision_to_json(const Activation& a) {
  const Decision& d = a.decision;
  json j{{"robot", a.robot}, {"flip", a.flip}, {"kind", to_string(d.kind)}};
  j["to"] = d.is_move() ? json(d.destination.str()) : json(nullptr);
  j["dir"] = d.is_move() ? json(to_string(d.path)) : json(nullptr);
  j["rule"] = to_string(d.rule);
  j["seed"] = a.seed ? json(*a.seed) : json(nullptr);
  j["eps"] = d.random_epsilon ? json(to_fraction_string(*d.random_epsilon)) : json(nullptr);
  return j;
}

inline Activation decision_from_json(const json& j) {
  Activation a;
  a.robot = j.at("robot").get<std::size_t>();
  a.flip = j.at("flip").get<bool>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "move") {
    a.decision.kind = Decision::Kind::MoveTo;
    a.decision.destination = parse_turn(j.at("to").get<std::string>());
    a.decision.path = parse_direction(j.at("dir").get<std::string>());
  } else if (kind == "stay") {
    a.decision.kind = Decision::Kind::Stay;
  } else if (kind == "terminate") {
    a.decision.kind = Decision::Kind::Terminate;
  } else {
    throw ParseError("unknown decision kind '" + kind + "'");
  }
  a.decision.rule = parse_rule(j.at("rule").get<std::string>());
  if (j.contains("seed") && !j["seed"].is_null()) a.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("eps") && !j["eps"].is_null()) a.decision.random_epsilon = parse_fraction(j["eps"].get<std::string>());
  return a;
}

inline json record_to_json(const RoundRecord& r) {
  json activated = json::array();
  json decisions = json::array();
  for (const auto& a : r.activations) {
    activated.push_back(a.robot);
    decisions.push_back(decision_to_json(a));
  }
  json before = json::array();
  json after = json::array();
  for (const auto& p : r.positions_before) before.push_back(p.str());
  for (const auto& p : r.positions_after) after.push_back(p.str());
  return json{{"round", r.round},        {"epoch", r.epoch},
              {"activated", activated},  {"decisions", decisions},
              {"positions_before", before}, {"positions_after", after},
              {"class", r.class_after}};
}

inline RoundRecord record_from_json(const json& j) {
  RoundRecord r;
  r.round = j.at("round").get<std::size_t>();
  r.epoch = j.at("epoch").get<std::size_t>();
  for (const auto& d : j.at("decisions")) r.activations.push_back(decision_from_json(d));
  std::vector<std::size_t> activated = j.at("activated").get<std::vector<std::size_t>>();
  if (activated.size() != r.activations.size()) throw ParseError("activated and decisions differ in length");
  for (std::size_t k = 0; k < activated.size(); ++k)
    if (activated[k] != r.activations[k].robot) throw ParseError("activated and decisions name different robots");
  for (const auto& p : j.at("positions_before")) r.positions_before.push_back(parse_turn(p.get<std::string>()));
  for (const auto& p : j.at("positions_after")) r.positions_after.push_back(parse_turn(p.get<std::string>()));
  r.class_after = j.at("class").get<std::string>();
  return r;
}

inline void write_trace(std::ostream& out, const std::vector<RoundRecord>& trace) {
  for (const auto& r : trace) out << record_to_json(r).dump() << '\n';
}

inline std::vector<RoundRecord> read_trace(std::istream& in) {
  std::vector<RoundRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<RoundRecord> read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_trace(in);
}

struct TraceVerdict {
  std::vector<Violation> violations;
  std::size_t epochs = 0;
  std::size_t bound = 0;
  bool formed = false;
  bool all_terminated = false;

  bool clean() const { return violations.empty() && formed && all_terminated && epochs <= bound; }
};

// Replays a trace against the algorithm: every recorded decision must be
// what compute returns for that robot, orientation and seed; positions
// must follow from the decisions; collisions, phase invariants, epoch
// numbers and the epoch bound are re-checked. bound 0 means n + 4 for odd
// n and n + 6 for even n.
inline TraceVerdict verify_trace(const std::vector<RoundRecord>& trace, const TargetPattern& pattern,
                                 std::size_t bound = 0, const AlgorithmOptions& opts = {}) {
  TraceVerdict v;
  if (trace.empty()) {
    v.violations.push_back({0, "empty trace"});
    return v;
  }
  const std::size_t n = trace.front().positions_before.size();
  v.bound = bound != 0 ? bound : (n % 2 == 1 ? n + 4 : n + 6);
  if (n != pattern.size()) {
    v.violations.push_back({trace.front().round, "robot count differs from pattern length"});
    return v;
  }
  auto flag = [&](std::size_t round, std::string msg) { v.violations.push_back({round, std::move(msg)}); };

  std::optional<InvariantMonitor> monitor;
  try {
    monitor.emplace(trace.front().positions_before, pattern);
  } catch (const std::exception& e) {
    flag(trace.front().round, std::string("initial configuration: ") + e.what());
    return v;
  }
  std::vector<TurnAngle> expected_before = trace.front().positions_before;
  std::size_t expected_round = trace.front().round;
  for (const auto& rec : trace) {
    const std::size_t r = rec.round;
    if (r != expected_round) flag(r, "round number out of sequence (expected " + std::to_string(expected_round) + ")");
    expected_round = r + 1;
    if (rec.positions_before != expected_before) flag(r, "positions_before differ from the previous round's positions_after");
    if (rec.positions_before.size() != n || rec.positions_after.size() != n) {
      flag(r, "wrong number of positions");
      break;
    }
    if (rec.epoch != monitor->epoch())
      flag(r, "recorded epoch " + std::to_string(rec.epoch) + ", replay gives " + std::to_string(monitor->epoch()));
    if (rec.activations.empty()) flag(r, "empty activation set");

    std::vector<std::optional<Decision>> decisions(n);
    for (const auto& a : rec.activations) {
      if (a.robot >= n) {
        flag(r, "robot id " + std::to_string(a.robot) + " out of range");
        continue;
      }
      if (decisions[a.robot]) flag(r, "robot " + std::to_string(a.robot) + " activated twice");
      decisions[a.robot] = a.decision;
      try {
        Decision expect = decide(rec.positions_before, a.robot, a.flip, pattern, a.seed, opts);
        bool same = expect.kind == a.decision.kind && expect.rule == a.decision.rule &&
                    (!expect.is_move() || (expect.destination == a.decision.destination && expect.path == a.decision.path));
        if (same && expect.random_epsilon != a.decision.random_epsilon) same = false;
        if (!same) flag(r, "decision mismatch for robot " + std::to_string(a.robot));
      } catch (const std::exception& e) {
        flag(r, "compute failed for robot " + std::to_string(a.robot) + ": " + e.what());
      }
    }
    if (auto hit = detect_collision(rec.positions_before, decisions))
      flag(r, "collision between robots " + std::to_string(hit->robot_a) + " and " + std::to_string(hit->robot_b));
    std::vector<TurnAngle> after = rec.positions_before;
    for (std::size_t id = 0; id < n; ++id)
      if (decisions[id] && decisions[id]->is_move()) after[id] = decisions[id]->destination;
    if (after != rec.positions_after) flag(r, "positions_after do not follow from the decisions");
    try {
      monitor->after_round(r, rec.positions_before, after, rec.activations);
      std::string cls = describe_state(after);
      if (cls != rec.class_after) flag(r, "recorded class " + rec.class_after + ", replay gives " + cls);
    } catch (const std::exception& e) {
      flag(r, std::string("replay failed: ") + e.what());
      break;
    }
    expected_before = after;
    v.epochs = rec.epoch;
  }
  for (const auto& m : monitor->violations()) v.violations.push_back(m);
  v.formed = monitor->formed();
  v.all_terminated = monitor->all_terminated();
  if (!v.all_terminated) flag(trace.back().round, "trace ends before every robot terminated");
  if (v.epochs > v.bound)
    flag(trace.back().round, "used " + std::to_string(v.epochs) + " epochs, bound is " + std::to_string(v.bound));
  std::stable_sort(v.violations.begin(), v.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.round < b.round; });
  return v;
}

}  // namespace apf
