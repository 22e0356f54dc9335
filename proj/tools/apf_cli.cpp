#include "apf/explore.hpp"
#include "apf/harness.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

namespace {

using namespace apf;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct Common {
  std::string config;
  std::string pattern;
  std::uint64_t seed = 0;
};

void add_seed(CLI::App* app, std::uint64_t& seed) {
  app->add_option("--seed", seed, "run seed")->envname("APF_SEED");
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::string svg_frame(const RoundRecord& rec, bool after, const std::string& label) {
  const auto& pos = after ? rec.positions_after : rec.positions_before;
  const double cx = 160, cy = 160, r = 120;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"320\" height=\"340\" viewBox=\"0 0 320 340\">\n";
  os << "<rect width=\"320\" height=\"340\" fill=\"white\"/>\n";
  os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (std::size_t id = 0; id < pos.size(); ++id) {
    const double a = 2 * M_PI * pos[id].value().get_d();
    const double x = cx + r * std::cos(a), y = cy - r * std::sin(a);
    const double lx = cx + (r + 16) * std::cos(a), ly = cy - (r + 16) * std::sin(a);
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"#1f5fa8\"/>\n";
    os << "<text x=\"" << lx << "\" y=\"" << ly + 4 << "\" font-size=\"11\" text-anchor=\"middle\">" << id << "</text>\n";
  }
  os << "<text x=\"10\" y=\"325\" font-size=\"12\">" << label << "</text>\n</svg>\n";
  return os.str();
}

// One frame at the start of every epoch plus the final state.
void write_svgs(const std::string& dir, const std::vector<RoundRecord>& trace) {
  if (trace.empty()) return;
  std::filesystem::create_directories(dir);
  auto name = [&](std::size_t k) {
    std::ostringstream os;
    os << dir << "/epoch_" << std::setw(3) << std::setfill('0') << k << ".svg";
    return os.str();
  };
  std::size_t epoch = 0;
  for (const auto& rec : trace) {
    if (rec.epoch != epoch) {
      epoch = rec.epoch;
      write_text_file(name(epoch), svg_frame(rec, false, "epoch " + std::to_string(epoch) + ", round " +
                                                             std::to_string(rec.round)));
    }
  }
  const auto& last = trace.back();
  write_text_file(name(epoch + 1), svg_frame(last, true, "final after round " + std::to_string(last.round) + ": " +
                                                             last.class_after));
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoul(item));
  }
  return out;
}

int cmd_gen(std::size_t n, std::uint64_t seed, std::uint64_t q, const std::string& config_out,
            const std::string& pattern_out) {
  Instance inst = gen_instance(n, seed, q);
  write_or_print(config_out, instance_config_text(inst));
  write_or_print(pattern_out, instance_pattern_text(inst));
  return kOk;
}

struct RunArgs {
  Common io;
  std::string scheduler = "random";
  double p = 0.5;
  std::size_t fairness = 0;
  std::size_t max_epochs = 0;
  std::string mode;
  std::string trace;
  std::string svg;
  bool fixed_orientation = false;
};

int cmd_run(const RunArgs& a) {
  Configuration c = read_configuration(a.io.config);
  TargetPattern pattern = read_pattern(a.io.pattern);
  RunOptions o;
  o.policy = {parse_scheduler(a.scheduler), a.p, a.fairness, a.io.seed};
  o.mode = a.mode.empty() ? (c.size() % 2 == 1 ? Mode::Deterministic : Mode::RandomizedEven) : parse_mode(a.mode);
  o.seed = a.io.seed;
  o.max_epochs = a.max_epochs;
  o.fixed_orientation = a.fixed_orientation;
  RunResult res;
  try {
    res = run(c, pattern, o);
  } catch (const UnsolvableError& e) {
    std::cout << "verdict: unsolvable (" << e.what() << ")\n";
    return kViolation;
  }
  if (!a.trace.empty()) {
    std::ofstream out(a.trace);
    if (!out) throw std::runtime_error("cannot write " + a.trace);
    write_trace(out, res.trace);
  }
  if (!a.svg.empty()) write_svgs(a.svg, res.trace);
  const RunReport& r = res.report;
  const std::size_t bound = epoch_bound(o.mode, c.size());
  std::cout << "n=" << c.size() << " mode=" << to_string(o.mode) << " scheduler=" << a.scheduler << "\n"
            << "formed=" << r.formed << " terminated=" << r.terminated << "/" << c.size() << " epochs=" << r.epochs
            << " bound=" << bound << " rounds=" << r.rounds << " collisions=" << r.collisions << "\n"
            << "phases: leader@" << r.leader_epoch << " rfc@" << r.rfc_epoch << " pfc@" << r.pfc_epoch << " formed@"
            << r.formed_epoch << "\n";
  if (!r.error.empty()) std::cout << "error: " << r.error << "\n";
  for (const auto& v : r.violations) std::cout << "violation round " << v.round << ": " << v.message << "\n";
  bool ok = r.formed && r.all_terminated && r.epochs <= bound && r.collisions == 0 && r.violations.empty() &&
            r.error.empty();
  std::cout << "verdict: " << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kOk : kViolation;
}

int cmd_explore(const Common& io, std::size_t rounds, bool mutant, double max_prefixes) {
  Configuration c = read_configuration(io.config);
  TargetPattern pattern = read_pattern(io.pattern);
  ExploreOptions o;
  o.algorithm.drop_second_gap_lower_bound = mutant;
  o.max_prefixes = max_prefixes;
  ExploreReport rep = explore_schedules(c, pattern, rounds, o);
  std::cout << "rounds=" << rounds << " states=" << rep.states << " transitions=" << rep.transitions << "\n";
  if (rep.safe) {
    std::cout << "verdict: safe\n";
    return kOk;
  }
  std::cout << "verdict: UNSAFE: " << rep.failure << "\ncounterexample:\n";
  write_trace(std::cout, rep.counterexample);
  return kViolation;
}

int cmd_symmetry(const Common& io, const std::string& rule_name, std::size_t rounds) {
  Configuration c = read_configuration(io.config);
  const std::size_t k = rotational_fold(c.positions());
  int status = kOk;
  for (const auto& [name, rule] : symmetry_rules()) {
    if (!rule_name.empty() && rule_name != name) continue;
    try {
      auto folds = fsync_symmetry_experiment(c, rule, rounds, io.seed);
      std::cout << name << ": k=" << k << " folds";
      for (auto f : folds) std::cout << ' ' << f;
      std::cout << "\n";
    } catch (const std::logic_error& e) {
      std::cout << name << ": " << e.what() << "\n";
      status = kViolation;
    }
  }
  if (!io.pattern.empty()) {
    TargetPattern pattern = read_pattern(io.pattern);
    try {
      run(c, pattern, RunOptions{});
      std::cout << "run: accepted a symmetric input\n";
      status = kViolation;
    } catch (const UnsolvableError& e) {
      std::cout << "run: unsolvable (" << e.what() << ")\n";
    }
  }
  return status;
}

int cmd_verify(const std::string& trace_path, const std::string& pattern_path, std::size_t bound) {
  TargetPattern pattern = read_pattern(pattern_path);
  auto trace = read_trace_file(trace_path);
  TraceVerdict v = verify_trace(trace, pattern, bound);
  std::cout << "rounds=" << trace.size() << " epochs=" << v.epochs << " bound=" << v.bound << " formed=" << v.formed
            << "\n";
  for (const auto& x : v.violations) std::cout << "violation round " << x.round << ": " << x.message << "\n";
  std::cout << "verdict: " << (v.clean() ? "clean" : "FAIL") << "\n";
  return v.clean() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern formation on a circle: simulator and checks"};
  app.require_subcommand(1);

  std::size_t gen_n = 5;
  std::uint64_t gen_q = 0;
  Common gen_io;
  auto* gen = app.add_subcommand("gen", "generate a random asymmetric instance");
  gen->add_option("--n", gen_n, "robot count")->required();
  gen->add_option("--q", gen_q, "denominator bound (default 4n)");
  gen->add_option("--config", gen_io.config, "output configuration file (default stdout)");
  gen->add_option("--pattern", gen_io.pattern, "output pattern file (default stdout)");
  add_seed(gen, gen_io.seed);

  RunArgs ra;
  auto* runc = app.add_subcommand("run", "run the algorithm on one instance");
  runc->add_option("--config", ra.io.config)->required();
  runc->add_option("--pattern", ra.io.pattern)->required();
  runc->add_option("--scheduler", ra.scheduler)->check(CLI::IsMember({"fsync", "rr", "random", "lazy"}));
  runc->add_option("--p", ra.p, "activation probability for the random scheduler")->check(CLI::Range(0.0, 1.0));
  runc->add_option("--fairness", ra.fairness, "fairness window F (default n)");
  runc->add_option("--max-epochs", ra.max_epochs, "epoch budget (default n+6)");
  runc->add_option("--mode", ra.mode, "det or rand (default by parity of n)")->check(CLI::IsMember({"det", "rand"}));
  runc->add_option("--trace", ra.trace, "write a JSONL trace");
  runc->add_option("--svg", ra.svg, "write one SVG per epoch boundary into this directory");
  runc->add_flag("--fixed-orientation", ra.fixed_orientation, "every robot uses the global orientation");
  add_seed(runc, ra.io.seed);

  BatchOptions bo;
  std::string b_ns = "3,5,7";
  std::vector<std::string> b_sched{"fsync", "rr", "random", "lazy"};
  std::string b_mode = "det";
  std::string b_csv;
  auto* bat = app.add_subcommand("batch", "run seeded trials over robot counts and schedulers");
  bat->add_option("--n", b_ns, "comma-separated robot counts");
  bat->add_option("--trials", bo.trials);
  bat->add_option("--scheduler", b_sched)->delimiter(',')->check(CLI::IsMember({"fsync", "rr", "random", "lazy"}));
  bat->add_option("--p", bo.p)->check(CLI::Range(0.0, 1.0));
  bat->add_option("--fairness", bo.fairness);
  bat->add_option("--max-epochs", bo.max_epochs);
  bat->add_option("--mode", b_mode)->check(CLI::IsMember({"det", "rand"}));
  bat->add_option("--jobs", bo.jobs, "worker threads");
  bat->add_option("--csv", b_csv, "write CSV here ('-' for stdout)");
  add_seed(bat, bo.seed);

  Common ex_io;
  std::size_t ex_rounds = 4;
  bool ex_mutant = false;
  double ex_max = 1e9;
  auto* ex = app.add_subcommand("explore", "enumerate all activation schedules for a few rounds");
  ex->add_option("--config", ex_io.config)->required();
  ex->add_option("--pattern", ex_io.pattern)->required();
  ex->add_option("--rounds", ex_rounds);
  ex->add_option("--max-prefixes", ex_max, "refuse when the prefix count estimate is larger");
  ex->add_flag("--mutant", ex_mutant, "drop the lower bound on r2's shrink step");

  Common sy_io;
  std::string sy_rule;
  std::size_t sy_rounds = 10;
  auto* sy = app.add_subcommand("symmetry", "FSYNC symmetry experiment from a symmetric start");
  sy->add_option("--config", sy_io.config)->required();
  sy->add_option("--pattern", sy_io.pattern, "also check that run rejects the input");
  sy->add_option("--rule", sy_rule, "approach_nearer, forward_third or balance (default all)");
  sy->add_option("--rounds", sy_rounds);
  add_seed(sy, sy_io.seed);

  std::string v_trace, v_pattern;
  std::size_t v_bound = 0;
  auto* ver = app.add_subcommand("verify", "replay and re-check a trace");
  ver->add_option("--trace", v_trace)->required();
  ver->add_option("--pattern", v_pattern)->required();
  ver->add_option("--bound", v_bound, "epoch bound (default n+4, or n+6 for even n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_n, gen_io.seed, gen_q, gen_io.config, gen_io.pattern);
    if (*runc) return cmd_run(ra);
    if (*bat) {
      bo.ns = parse_size_list(b_ns);
      bo.schedulers.clear();
      for (const auto& s : b_sched) bo.schedulers.push_back(parse_scheduler(s));
      bo.mode = parse_mode(b_mode);
      auto cells = batch(bo);
      std::cout << batch_table(cells);
      if (!b_csv.empty()) write_or_print(b_csv, batch_csv(cells));
      return batch_ok(cells) ? kOk : kViolation;
    }
    if (*ex) return cmd_explore(ex_io, ex_rounds, ex_mutant, ex_max);
    if (*sy) return cmd_symmetry(sy_io, sy_rule, sy_rounds);
    if (*ver) return cmd_verify(v_trace, v_pattern, v_bound);
  } catch (const UnsolvableError& e) {
    std::cerr << "unsolvable: " << e.what() << "\n";
    return kViolation;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
