#pragma once

// Instance generation and batch runs.

#include "apf/io.hpp"

#include <atomic>
#include <iomanip>
#include <thread>

namespace apf {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform integer in [0, bound), by rejection so results do not depend on
// the standard library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

struct Instance {
  Configuration config;
  GapSequence pattern;  // as generated, not canonicalized
  std::size_t attempts = 0;
};

// n distinct positions on the 1/Q grid, resampled until asymmetric, and a
// random composition of Q into n positive parts as the pattern.
inline Instance gen_instance(std::size_t n, std::uint64_t seed, std::uint64_t q = 0) {
  if (n < 3) throw PreconditionError("gen_instance: n must be at least 3");
  if (q == 0) q = 4 * n;
  if (q < 4 * n) throw PreconditionError("gen_instance: denominator bound must be at least 4n");
  std::mt19937_64 rng(splitmix64(seed));
  Instance out;
  for (out.attempts = 1;; ++out.attempts) {
    if (out.attempts > 1000) throw GenerationError("no asymmetric configuration after 1000 attempts");
    std::set<std::uint64_t> picked;
    while (picked.size() < n) picked.insert(uniform_below(rng, q));
    std::vector<TurnAngle> positions;
    for (auto k : picked) positions.emplace_back(make_rational(static_cast<long>(k), static_cast<long>(q)));
    if (rotational_fold(positions) == 1) {
      out.config = Configuration(std::move(positions));
      break;
    }
  }
  std::vector<std::uint64_t> parts(n, 1);
  for (std::uint64_t rest = q - n; rest > 0; --rest) ++parts[uniform_below(rng, n)];
  for (auto p : parts) out.pattern.push_back(make_rational(static_cast<long>(p), static_cast<long>(q)));
  return out;
}

inline std::string instance_config_text(const Instance& inst) { return configuration_to_json(inst.config).dump(2) + "\n"; }
inline std::string instance_pattern_text(const Instance& inst) { return pattern_to_json(inst.pattern).dump(2) + "\n"; }

struct BatchOptions {
  std::vector<std::size_t> ns;
  std::size_t trials = 50;
  std::vector<SchedulerKind> schedulers{SchedulerKind::FullSync, SchedulerKind::RoundRobin, SchedulerKind::RandomSubset,
                                        SchedulerKind::Lazy};
  std::uint64_t seed = 0;
  Mode mode = Mode::Deterministic;
  double p = 0.5;
  std::size_t fairness = 0;
  std::size_t max_epochs = 0;
  std::size_t jobs = 1;
  AlgorithmOptions algorithm;
};

struct BatchCell {
  std::size_t n = 0;
  SchedulerKind scheduler = SchedulerKind::FullSync;
  std::size_t trials = 0;
  std::size_t formed = 0;
  std::size_t max_epochs = 0;
  double mean_epochs = 0;
  std::size_t bound = 0;
  std::size_t violations = 0;  // runs that broke an invariant, errored, or missed the bound
  std::size_t collisions = 0;
  std::size_t joint_tie_breaks = 0;
  std::size_t equal_draws = 0;
  std::string error;                  // configuration error for the whole cell
  std::vector<std::string> failures;  // first few failing runs

  bool ok() const { return error.empty() && violations == 0 && collisions == 0 && formed == trials; }
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  return splitmix64(splitmix64(seed + 0x632be59bd9b4e019ULL * n) + trial);
}

inline std::size_t epoch_bound(Mode mode, std::size_t n) { return mode == Mode::Deterministic ? n + 4 : n + 6; }

struct TrialOutcome {
  bool formed = false;
  bool ok = false;
  std::size_t epochs = 0;
  std::size_t collisions = 0;
  std::size_t joint_tie_breaks = 0;
  std::size_t equal_draws = 0;
  std::string failure;
};

inline TrialOutcome run_trial(std::size_t n, SchedulerKind kind, std::size_t trial, const BatchOptions& opt) {
  TrialOutcome t;
  const std::uint64_t s = trial_seed(opt.seed, n, trial);
  try {
    Instance inst = gen_instance(n, s);
    RunOptions ro;
    ro.policy = {kind, opt.p, opt.fairness, splitmix64(s + static_cast<std::uint64_t>(kind))};
    ro.mode = opt.mode;
    ro.seed = s;
    ro.max_epochs = opt.max_epochs;
    ro.algorithm = opt.algorithm;
    ro.record_trace = false;
    RunReport rep = run(inst.config, TargetPattern::from_gaps(inst.pattern), ro).report;
    const std::size_t bound = epoch_bound(opt.mode, n);
    t.formed = rep.formed;
    t.epochs = rep.epochs;
    t.collisions = rep.collisions;
    t.joint_tie_breaks = rep.joint_tie_breaks;
    t.equal_draws = rep.equal_tie_break_draws;
    t.ok = rep.formed && rep.all_terminated && rep.epochs <= bound && rep.violations.empty() && rep.error.empty() &&
           rep.collisions == 0;
    if (!t.ok) {
      std::ostringstream os;
      os << "trial " << trial << ": ";
      if (!rep.error.empty()) os << rep.error << "; ";
      if (!rep.formed) os << "not formed; ";
      if (rep.epochs > bound) os << rep.epochs << " epochs; ";
      for (const auto& v : rep.violations) os << "round " << v.round << ": " << v.message << "; ";
      t.failure = os.str();
    }
  } catch (const std::exception& e) {
    t.failure = "trial " + std::to_string(trial) + ": " + e.what();
  }
  return t;
}

inline std::vector<BatchCell> batch(const BatchOptions& opt) {
  std::vector<BatchCell> cells;
  if (opt.trials == 0) return cells;
  struct Task {
    std::size_t cell;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t n : opt.ns) {
    for (SchedulerKind kind : opt.schedulers) {
      BatchCell cell;
      cell.n = n;
      cell.scheduler = kind;
      cell.trials = opt.trials;
      cell.bound = epoch_bound(opt.mode, n);
      try {
        check_mode(opt.mode, n);
        for (std::size_t t = 0; t < opt.trials; ++t) tasks.push_back({cells.size(), t});
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }

  std::vector<TrialOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const BatchCell& c = cells[tasks[k].cell];
      outcomes[k] = run_trial(c.n, c.scheduler, tasks[k].trial, opt);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opt.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<std::size_t> epoch_sum(cells.size(), 0);
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    BatchCell& c = cells[tasks[k].cell];
    const TrialOutcome& t = outcomes[k];
    c.formed += t.formed ? 1 : 0;
    c.max_epochs = std::max(c.max_epochs, t.epochs);
    epoch_sum[tasks[k].cell] += t.epochs;
    c.collisions += t.collisions;
    c.joint_tie_breaks += t.joint_tie_breaks;
    c.equal_draws += t.equal_draws;
    if (!t.ok) {
      ++c.violations;
      if (c.failures.size() < 5) c.failures.push_back(t.failure);
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].trials > 0 && cells[i].error.empty())
      cells[i].mean_epochs = static_cast<double>(epoch_sum[i]) / static_cast<double>(cells[i].trials);
  return cells;
}

inline bool batch_ok(const std::vector<BatchCell>& cells) {
  return std::all_of(cells.begin(), cells.end(), [](const BatchCell& c) { return c.ok(); });
}

inline std::string batch_csv(const std::vector<BatchCell>& cells) {
  std::ostringstream os;
  os << "n,scheduler,trials,formed,max_epochs,mean_epochs,bound,violations,collisions\n";
  for (const auto& c : cells) {
    os << c.n << ',' << to_string(c.scheduler) << ',' << c.trials << ',';
    if (!c.error.empty()) {
      os << "error,error,error," << c.bound << ",error,error\n";
      continue;
    }
    os << c.formed << ',' << c.max_epochs << ',' << std::fixed << std::setprecision(3) << c.mean_epochs
       << std::defaultfloat << ',' << c.bound << ',' << c.violations << ',' << c.collisions << '\n';
  }
  return os.str();
}

inline std::string batch_table(const std::vector<BatchCell>& cells) {
  std::ostringstream os;
  if (cells.empty()) {
    os << "(no trials)\n";
    return os.str();
  }
  os << std::left << std::setw(5) << "n" << std::setw(8) << "sched" << std::right << std::setw(7) << "trials"
     << std::setw(8) << "formed" << std::setw(7) << "max" << std::setw(8) << "mean" << std::setw(7) << "bound"
     << std::setw(6) << "viol" << std::setw(6) << "coll" << "\n";
  for (const auto& c : cells) {
    os << std::left << std::setw(5) << c.n << std::setw(8) << to_string(c.scheduler) << std::right << std::setw(7)
       << c.trials;
    if (!c.error.empty()) {
      os << "  error: " << c.error << "\n";
      continue;
    }
    os << std::setw(8) << c.formed << std::setw(7) << c.max_epochs << std::setw(8) << std::fixed << std::setprecision(2)
       << c.mean_epochs << std::defaultfloat << std::setw(7) << c.bound << std::setw(6) << c.violations << std::setw(6)
       << c.collisions << "\n";
    for (const auto& f : c.failures) os << "      " << f << "\n";
  }
  return os.str();
}

}  // namespace apf
