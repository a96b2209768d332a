// ivl-lab: replay golden schedules, fuzz objects, check history files, count shared
// accesses and validate CountMin error bounds.
//
// Exit codes: 0 all checks pass, 1 a property violation was found, 2 usage or cap error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "ivl/bounds.hpp"
#include "ivl/checker.hpp"
#include "ivl/harness.hpp"
#include "ivl/history_io.hpp"
#include "ivl/schedule.hpp"

namespace {

using namespace ivl;

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ObjectKind kind_option(const std::string& text) {
  try {
    return parse_object_kind(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string verdict_line(const Verdict& v, bool quantitative) {
  if (!quantitative) return v.linearizable ? "linearizable" : "NOT linearizable";
  if (v.linearizable) return "linearizable";
  return v.ivl ? "IVL, not linearizable" : "NOT IVL";
}

SpecBinding binding_for(const Schedule& s) {
  std::map<std::string, SequentialSpec> specs;
  for (const auto& o : s.objects) specs.emplace(o.name, spec_for(o.config));
  return SpecBinding(std::move(specs));
}

bool all_quantitative(const Schedule& s) {
  for (const auto& o : s.objects)
    if (!spec_for(o.config).quantitative()) return false;
  return true;
}

std::string describe(const OpRecord& op) {
  std::ostringstream out;
  out << "p" << op.process.value << ' ' << op.object << ' ' << to_string(op.op.kind);
  if (!std::holds_alternative<std::monostate>(op.op.arg)) out << '(' << format_arg(op.op.arg) << ')';
  return out.str();
}

void print_verdict(std::ostream& out, const History& h, const Verdict& v, bool quantitative) {
  const auto ops = operations(h);
  out << "linearizable: " << (v.linearizable ? "yes" : "no") << '\n';
  if (v.linearizable) out << "linearization: " << format_linearization(v.linearization) << '\n';
  if (quantitative) {
    out << "ivl: " << (v.ivl ? "yes" : "no") << '\n';
    if (v.ivl) {
      out << "lower witness: " << format_linearization(v.lower) << '\n';
      out << "upper witness: " << format_linearization(v.upper) << '\n';
    }
    for (const auto& [id, env] : v.envelopes) {
      out << "envelope " << id << " (" << describe(ops[id]) << "): [" << format_value(env.min) << ", "
          << format_value(env.max) << "] observed " << (ops[id].ret ? format_value(*ops[id].ret) : "?") << '\n';
    }
  }
  out << "verdict: " << verdict_line(v, quantitative) << '\n';
}

Schedule load_schedule(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return read_schedule_file(name_or_path);
  return golden_schedule(name_or_path);
}

bool passes(const Verdict& v, bool quantitative) { return quantitative ? v.ivl : v.linearizable; }

// replay ----------------------------------------------------------------------------

struct ReplayOptions {
  std::string schedule;
  std::optional<std::string> object;
  std::optional<std::string> base;
  std::optional<std::string> out;
  std::size_t cap_ops = CheckerLimits{}.max_ops;
};

int cmd_replay(const ReplayOptions& o) {
  auto s = load_schedule(o.schedule);
  for (auto& decl : s.objects) {
    if (o.object) decl.config.kind = kind_option(*o.object);
    if (o.base) decl.config.base = *o.base == "ivl" ? SnapshotBase::Ivl : SnapshotBase::Locked;
  }
  const auto h = replay(s);
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) throw UsageError("cannot write " + *o.out);
    write_history(f, h);
  }
  std::cout << "# schedule " << s.name << '\n' << to_text(h);
  const bool quantitative = all_quantitative(s);
  CheckerLimits limits;
  limits.max_ops = o.cap_ops;
  const auto v = check_all(h, binding_for(s), limits);
  print_verdict(std::cout, h, v, quantitative);
  return passes(v, quantitative) ? kPass : kViolation;
}

// fuzz ------------------------------------------------------------------------------

struct FuzzOptions {
  std::string object = "counter";
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  std::size_t processes = 3;
  std::size_t cap_ops = 8;
  std::string base = "locked";
  std::optional<std::string> out;
};

int cmd_fuzz(const FuzzOptions& o) {
  const auto kind = kind_option(o.object);
  auto params = fuzz_params_for(kind, o.processes, o.cap_ops);
  params.objects.front().config.base = o.base == "ivl" ? SnapshotBase::Ivl : SnapshotBase::Locked;
  CheckerLimits limits;
  limits.max_ops = std::max(limits.max_ops, o.cap_ops);
  const auto spec = spec_for(params.objects.front().config);
  // The locked counter claims full linearizability, so that is what gets checked.
  const bool quantitative = spec.quantitative() && kind != ObjectKind::LockedCounter;

  std::size_t good = 0;
  std::optional<Schedule> first_bad;
  for (std::size_t r = 0; r < o.runs; ++r) {
    const auto s = random_schedule(mix_seed(o.seed, r), params);
    const auto h = replay(s);
    const bool ok = quantitative ? check_ivl(h, spec, limits).ivl : check_linearizable(h, spec, limits).linearizable;
    if (ok)
      ++good;
    else if (!first_bad)
      first_bad = s;
  }
  std::cout << good << '/' << o.runs << (quantitative ? " IVL" : " linearizable") << '\n';
  if (first_bad) {
    std::cout << "first violation: " << first_bad->name << '\n';
    if (o.out) {
      std::ofstream f(*o.out);
      f << to_text(*first_bad);
    } else {
      std::cout << to_text(*first_bad) << "# history\n" << to_text(replay(*first_bad));
    }
  }
  return good == o.runs ? kPass : kViolation;
}

// check -----------------------------------------------------------------------------

struct CheckOptions {
  std::string file;
  std::string spec = "counter";
  std::size_t width = 4;
  std::size_t depth = 2;
  std::uint64_t seed = 0;
  std::size_t components = 0;
  std::size_t cap_ops = CheckerLimits{}.max_ops;
};

int cmd_check(const CheckOptions& o) {
  const auto h = read_history_file(o.file);
  std::optional<SequentialSpec> spec;
  if (o.spec == "counter")
    spec = SequentialSpec::counter();
  else if (o.spec == "parameter")
    spec = SequentialSpec::parameter();
  else if (o.spec == "pcm")
    spec = SequentialSpec::count_min(o.seed, o.width, o.depth);
  else if (o.spec == "snapshot") {
    std::size_t n = o.components;
    if (n == 0)
      for (const auto& e : h.events()) n = std::max(n, static_cast<std::size_t>(e.process.value));
    spec = SequentialSpec::snapshot(n);
  } else {
    throw UsageError("unknown spec '" + o.spec + "' (counter, parameter, pcm, snapshot)");
  }
  CheckerLimits limits;
  limits.max_ops = o.cap_ops;
  const auto v = check_all(h, *spec, limits);
  print_verdict(std::cout, h, v, spec->quantitative());
  return passes(v, spec->quantitative()) ? kPass : kViolation;
}

// bench -----------------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> ns = {2, 4, 8, 16, 32};
  std::size_t ops = 20000;
  std::size_t max_threads = 4;
};

int accesses(StepObject& obj, ProcessId p, const Operation& op) {
  const auto before = obj.tally().total();
  auto s = obj.begin(p, op);
  while (!s->done()) s->step();
  return static_cast<int>(obj.tally().total() - before);
}

double ns_per_update(ObjectKind kind, std::size_t threads, std::size_t ops) {
  ObjectConfig c;
  c.kind = kind;
  c.processes = threads;
  auto obj = make_step_object(c);
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const ProcessId p(static_cast<int>(t + 1));
      for (std::size_t i = 0; i < ops; ++i) {
        auto s = obj->begin(p, Operation::update(std::int64_t{1}));
        while (!s->done()) s->step();
      }
    });
  }
  for (auto& th : pool) th.join();
  const std::chrono::duration<double, std::nano> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count() / static_cast<double>(ops * threads);
}

int cmd_bench(const BenchOptions& o) {
  bool ok = true;
  std::cout << std::left << std::setw(6) << "n" << std::setw(18) << "counter.update" << std::setw(16) << "counter.read"
            << std::setw(20) << "parameter.update" << std::setw(18) << "parameter.read" << "locked.update\n";
  std::optional<int> counter_update;
  for (auto n : o.ns) {
    ObjectConfig c;
    c.processes = n;
    c.kind = ObjectKind::Counter;
    auto counter = make_step_object(c);
    c.kind = ObjectKind::Parameter;
    auto parameter = make_step_object(c);
    c.kind = ObjectKind::LockedCounter;
    auto locked = make_step_object(c);
    const ProcessId p1(1);
    const int cu = accesses(*counter, p1, Operation::update(std::int64_t{5}));
    const int cr = accesses(*counter, p1, Operation::read());
    const int pu = accesses(*parameter, p1, Operation::update(-2.5));
    const int pr = accesses(*parameter, p1, Operation::read());
    const int lu = accesses(*locked, p1, Operation::update(std::int64_t{5}));
    std::cout << std::setw(6) << n << std::setw(18) << cu << std::setw(16) << cr << std::setw(20) << pu << std::setw(18) << pr << lu
              << '\n';
    if (!counter_update) counter_update = cu;
    ok = ok && cu == *counter_update && cr == static_cast<int>(n) && pr == static_cast<int>(4 * n);
  }
  std::cout << "\nthreads  counter ns/update  locked ns/update\n";
  for (std::size_t t = 1; t <= o.max_threads; t *= 2) {
    std::cout << std::setw(9) << t << std::setw(19) << std::fixed << std::setprecision(1) << ns_per_update(ObjectKind::Counter, t, o.ops)
              << ns_per_update(ObjectKind::LockedCounter, t, o.ops) << '\n';
  }
  std::cout << "step counts: " << (ok ? "constant update, read = n, parameter read = 4n" : "UNEXPECTED") << '\n';
  return ok ? kPass : kViolation;
}

// cm-validate -----------------------------------------------------------------------

struct ValidateOptions {
  ValidationConfig config;
  bool sequential_only = false;
  std::optional<std::string> csv;
};

void print_report(std::ostream& out, const std::string& label, const ErrorReport& r) {
  out << label << ": w=" << r.dims.width << " d=" << r.dims.depth << " trials=" << r.outcomes.size() << " queries=" << r.queries()
      << '\n';
  out << std::setprecision(6) << std::defaultfloat;
  out << "  lower violations " << r.lower_violations() << " rate " << r.lower_rate() << '\n';
  out << "  upper violations " << r.upper_violations() << " rate " << r.upper_rate() << '\n';
  out << "  joint violations " << r.joint_violations() << " rate " << r.joint_rate() << " (limit "
      << r.config.delta + binomial_tolerance(r.config.delta, r.outcomes.size()) << ")\n";
  out << "  trials with a violation " << r.trial_rate() << '\n';
  out << "  " << (r.passes() ? "PASS" : "FAIL") << '\n';
}

void write_csv(std::ostream& out, const std::string& mode, const ErrorReport& r) {
  for (const auto& t : r.outcomes)
    out << mode << ',' << t.trial << ',' << t.stream_seed << ',' << t.hash_seed << ',' << t.queries << ',' << t.lower_violations << ','
        << t.upper_violations << ',' << t.joint_violations << ',' << t.max_overestimate << '\n';
}

int cmd_cm_validate(const ValidateOptions& o) {
  const auto seq = validate_sequential(o.config);
  print_report(std::cout, "sequential", seq);
  bool ok = seq.passes();
  std::optional<ErrorReport> conc;
  if (!o.sequential_only) {
    conc = validate_concurrent(o.config);
    print_report(std::cout, "concurrent (" + std::to_string(o.config.writers) + " writers)", *conc);
    const bool close = within_sequential_rate(seq, *conc);
    std::cout << "concurrent rate within sequential rate + 2 SE: " << (close ? "yes" : "no") << '\n';
    ok = ok && conc->passes() && close;
  }
  if (o.csv) {
    std::ofstream f(*o.csv);
    if (!f) throw UsageError("cannot write " + *o.csv);
    f << "mode,trial,stream_seed,hash_seed,queries,lower,upper,joint,max_overestimate\n";
    write_csv(f, "sequential", seq);
    if (conc) write_csv(f, "concurrent", *conc);
  }
  return ok ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intermediate value linearizability lab"};
  app.require_subcommand(1);
  int code = kPass;

  ReplayOptions replay_opts;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a golden schedule or schedule file and check the history");
  replay_cmd->add_option("schedule", replay_opts.schedule, "Golden schedule name or path")->required();
  replay_cmd->add_option("--object", replay_opts.object, "Replace every object's kind");
  replay_cmd->add_option("--bc", replay_opts.base, "Snapshot base counter")->check(CLI::IsMember({"locked", "ivl"}));
  replay_cmd->add_option("--out", replay_opts.out, "Write the history here");
  replay_cmd->add_option("--cap-ops", replay_opts.cap_ops, "Checker operation cap");

  FuzzOptions fuzz_opts;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Check random schedules");
  fuzz_cmd->add_option("--object", fuzz_opts.object, "Object kind")->capture_default_str();
  fuzz_cmd->add_option("--runs", fuzz_opts.runs)->capture_default_str();
  fuzz_cmd->add_option("--seed", fuzz_opts.seed)->capture_default_str();
  fuzz_cmd->add_option("--n", fuzz_opts.processes, "Processes")->capture_default_str()->check(CLI::Range(1, 16));
  fuzz_cmd->add_option("--cap-ops", fuzz_opts.cap_ops, "Operations per schedule")->capture_default_str();
  fuzz_cmd->add_option("--bc", fuzz_opts.base, "Snapshot base counter")->check(CLI::IsMember({"locked", "ivl"}));
  fuzz_cmd->add_option("--out", fuzz_opts.out, "Write the first violating schedule here");

  CheckOptions check_opts;
  auto* check_cmd = app.add_subcommand("check", "Check a history file");
  check_cmd->add_option("file", check_opts.file)->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--spec", check_opts.spec, "counter, parameter, pcm or snapshot")->capture_default_str();
  check_cmd->add_option("--w", check_opts.width, "Sketch width")->capture_default_str();
  check_cmd->add_option("--d", check_opts.depth, "Sketch depth")->capture_default_str();
  check_cmd->add_option("--seed", check_opts.seed, "Sketch hash seed")->capture_default_str();
  check_cmd->add_option("--n", check_opts.components, "Snapshot components (default: highest process id)");
  check_cmd->add_option("--cap-ops", check_opts.cap_ops, "Checker operation cap");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Shared accesses per operation and update latency");
  bench_cmd->add_option("--n", bench_opts.ns, "Process counts")->capture_default_str();
  bench_cmd->add_option("--ops", bench_opts.ops, "Updates per thread in the latency runs")->capture_default_str();
  bench_cmd->add_option("--threads", bench_opts.max_threads, "Largest thread count in the latency runs")->capture_default_str();

  ValidateOptions val_opts;
  auto* val_cmd = app.add_subcommand("cm-validate", "Measure CountMin error rates");
  val_cmd->add_option("--alpha", val_opts.config.alpha)->capture_default_str();
  val_cmd->add_option("--delta", val_opts.config.delta)->capture_default_str();
  val_cmd->add_option("--trials", val_opts.config.trials)->capture_default_str();
  val_cmd->add_option("--seed", val_opts.config.seed)->capture_default_str();
  val_cmd->add_option("--stream", val_opts.config.stream_length, "Stream length")->capture_default_str();
  val_cmd->add_option("--alphabet", val_opts.config.alphabet)->capture_default_str();
  val_cmd->add_option("--zipf", val_opts.config.zipf_exponent, "Zipf exponent")->capture_default_str();
  val_cmd->add_option("--writers", val_opts.config.writers)->capture_default_str()->check(CLI::Range(1, 64));
  val_cmd->add_flag("--sequential-only", val_opts.sequential_only);
  val_cmd->add_option("--csv", val_opts.csv, "Per-trial outcomes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*replay_cmd) code = cmd_replay(replay_opts);
    if (*fuzz_cmd) code = cmd_fuzz(fuzz_opts);
    if (*check_cmd) code = cmd_check(check_opts);
    if (*bench_cmd) code = cmd_bench(bench_opts);
    if (*val_cmd) code = cmd_cm_validate(val_opts);
  } catch (const StateSpaceTooLarge& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const ScheduleError& e) {
    std::cerr << "schedule: " << e.what() << '\n';
    return kUsage;
  } catch (const MalformedHistory& e) {
    std::cerr << "history: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
