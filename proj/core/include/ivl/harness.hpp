#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ivl/history.hpp"
#include "ivl/rng.hpp"
#include "ivl/schedule.hpp"
#include "ivl/step_object.hpp"

namespace ivl {

using ObjectFactory = std::function<std::unique_ptr<StepObject>(const ObjectDecl&)>;

/// Builds each declared object with make_step_object.
std::unique_ptr<StepObject> default_factory(const ObjectDecl& decl);

/// Executes schedule entries one at a time against freshly built objects and records the
/// resulting history. Responses are emitted right after an operation's last step; an
/// operation that needs no shared access responds immediately after its invocation.
class Replayer {
 public:
  explicit Replayer(const Schedule& schedule, const ObjectFactory& factory = default_factory);

  /// Throws ScheduleError for an ill-formed entry (step without an in-flight operation,
  /// invoke while one is in flight, unknown process or object).
  void apply(const ScheduleEntry& entry);

  bool in_flight(ProcessId p) const;
  /// Steps the in-flight operation of `p` has taken so far.
  int steps_taken(ProcessId p) const;
  std::size_t processes() const { return processes_; }

  StepObject& object(const std::string& name);
  const History& history() const { return history_; }
  History take_history() { return std::move(history_); }

 private:
  struct Flight {
    std::string object;
    Operation op;
    std::unique_ptr<OpStepper> stepper;
  };

  void respond(ProcessId p);
  Flight& flight_of(ProcessId p);

  std::size_t processes_;
  std::map<std::string, std::unique_ptr<StepObject>> objects_;
  std::map<int, Flight> flights_;
  std::vector<Event> events_;
  History history_;
  std::uint64_t next_seq_ = 1;
};

/// Deterministic: the same schedule and factory give the same history.
History replay(const Schedule& schedule, const ObjectFactory& factory = default_factory);

/// Workload shape for random schedules and stress runs.
struct FuzzParams {
  std::size_t processes = 3;
  std::size_t ops = 8;
  double update_fraction = 0.6;
  std::int64_t max_value = 10;  // counters 1..max; parameter and naive adder +-(1..max)
  std::vector<std::string> alphabet = {"a", "b", "c"};
  /// Once every operation has been invoked, the chance per move of stopping with the
  /// in-flight operations left pending.
  double stop_probability = 0.1;
  std::vector<ObjectDecl> objects;
};

/// One object named "x" of the given kind (PCM: 4 x 2, seed 1).
FuzzParams fuzz_params_for(ObjectKind kind, std::size_t processes, std::size_t ops);

/// Random operation for an object of `kind`, drawn from `rng`.
Operation random_operation(ObjectKind kind, const FuzzParams& params, Rng& rng);

/// Random well-formed schedule: at each move, uniformly either invoke on an idle process
/// (while the operation budget lasts) or step a busy one. Reproducible from the seed.
Schedule random_schedule(std::uint64_t seed, const FuzzParams& params, const ObjectFactory& factory = default_factory);

struct Invocation {
  std::string object;
  Operation op;
};

/// Next operation for a process in a stress run; nullopt ends that process's run.
using Workload = std::function<std::optional<Invocation>(ProcessId p, std::size_t index)>;

/// Random operations on object "x", `ops_per_process` each, from per-process seeds.
Workload random_workload(ObjectKind kind, const FuzzParams& params, std::uint64_t seed, std::size_t ops_per_process);

struct StressConfig {
  std::size_t threads = 2;
  /// Zero runs until every workload ends.
  std::chrono::milliseconds duration{0};
};

/// Runs `threads` real threads, thread t acting as process t + 1, against the named
/// objects. Invocations and responses are ordered by a global atomic ticket taken just
/// before the first step and just after the last, so the history is well-formed but not
/// reproducible.
History stress_run(std::map<std::string, StepObject*> objects, const StressConfig& config, const Workload& workload);
History stress_run(StepObject& object, const StressConfig& config, const Workload& workload);

}  // namespace ivl
