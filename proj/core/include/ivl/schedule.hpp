#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ivl/history.hpp"
#include "ivl/step_object.hpp"

namespace ivl {

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectDecl {
  std::string name;
  ObjectConfig config;
};

/// Start an operation on `process`.
struct InvokeEntry {
  ProcessId process;
  std::string object;
  Operation op;
};

/// One shared-memory access by `process`'s in-flight operation.
struct StepEntry {
  ProcessId process;
};

/// Shorthand for as many StepEntry as `process`'s in-flight operation still needs. Lets one
/// schedule describe the same interleaving for objects whose operations take different
/// numbers of steps.
struct RunEntry {
  ProcessId process;
};

using ScheduleEntry = std::variant<InvokeEntry, StepEntry, RunEntry>;

/// The order in which processes invoke operations and take steps.
struct Schedule {
  std::string name;
  std::size_t processes = 1;
  std::uint64_t seed = 0;
  std::vector<ObjectDecl> objects;
  std::vector<ScheduleEntry> entries;

  const ObjectDecl& object(std::string_view name) const;
};

// Schedule file grammar (line oriented, '#' starts a comment line):
//
//   name <name>
//   processes <n>
//   seed <s>
//   object <name> <kind> [width=<w>] [depth=<d>] [seed=<s>] [base=locked|ivl]
//   hash <object> <symbol> <bucket row 0> <bucket row 1> ...     (0-based buckets)
//   init <object> <row> <c0> <c1> ...                            (0-based row)
//   INVOKE <process> <object> <update|read|query|scan> <arg|->
//   STEP <process>
//   RUN <process>
//
// Object declarations take `processes` as their process count.

Schedule parse_schedule(std::string_view text);
Schedule read_schedule_file(const std::filesystem::path& path);
std::string to_text(const Schedule& s);

/// Checked-in schedules reproducing the hand-built executions:
///   adder-ivl-fig        IVL batched counter, reader sees a later update and misses an earlier one
///   negative-values-fig  naive signed adder, reader returns -1 outside [0, 1]
///   pcm-example          parallel CountMin, queries return 2 and 2: IVL but not linearizable
///   parameter-split-scan IVL parameter object, scans split around two updates (see schedules/)
std::vector<std::string> golden_schedule_names();
Schedule golden_schedule(std::string_view name);

}  // namespace ivl
