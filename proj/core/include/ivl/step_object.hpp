#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivl/history.hpp"
#include "ivl/shared_memory.hpp"
#include "ivl/spec.hpp"

namespace ivl {

enum class ObjectKind { Counter, Parameter, NaiveAdder, Pcm, Snapshot, LockedCounter };

enum class SnapshotBase { Locked, Ivl };

std::string_view to_string(ObjectKind kind);
ObjectKind parse_object_kind(std::string_view text);

/// Everything needed to build one object instance.
struct ObjectConfig {
  ObjectKind kind = ObjectKind::Counter;
  std::size_t processes = 1;
  // CountMin
  std::size_t width = 4;
  std::size_t depth = 2;
  std::uint64_t seed = 0;
  std::map<std::string, std::vector<std::size_t>> pinned_hashes;  // overrides the seed when non-empty
  bool identity_hashes = false;                                   // key mod width; overrides the seed
  std::vector<std::vector<std::uint64_t>> initial;                // starting matrix, rows x width
  // Snapshot
  SnapshotBase base = SnapshotBase::Locked;

  SketchHashes hashes() const;
};

/// The sequential specification a history of this object is checked against.
SequentialSpec spec_for(const ObjectConfig& config);

/// One in-flight operation.
class OpStepper {
 public:
  virtual ~OpStepper() = default;
  virtual bool done() const = 0;
  /// One shared-memory access; returns done().
  virtual bool step() = 0;
  virtual std::optional<Value> result() const = 0;
  virtual int steps() const = 0;
};

/// Type-erased concurrent object driven by the harness.
class StepObject {
 public:
  virtual ~StepObject() = default;
  virtual std::unique_ptr<OpStepper> begin(ProcessId p, const Operation& op) = 0;
  virtual AccessTally tally() const = 0;
  virtual const ObjectConfig& config() const = 0;
};

std::unique_ptr<StepObject> make_step_object(const ObjectConfig& config);

}  // namespace ivl
