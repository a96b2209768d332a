#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ivl/countmin.hpp"
#include "ivl/history.hpp"

namespace ivl {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Batched counter: update(v >= 0) adds v; read returns the sum of preceding updates.
struct CounterSpec {};

/// Parameter object: update(v) for any real v; read returns the sum.
struct ParameterSpec {};

/// CountMin(c): the sequential sketch under fixed hash functions and starting matrix.
struct CountMinSpec {
  SketchHashes hashes;
  std::vector<std::vector<std::uint64_t>> initial;  // empty means all zeros
};

/// Binary snapshot over n components: process p's update(bit) sets component p - 1;
/// scan returns all components.
struct SnapshotSpec {
  std::size_t components = 0;
};

/// Running state of a sequential specification. `apply` returns the operation's unique
/// return value (nothing for updates).
class SpecState {
 public:
  using Repr = std::variant<std::int64_t, double, CountMinSketch, BitVector>;

  explicit SpecState(Repr repr) : repr_(std::move(repr)) {}

  std::optional<Value> apply(ProcessId process, const Operation& op);

  /// Appends a byte string that is equal for equal states.
  void append_key(std::string& out) const;

 private:
  Repr repr_;
};

/// A deterministic sequential specification: exactly one return assignment per sequential
/// skeleton history.
class SequentialSpec {
 public:
  using Kind = std::variant<CounterSpec, ParameterSpec, CountMinSpec, SnapshotSpec>;

  SequentialSpec(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  static SequentialSpec counter() { return Kind{CounterSpec{}}; }
  static SequentialSpec parameter() { return Kind{ParameterSpec{}}; }
  static SequentialSpec count_min(std::uint64_t seed, std::size_t width, std::size_t depth);
  static SequentialSpec count_min(SketchHashes hashes, std::vector<std::vector<std::uint64_t>> initial = {});
  static SequentialSpec snapshot(std::size_t components) { return Kind{SnapshotSpec{components}}; }

  SpecState initial_state() const;

  /// Queries return values from a totally ordered domain (false for the snapshot).
  bool quantitative() const { return !std::holds_alternative<SnapshotSpec>(kind_); }

  /// Comparison tolerance for this object's return values.
  double tolerance() const { return std::holds_alternative<ParameterSpec>(kind_) ? kRealTolerance : 0.0; }

  std::string name() const;
  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Sequential specifications per object name. A binding built from a single spec applies it
/// to every object (each object keeps its own state).
class SpecBinding {
 public:
  SpecBinding(SequentialSpec spec) : fallback_(std::move(spec)) {}  // NOLINT(google-explicit-constructor)
  explicit SpecBinding(std::map<std::string, SequentialSpec> per_object) : per_object_(std::move(per_object)) {}

  const SequentialSpec& for_object(const std::string& object) const;

 private:
  std::optional<SequentialSpec> fallback_;
  std::map<std::string, SequentialSpec> per_object_;
};

/// τ: fills in the return values of a sequential skeleton history. Throws SpecError when the
/// input is not sequential or holds operations the object does not support.
History tau(const SpecBinding& spec, const History& sequential_skeleton);

History tau_counter(const History& s);
History tau_parameter(const History& s);
History tau_countmin(std::uint64_t seed, std::size_t width, std::size_t depth, const History& s);

}  // namespace ivl
