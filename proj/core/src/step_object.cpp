#include "ivl/step_object.hpp"

#include <stdexcept>

#include "ivl/objects.hpp"
#include "ivl/snapshot.hpp"

namespace ivl {

std::string_view to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Counter: return "counter";
    case ObjectKind::Parameter: return "parameter";
    case ObjectKind::NaiveAdder: return "naive-adder";
    case ObjectKind::Pcm: return "pcm";
    case ObjectKind::Snapshot: return "snapshot";
    case ObjectKind::LockedCounter: return "locked-counter";
  }
  return "?";
}

ObjectKind parse_object_kind(std::string_view text) {
  for (auto k : {ObjectKind::Counter, ObjectKind::Parameter, ObjectKind::NaiveAdder, ObjectKind::Pcm, ObjectKind::Snapshot,
                 ObjectKind::LockedCounter})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown object kind: " + std::string(text));
}

SketchHashes ObjectConfig::hashes() const {
  if (!pinned_hashes.empty()) return SketchHashes::pinned(width, depth, pinned_hashes);
  if (identity_hashes) return SketchHashes::identity(width, depth);
  return SketchHashes::seeded(seed, width, depth);
}

SequentialSpec spec_for(const ObjectConfig& config) {
  switch (config.kind) {
    case ObjectKind::Counter:
    case ObjectKind::LockedCounter: return SequentialSpec::counter();
    case ObjectKind::Parameter:
    case ObjectKind::NaiveAdder: return SequentialSpec::parameter();
    case ObjectKind::Pcm: return SequentialSpec::count_min(config.hashes(), config.initial);
    case ObjectKind::Snapshot: return SequentialSpec::snapshot(config.processes);
  }
  throw std::invalid_argument("unknown object kind");
}

namespace {

std::int64_t int_arg(const Operation& op) {
  if (const auto* i = std::get_if<std::int64_t>(&op.arg)) return *i;
  throw std::invalid_argument("operation needs an integer argument");
}

double real_arg(const Operation& op) {
  if (auto d = as_number(op.arg)) return *d;
  throw std::invalid_argument("operation needs a numeric argument");
}

[[noreturn]] void unsupported(ObjectKind kind, const Operation& op) {
  throw std::invalid_argument(std::string(to_string(kind)) + " does not support " + std::string(to_string(op.kind)));
}

template <typename Machine>
class MachineStepper final : public OpStepper {
 public:
  template <typename Convert>
  MachineStepper(Machine m, Convert convert) : machine_(std::move(m)), convert_(convert) {}

  bool done() const override { return machine_.done(); }
  bool step() override { return machine_.step(); }
  int steps() const override { return machine_.steps(); }
  std::optional<Value> result() const override { return convert_(machine_); }

 private:
  Machine machine_;
  std::optional<Value> (*convert_)(const Machine&);
};

template <typename Machine>
std::unique_ptr<OpStepper> no_result(Machine m) {
  return std::make_unique<MachineStepper<Machine>>(std::move(m), +[](const Machine&) -> std::optional<Value> { return std::nullopt; });
}

template <typename Machine>
std::unique_ptr<OpStepper> int_result(Machine m) {
  return std::make_unique<MachineStepper<Machine>>(
      std::move(m), +[](const Machine& x) -> std::optional<Value> { return static_cast<std::int64_t>(x.result()); });
}

template <typename Machine>
std::unique_ptr<OpStepper> real_result(Machine m) {
  return std::make_unique<MachineStepper<Machine>>(
      std::move(m), +[](const Machine& x) -> std::optional<Value> { return static_cast<double>(x.result()); });
}

template <typename Machine>
std::unique_ptr<OpStepper> bits_result(Machine m) {
  return std::make_unique<MachineStepper<Machine>>(std::move(m), +[](const Machine& x) -> std::optional<Value> { return x.result(); });
}

class StepObjectBase : public StepObject {
 public:
  explicit StepObjectBase(ObjectConfig config) : config_(std::move(config)) {}
  const ObjectConfig& config() const override { return config_; }

 protected:
  ObjectConfig config_;
};

template <typename Counter>
class CounterObject final : public StepObjectBase {
 public:
  explicit CounterObject(ObjectConfig c) : StepObjectBase(std::move(c)), obj_(config_.processes) {}

  std::unique_ptr<OpStepper> begin(ProcessId p, const Operation& op) override {
    if (op.kind == OpKind::Update) return no_result(obj_.begin_update(p, int_arg(op)));
    if (op.kind == OpKind::Read) return int_result(obj_.begin_read(p));
    unsupported(config_.kind, op);
  }
  AccessTally tally() const override { return obj_.tally(); }

 private:
  Counter obj_;
};

template <typename RealObject>
class RealObjectAdapter final : public StepObjectBase {
 public:
  explicit RealObjectAdapter(ObjectConfig c) : StepObjectBase(std::move(c)), obj_(config_.processes) {}

  std::unique_ptr<OpStepper> begin(ProcessId p, const Operation& op) override {
    if (op.kind == OpKind::Update) return no_result(obj_.begin_update(p, real_arg(op)));
    if (op.kind == OpKind::Read) return real_result(obj_.begin_read(p));
    unsupported(config_.kind, op);
  }
  AccessTally tally() const override { return obj_.tally(); }

 private:
  RealObject obj_;
};

class PcmObject final : public StepObjectBase {
 public:
  explicit PcmObject(ObjectConfig c) : StepObjectBase(std::move(c)), obj_(config_.hashes(), config_.processes, config_.initial) {}

  std::unique_ptr<OpStepper> begin(ProcessId p, const Operation& op) override {
    if (op.kind == OpKind::Update) return no_result(obj_.begin_update(p, op.arg));
    if (op.kind == OpKind::Query) return int_result(obj_.begin_query(p, op.arg));
    unsupported(config_.kind, op);
  }
  AccessTally tally() const override { return obj_.tally(); }

 private:
  PcmSketch obj_;
};

template <typename Counter>
class SnapshotObject final : public StepObjectBase {
 public:
  explicit SnapshotObject(ObjectConfig c) : StepObjectBase(std::move(c)), obj_(config_.processes) {}

  std::unique_ptr<OpStepper> begin(ProcessId p, const Operation& op) override {
    if (op.kind == OpKind::Update) return no_result(obj_.begin_update(p, int_arg(op)));
    if (op.kind == OpKind::Scan) return bits_result(obj_.begin_scan(p));
    unsupported(config_.kind, op);
  }
  AccessTally tally() const override { return obj_.tally(); }

 private:
  BinarySnapshot<Counter> obj_;
};

}  // namespace

std::unique_ptr<StepObject> make_step_object(const ObjectConfig& config) {
  switch (config.kind) {
    case ObjectKind::Counter: return std::make_unique<CounterObject<IvlCounter>>(config);
    case ObjectKind::LockedCounter: return std::make_unique<CounterObject<LockedCounter>>(config);
    case ObjectKind::Parameter: return std::make_unique<RealObjectAdapter<IvlParameter>>(config);
    case ObjectKind::NaiveAdder: return std::make_unique<RealObjectAdapter<NaiveSignedAdder>>(config);
    case ObjectKind::Pcm: return std::make_unique<PcmObject>(config);
    case ObjectKind::Snapshot:
      if (config.base == SnapshotBase::Ivl) return std::make_unique<SnapshotObject<IvlCounter>>(config);
      return std::make_unique<SnapshotObject<LockedCounter>>(config);
  }
  throw std::invalid_argument("unknown object kind");
}

}  // namespace ivl
