#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "ivl/hash_family.hpp"
#include "ivl/shared_memory.hpp"

// Concurrent objects as step machines. Each `begin_*` call returns an operation whose
// `step()` performs exactly one shared-memory access and returns true once the operation
// has completed; local computation happens inside the step that needs it. The blocking
// `update`/`read`/`query` members run an operation to completion.
//
// Objects may be shared by threads as long as each ProcessId is driven by one thread at a
// time. The deterministic harness drives them single-threaded, one step at a time.

namespace ivl {

class StepError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Adder over SWMR registers: update_i(v) reads and rewrites v[i]; read scans v[1..n] in
/// order and returns the sum. Generic in register type and sign policy so the batched
/// counter, the two real-valued adders of the parameter object and the naive signed adder
/// share one implementation.
template <typename T, bool AllowNegative>
class SwmrAdder {
 public:
  using Input = std::conditional_t<std::is_integral_v<T>, std::int64_t, double>;

  class Update {
   public:
    bool step() {
      switch (pc_) {
        case 0:
          seen_ = adder_->regs_.read(process_, process_.slot());
          pc_ = 1;
          return false;
        case 1:
          adder_->regs_.write(process_, process_.slot(), static_cast<T>(seen_ + delta_));
          pc_ = 2;
          return true;
        default:
          throw StepError("update already complete");
      }
    }
    bool done() const { return pc_ == 2; }
    int steps() const { return pc_; }

   private:
    friend SwmrAdder;
    Update(SwmrAdder& adder, ProcessId process, T delta) : adder_(&adder), process_(process), delta_(delta) {}

    SwmrAdder* adder_;
    ProcessId process_;
    T delta_;
    T seen_{};
    int pc_ = 0;
  };

  class Read {
   public:
    bool step() {
      if (done()) throw StepError("read already complete");
      sum_ += adder_->regs_.read(process_, next_++);
      return done();
    }
    bool done() const { return next_ == adder_->regs_.size(); }
    int steps() const { return static_cast<int>(next_); }
    T result() const { return sum_; }

   private:
    friend SwmrAdder;
    Read(SwmrAdder& adder, ProcessId process) : adder_(&adder), process_(process) {}

    SwmrAdder* adder_;
    ProcessId process_;
    std::size_t next_ = 0;
    T sum_{};
  };

  explicit SwmrAdder(std::size_t processes) : regs_(processes) {
    if (processes == 0) throw std::invalid_argument("need at least one process");
  }

  Update begin_update(ProcessId p, Input v) {
    check_process(p);
    if constexpr (!AllowNegative) {
      if (v < 0) throw std::invalid_argument("batched counter updates must be non-negative");
    }
    return Update(*this, p, static_cast<T>(v));
  }

  Read begin_read(ProcessId p) { return Read(*this, p); }

  void update(ProcessId p, Input v) {
    auto op = begin_update(p, v);
    while (!op.step()) {
    }
  }

  T read(ProcessId p) {
    auto op = begin_read(p);
    while (!op.step()) {
    }
    return op.result();
  }

  std::size_t processes() const { return regs_.size(); }
  T peek(std::size_t slot) const { return regs_.peek(slot); }
  AccessTally tally() const { return regs_.tally(); }

 private:
  void check_process(ProcessId p) const {
    if (p.value < 1 || p.slot() >= regs_.size()) throw std::out_of_range("process " + std::to_string(p.value) + " is not registered");
  }

  SwmrRegisters<T> regs_;
};

/// IVL batched counter.
using IvlCounter = SwmrAdder<std::uint64_t, false>;
/// Non-negative real adder (building block of IvlParameter).
using RealAdder = SwmrAdder<double, false>;
/// The batched counter algorithm run with signed arguments. Not IVL; kept as a foil.
using NaiveSignedAdder = SwmrAdder<double, true>;

/// Parameter object from two non-negative adders: positive updates go to `positive`,
/// negative ones (negated) to `negative`. A read scans positive, negative, positive,
/// negative and returns max(v1, v3) - max(v2, v4).
class IvlParameter {
 public:
  class Update {
   public:
    bool step() { return inner_.step(); }
    bool done() const { return inner_.done(); }
    int steps() const { return inner_.steps(); }

   private:
    friend IvlParameter;
    explicit Update(RealAdder::Update inner) : inner_(inner) {}
    RealAdder::Update inner_;
  };

  class Read {
   public:
    bool step();
    bool done() const { return phase_ == 4; }
    int steps() const { return steps_; }
    double result() const { return std::max(seen_[0], seen_[2]) - std::max(seen_[1], seen_[3]); }

   private:
    friend IvlParameter;
    Read(IvlParameter& obj, ProcessId p) : obj_(&obj), process_(p) {}

    IvlParameter* obj_;
    ProcessId process_;
    int phase_ = 0;
    int steps_ = 0;
    std::optional<RealAdder::Read> scan_;
    double seen_[4] = {0, 0, 0, 0};
  };

  explicit IvlParameter(std::size_t processes) : positive_(processes), negative_(processes) {}

  Update begin_update(ProcessId p, double v) {
    if (v >= 0) return Update(positive_.begin_update(p, v));
    return Update(negative_.begin_update(p, -1 * v));
  }
  Read begin_read(ProcessId p) { return Read(*this, p); }

  void update(ProcessId p, double v);
  double read(ProcessId p);

  const RealAdder& positive() const { return positive_; }
  const RealAdder& negative() const { return negative_; }
  std::size_t processes() const { return positive_.processes(); }
  AccessTally tally() const;

 private:
  RealAdder positive_;
  RealAdder negative_;
};

/// Parallel CountMin: the sequential sketch's loops with each counter incremented and read
/// atomically, no snapshot. Counters are multi-writer atomic words; overflow throws.
class PcmSketch {
 public:
  class Update {
   public:
    bool step();
    bool done() const { return row_ == sketch_->depth(); }
    int steps() const { return static_cast<int>(row_); }

   private:
    friend PcmSketch;
    Update(PcmSketch& s, ProcessId p, Arg item) : sketch_(&s), process_(p), item_(std::move(item)) {}

    PcmSketch* sketch_;
    ProcessId process_;
    Arg item_;
    std::size_t row_ = 0;
  };

  class Query {
   public:
    bool step();
    bool done() const { return row_ == sketch_->depth(); }
    int steps() const { return static_cast<int>(row_); }
    std::uint64_t result() const { return min_; }

   private:
    friend PcmSketch;
    Query(PcmSketch& s, ProcessId p, Arg item) : sketch_(&s), process_(p), item_(std::move(item)) {}

    PcmSketch* sketch_;
    ProcessId process_;
    Arg item_;
    std::size_t row_ = 0;
    std::uint64_t min_ = std::numeric_limits<std::uint64_t>::max();
  };

  PcmSketch(SketchHashes hashes, std::size_t processes, const std::vector<std::vector<std::uint64_t>>& initial = {});

  Update begin_update(ProcessId p, Arg item) { return Update(*this, p, std::move(item)); }
  Query begin_query(ProcessId p, Arg item) { return Query(*this, p, std::move(item)); }

  void update(ProcessId p, const Arg& item);
  std::uint64_t query(ProcessId p, const Arg& item);

  std::size_t width() const { return hashes_.width(); }
  std::size_t depth() const { return hashes_.depth(); }
  const SketchHashes& hashes() const { return hashes_; }
  std::uint64_t peek(std::size_t row, std::size_t column) const { return cells_[row * width() + column].load(); }
  AccessTally tally() const { return tally_.total(); }

 private:
  std::atomic<std::uint64_t>& cell(std::size_t row, const Arg& item) { return cells_[row * width() + hashes_.bucket(row, item)]; }

  SketchHashes hashes_;
  std::vector<std::atomic<std::uint64_t>> cells_;
  TallyBoard tally_;
};

/// Linearizable baseline: one accumulator behind a mutex. Each operation is a single step
/// (acquire, access, release).
class LockedCounter {
 public:
  class Update {
   public:
    bool step();
    bool done() const { return done_; }
    int steps() const { return done_ ? 1 : 0; }

   private:
    friend LockedCounter;
    Update(LockedCounter& c, ProcessId p, std::uint64_t delta) : counter_(&c), process_(p), delta_(delta) {}

    LockedCounter* counter_;
    ProcessId process_;
    std::uint64_t delta_;
    bool done_ = false;
  };

  class Read {
   public:
    bool step();
    bool done() const { return done_; }
    int steps() const { return done_ ? 1 : 0; }
    std::uint64_t result() const { return value_; }

   private:
    friend LockedCounter;
    Read(LockedCounter& c, ProcessId p) : counter_(&c), process_(p) {}

    LockedCounter* counter_;
    ProcessId process_;
    std::uint64_t value_ = 0;
    bool done_ = false;
  };

  explicit LockedCounter(std::size_t processes) : processes_(processes), tally_(processes) {}

  Update begin_update(ProcessId p, std::int64_t v) {
    if (v < 0) throw std::invalid_argument("batched counter updates must be non-negative");
    return Update(*this, p, static_cast<std::uint64_t>(v));
  }
  Read begin_read(ProcessId p) { return Read(*this, p); }

  void update(ProcessId p, std::int64_t v);
  std::uint64_t read(ProcessId p);

  std::size_t processes() const { return processes_; }
  std::uint64_t peek() const;
  AccessTally tally() const { return tally_.total(); }

 private:
  std::size_t processes_;
  mutable std::mutex mu_;
  std::uint64_t value_ = 0;
  TallyBoard tally_;
};

}  // namespace ivl
