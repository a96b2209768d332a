#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivl/value.hpp"

namespace ivl {

/// Shared-memory access counts.
struct AccessTally {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t rmws = 0;  // atomic read-modify-write (increments)

  std::uint64_t total() const { return reads + writes + rmws; }

  AccessTally& operator+=(const AccessTally& o) {
    reads += o.reads;
    writes += o.writes;
    rmws += o.rmws;
    return *this;
  }
  friend AccessTally operator-(AccessTally a, const AccessTally& b) {
    a.reads -= b.reads;
    a.writes -= b.writes;
    a.rmws -= b.rmws;
    return a;
  }
  friend bool operator==(const AccessTally&, const AccessTally&) = default;
};

class OwnershipViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-process access counters, one cache line each so concurrent processes do not
/// contend on the instrumentation itself. Index 0 collects accesses by unregistered ids.
class TallyBoard {
 public:
  explicit TallyBoard(std::size_t processes) : slots_(processes + 1) {}

  void read(ProcessId p) { slot(p).reads.fetch_add(1, std::memory_order_relaxed); }
  void write(ProcessId p) { slot(p).writes.fetch_add(1, std::memory_order_relaxed); }
  void rmw(ProcessId p) { slot(p).rmws.fetch_add(1, std::memory_order_relaxed); }

  AccessTally total() const;
  AccessTally of(ProcessId p) const;

 private:
  struct alignas(64) Slot {
    std::atomic<std::uint64_t> reads{0};
    std::atomic<std::uint64_t> writes{0};
    std::atomic<std::uint64_t> rmws{0};
  };

  Slot& slot(ProcessId p) {
    auto i = static_cast<std::size_t>(p.value);
    return slots_[i < slots_.size() ? i : 0];
  }

  std::vector<Slot> slots_;
};

/// Array of single-writer multi-reader atomic registers. Register i is owned by process
/// i + 1; a write by anyone else throws OwnershipViolation.
template <typename T>
class SwmrRegisters {
 public:
  explicit SwmrRegisters(std::size_t processes) : cells_(processes), tally_(processes) {}

  T read(ProcessId reader, std::size_t index) {
    tally_.read(reader);
    return cells_.at(index).value.load(std::memory_order_seq_cst);
  }

  void write(ProcessId writer, std::size_t index, T value) {
    if (writer.value < 1 || writer.slot() != index)
      throw OwnershipViolation("process " + std::to_string(writer.value) + " wrote register " + std::to_string(index));
    tally_.write(writer);
    cells_.at(index).value.store(value, std::memory_order_seq_cst);
  }

  /// Uninstrumented load for invariant checks.
  T peek(std::size_t index) const { return cells_.at(index).value.load(std::memory_order_seq_cst); }

  std::size_t size() const { return cells_.size(); }
  AccessTally tally() const { return tally_.total(); }

 private:
  struct alignas(64) Cell {
    std::atomic<T> value{};
  };

  std::vector<Cell> cells_;
  TallyBoard tally_;
};

}  // namespace ivl
