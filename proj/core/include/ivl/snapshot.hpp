#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ivl/objects.hpp"
#include "ivl/value.hpp"

namespace ivl {

/// Current counter sum without touching the access tallies.
inline std::uint64_t counter_sum(const IvlCounter& c) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < c.processes(); ++i) s += c.peek(i);
  return s;
}
inline std::uint64_t counter_sum(const LockedCounter& c) { return c.peek(); }

/// Binary snapshot from a batched counter. Component i (0-based, owned by process i + 1)
/// lives in bit i of the counter's sum: a 0 -> 1 flip adds 2^i, a 1 -> 0 flip adds
/// 2^n - 2^i, which carries into bit n and leaves bits below n as the component values.
/// A scan is one counter read.
///
/// `Counter` is IvlCounter or LockedCounter. The snapshot is linearizable when the counter
/// is; with IvlCounter it is only an experiment.
template <typename Counter>
class BinarySnapshot {
 public:
  /// Components beyond this would let sums outgrow 64 bits within realistic runs
  /// (each 1 -> 0 flip adds up to 2^n; 2^16 * 2^40 operations stays below 2^64).
  static constexpr std::size_t kMaxComponents = 16;

  class Update {
   public:
    bool step() {
      if (!inner_) throw StepError("update already complete");
      bool finished = inner_->step();
      steps_ = inner_->steps();
      if (finished) inner_.reset();
      return finished;
    }
    bool done() const { return !inner_.has_value(); }
    int steps() const { return steps_; }

   private:
    friend BinarySnapshot;
    Update() = default;
    explicit Update(typename Counter::Update inner) : inner_(inner) {}

    std::optional<typename Counter::Update> inner_;
    int steps_ = 0;
  };

  class Scan {
   public:
    bool step() { return inner_.step(); }
    bool done() const { return inner_.done(); }
    int steps() const { return inner_.steps(); }
    BitVector result() const {
      const std::uint64_t sum = inner_.result();
      BitVector bits(components_, 0);
      for (std::size_t i = 0; i < components_; ++i) bits[i] = static_cast<std::uint8_t>((sum >> i) & 1u);
      return bits;
    }

   private:
    friend BinarySnapshot;
    Scan(typename Counter::Read inner, std::size_t components) : inner_(inner), components_(components) {}

    typename Counter::Read inner_;
    std::size_t components_;
  };

  explicit BinarySnapshot(std::size_t components) : counter_(components), local_(components, 0) {
    if (components == 0 || components > kMaxComponents) throw std::invalid_argument("binary snapshot supports 1..16 components");
  }

  /// Skips (zero steps) when the component already holds `bit`.
  Update begin_update(ProcessId p, std::int64_t bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("snapshot updates take a bit");
    if (p.value < 1 || p.slot() >= local_.size()) throw std::out_of_range("process has no snapshot component");
    auto& mine = local_[p.slot()];
    if (mine == bit) return Update();
    mine = static_cast<std::uint8_t>(bit);
    const auto i = p.slot();
    const std::uint64_t delta = bit == 1 ? (std::uint64_t{1} << i) : (std::uint64_t{1} << components()) - (std::uint64_t{1} << i);
    if (counter_sum(counter_) > std::numeric_limits<std::int64_t>::max() - delta) throw std::overflow_error("snapshot counter overflow");
    return Update(counter_.begin_update(p, static_cast<std::int64_t>(delta)));
  }

  Scan begin_scan(ProcessId p) { return Scan(counter_.begin_read(p), components()); }

  void update(ProcessId p, std::int64_t bit) {
    auto op = begin_update(p, bit);
    while (!op.done()) op.step();
  }

  BitVector scan(ProcessId p) {
    auto op = begin_scan(p);
    while (!op.step()) {
    }
    return op.result();
  }

  std::size_t components() const { return local_.size(); }
  /// Process-local component values (v_i).
  const std::vector<std::uint8_t>& local_bits() const { return local_; }
  const Counter& counter() const { return counter_; }
  AccessTally tally() const { return counter_.tally(); }

 private:
  Counter counter_;
  std::vector<std::uint8_t> local_;
};

}  // namespace ivl
