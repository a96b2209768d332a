#pragma once

#include <cstdint>
#include <vector>

#include "ivl/history.hpp"

// Bounds that a history of a monotone object implies on its own, without enumerating
// linearizations. Linearizing a query before every update concurrent with it gives the
// smallest value any linearization can give it; linearizing it after all of them gives the
// largest. These scale to stress-run histories where the exact checker cannot.

namespace ivl {

/// Read of a batched counter: sum of the updates completed before the read was invoked,
/// and of the updates invoked before it responded.
struct ReadInterval {
  std::size_t op_id = 0;
  ProcessId process;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t ret = 0;

  bool contains_ret() const { return lo <= ret && ret <= hi; }
};

/// One interval per responded read. Updates must carry integer arguments.
std::vector<ReadInterval> counter_read_intervals(const History& h);

/// Query of a CountMin-style sketch for one item.
struct FrequencyInterval {
  std::size_t op_id = 0;
  ProcessId process;
  Arg item;
  std::uint64_t f_start = 0;      // updates of the item completed before the invoke
  std::uint64_t f_end = 0;        // updates of the item invoked before the response
  std::uint64_t stream_end = 0;   // updates of any item invoked before the response
  std::uint64_t ret = 0;
};

/// One interval per responded query, in response order.
std::vector<FrequencyInterval> frequency_intervals(const History& h);

}  // namespace ivl
