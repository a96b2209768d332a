#include <gtest/gtest.h>

#include "ivl/rng.hpp"
#include "ivl/snapshot.hpp"

namespace ivl {
namespace {

// Invariant 1: sum = c * 2^n + sum_i v_i 2^i for some c >= 0.
template <typename Counter>
void expect_invariant(const BinarySnapshot<Counter>& s) {
  const auto n = s.components();
  std::uint64_t low = 0;
  for (std::size_t i = 0; i < n; ++i) low += std::uint64_t{s.local_bits()[i]} << i;
  const auto sum = counter_sum(s.counter());
  ASSERT_GE(sum, low);
  ASSERT_EQ((sum - low) % (std::uint64_t{1} << n), 0u) << "sum " << sum << " bits " << low;
}

TEST(BinarySnapshot, FirstFlipAddsPowerOfTwo) {
  BinarySnapshot<LockedCounter> s(3);
  s.update(ProcessId(2), 1);  // component 1
  EXPECT_EQ(counter_sum(s.counter()), 2u);
}

TEST(BinarySnapshot, ClearingCarriesIntoHighBits) {
  BinarySnapshot<LockedCounter> s(3);
  s.update(ProcessId(2), 1);
  s.update(ProcessId(2), 0);
  EXPECT_EQ(counter_sum(s.counter()), 8u);
  EXPECT_EQ(s.scan(ProcessId(1)), (BitVector{0, 0, 0}));
}

TEST(BinarySnapshot, RepeatedValueIsANoOp) {
  BinarySnapshot<IvlCounter> s(2);
  s.update(ProcessId(1), 1);
  const auto before = s.tally();
  auto op = s.begin_update(ProcessId(1), 1);
  EXPECT_TRUE(op.done());
  EXPECT_EQ(op.steps(), 0);
  EXPECT_EQ(s.tally(), before);
  EXPECT_EQ(counter_sum(s.counter()), 1u);
}

TEST(BinarySnapshot, FreshScanIsZero) {
  BinarySnapshot<LockedCounter> s(4);
  EXPECT_EQ(s.scan(ProcessId(3)), (BitVector{0, 0, 0, 0}));
}

TEST(BinarySnapshot, ScanExtractsBits) {
  BinarySnapshot<LockedCounter> s(3);
  s.update(ProcessId(1), 1);
  s.update(ProcessId(3), 1);
  EXPECT_EQ(s.scan(ProcessId(2)), (BitVector{1, 0, 1}));
}

TEST(BinarySnapshot, RejectsNonBitsAndBadSizes) {
  BinarySnapshot<LockedCounter> s(2);
  EXPECT_THROW(s.begin_update(ProcessId(1), 2), std::invalid_argument);
  EXPECT_THROW(s.begin_update(ProcessId(3), 1), std::out_of_range);
  EXPECT_THROW(BinarySnapshot<LockedCounter>(0), std::invalid_argument);
  EXPECT_THROW(BinarySnapshot<LockedCounter>(17), std::invalid_argument);
}

// Random sequential runs: the invariant after every step of every update, and every scan
// equal to the last bit written per component.
template <typename Counter>
void random_sequential_run(std::size_t n, std::uint64_t seed, int ops) {
  BinarySnapshot<Counter> s(n);
  BitVector last(n, 0);
  Rng rng(seed);
  for (int i = 0; i < ops; ++i) {
    const ProcessId p(static_cast<int>(rng.between(1, static_cast<std::int64_t>(n))));
    if (rng.chance(0.6)) {
      const auto bit = static_cast<std::int64_t>(rng.below(2));
      auto op = s.begin_update(p, bit);
      while (!op.done()) {
        op.step();
        if (op.done()) expect_invariant(s);
      }
      last[p.slot()] = static_cast<std::uint8_t>(bit);
      expect_invariant(s);
    } else {
      ASSERT_EQ(s.scan(p), last);
    }
  }
}

TEST(BinarySnapshot, InvariantOverRandomSequentialRunsLocked) {
  for (std::size_t n : {2u, 4u, 8u}) random_sequential_run<LockedCounter>(n, 100 + n, 10'000);
}

TEST(BinarySnapshot, InvariantOverRandomSequentialRunsIvlCounter) {
  for (std::size_t n : {2u, 4u, 8u, 16u}) random_sequential_run<IvlCounter>(n, 200 + n, 10'000);
}

TEST(BinarySnapshot, ScanIsOneCounterRead) {
  BinarySnapshot<IvlCounter> s(5);
  auto scan = s.begin_scan(ProcessId(1));
  int steps = 0;
  while (!scan.done()) {
    scan.step();
    ++steps;
  }
  EXPECT_EQ(steps, 5);
}

}  // namespace
}  // namespace ivl
