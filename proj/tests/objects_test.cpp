#include <gtest/gtest.h>

#include <thread>

#include "ivl/objects.hpp"
#include "ivl/step_object.hpp"

namespace ivl {
namespace {

const ProcessId p1(1), p2(2), p3(3);

TEST(SwmrRegisters, OnlyTheOwnerWrites) {
  SwmrRegisters<std::uint64_t> regs(3);
  regs.write(p2, 1, 9);
  EXPECT_EQ(regs.read(p1, 1), 9u);
  EXPECT_THROW(regs.write(p1, 1, 4), OwnershipViolation);
  EXPECT_EQ(regs.tally(), (AccessTally{1, 1, 0}));
}

TEST(IvlCounter, UpdateIsTwoStepsReadIsN) {
  for (std::size_t n : {1u, 2u, 5u, 32u}) {
    IvlCounter c(n);
    auto u = c.begin_update(p1, 4);
    EXPECT_FALSE(u.step());
    EXPECT_TRUE(u.step());
    EXPECT_EQ(u.steps(), 2);
    auto r = c.begin_read(p1);
    int steps = 0;
    while (!r.done()) {
      r.step();
      ++steps;
    }
    EXPECT_EQ(steps, static_cast<int>(n));
    EXPECT_EQ(r.result(), 4u);
    EXPECT_EQ(c.tally().total(), 2 + n);
  }
}

TEST(IvlCounter, RejectsNegativeUpdatesAndUnknownProcesses) {
  IvlCounter c(2);
  EXPECT_THROW(c.begin_update(p1, -1), std::invalid_argument);
  EXPECT_THROW(c.begin_update(p3, 1), std::out_of_range);
}

TEST(IvlCounter, StepPastCompletionThrows) {
  IvlCounter c(1);
  auto u = c.begin_update(p1, 1);
  u.step();
  u.step();
  EXPECT_THROW(u.step(), StepError);
}

TEST(IvlCounter, ReadSeesPartialProgress) {
  IvlCounter c(3);
  auto r = c.begin_read(p3);
  r.step();  // v[1] = 0
  c.update(p1, 3);
  c.update(p2, 7);
  r.step();
  r.step();
  EXPECT_EQ(r.result(), 7u);
  EXPECT_EQ(c.read(p3), 10u);
}

TEST(IvlCounter, ThreadsSumCorrectly) {
  constexpr int kThreads = 4;
  constexpr int kOps = 20'000;
  IvlCounter c(kThreads);
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t)
    pool.emplace_back([&, t] {
      for (int i = 0; i < kOps; ++i) c.update(ProcessId(t + 1), 1);
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(c.read(p1), static_cast<std::uint64_t>(kThreads * kOps));
}

TEST(NaiveSignedAdder, ReturnsOutOfBoundsValue) {
  NaiveSignedAdder a(3);
  auto r = a.begin_read(p3);
  r.step();
  a.update(p1, 1);
  a.update(p2, -1);
  r.step();
  r.step();
  EXPECT_DOUBLE_EQ(r.result(), -1.0);
}

TEST(IvlParameter, ReadIsFourScans) {
  for (std::size_t n : {1u, 3u, 8u}) {
    IvlParameter obj(n);
    auto r = obj.begin_read(p1);
    int steps = 0;
    while (!r.done()) {
      r.step();
      ++steps;
    }
    EXPECT_EQ(steps, static_cast<int>(4 * n));
  }
}

TEST(IvlParameter, UpdatesRouteBySign) {
  IvlParameter obj(2);
  obj.update(p1, 2.5);
  obj.update(p2, -4.0);
  obj.update(p2, 0.0);
  EXPECT_DOUBLE_EQ(obj.positive().peek(0), 2.5);
  EXPECT_DOUBLE_EQ(obj.negative().peek(1), 4.0);
  EXPECT_DOUBLE_EQ(obj.read(p1), -1.5);
}

TEST(PcmSketch, UpdateAndQueryAreDepthSteps) {
  PcmSketch s(SketchHashes::seeded(1, 8, 3), 2);
  auto u = s.begin_update(p1, Arg{std::string("a")});
  int steps = 0;
  while (!u.done()) {
    u.step();
    ++steps;
  }
  EXPECT_EQ(steps, 3);
  auto q = s.begin_query(p2, Arg{std::string("a")});
  while (!q.done()) q.step();
  EXPECT_EQ(q.steps(), 3);
  EXPECT_EQ(q.result(), 1u);
  EXPECT_EQ(s.tally(), (AccessTally{3, 0, 3}));
}

TEST(PcmSketch, ExampleInterleaving) {
  PcmSketch s(SketchHashes::pinned(2, 2, {{"a", {0, 0}}, {"b", {1, 0}}}), 2, {{1, 4}, {2, 3}});
  auto u = s.begin_update(p1, Arg{std::string("a")});
  u.step();
  EXPECT_EQ(s.query(p2, Arg{std::string("a")}), 2u);
  EXPECT_EQ(s.query(p2, Arg{std::string("b")}), 2u);
  u.step();
  EXPECT_EQ(s.peek(1, 0), 3u);
  EXPECT_EQ(s.query(p2, Arg{std::string("b")}), 3u);
}

TEST(PcmSketch, ConcurrentUpdatesAreNotLost) {
  PcmSketch s(SketchHashes::identity(4, 2), 4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (int i = 0; i < 10'000; ++i) s.update(ProcessId(t + 1), Arg{std::int64_t{t}});
    });
  for (auto& th : pool) th.join();
  for (std::int64_t k = 0; k < 4; ++k) EXPECT_EQ(s.query(p1, Arg{k}), 10'000u);
}

TEST(LockedCounter, EveryOperationIsOneStep) {
  LockedCounter c(2);
  auto u = c.begin_update(p1, 5);
  EXPECT_TRUE(u.step());
  auto r = c.begin_read(p2);
  EXPECT_TRUE(r.step());
  EXPECT_EQ(r.result(), 5u);
  EXPECT_EQ(c.tally().total(), 2u);
}

TEST(StepObject, KindsRoundTripThroughNames) {
  for (auto k : {ObjectKind::Counter, ObjectKind::Parameter, ObjectKind::NaiveAdder, ObjectKind::Pcm, ObjectKind::Snapshot,
                 ObjectKind::LockedCounter})
    EXPECT_EQ(parse_object_kind(to_string(k)), k);
  EXPECT_THROW(parse_object_kind("queue"), std::invalid_argument);
}

TEST(StepObject, UniformInterfaceReturnsValues) {
  ObjectConfig c;
  c.processes = 2;
  c.kind = ObjectKind::Parameter;
  auto obj = make_step_object(c);
  auto u = obj->begin(p1, Operation::update(-3.0));
  while (!u->done()) u->step();
  EXPECT_FALSE(u->result().has_value());
  auto r = obj->begin(p2, Operation::read());
  while (!r->done()) r->step();
  EXPECT_EQ(r->steps(), 8);
  EXPECT_DOUBLE_EQ(std::get<double>(*r->result()), -3.0);
}

TEST(StepObject, UnsupportedOperationThrows) {
  ObjectConfig c;
  c.kind = ObjectKind::Counter;
  auto obj = make_step_object(c);
  EXPECT_ANY_THROW(obj->begin(p1, Operation::scan()));
}

}  // namespace
}  // namespace ivl
