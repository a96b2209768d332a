#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ivl/checker.hpp"
#include "ivl/harness.hpp"
#include "ivl/rng.hpp"

namespace ivl {
namespace {

Value I(std::int64_t v) { return Value{v}; }

// m operations all invoked before any responds.
History fully_concurrent_reads(int m) {
  HistoryBuilder b;
  for (int p = 1; p <= m; ++p) b.invoke(p, Operation::read());
  for (int p = 1; p <= m; ++p) b.respond(p, I(0));
  return b.build();
}

// Fig. "adderIVL": p3 reads 7 while p1 adds 3 and then p2 adds 7.
History adder_figure() {
  return HistoryBuilder()
      .invoke(3, Operation::read())
      .invoke(1, Operation::update(std::int64_t{3}))
      .respond(1)
      .invoke(2, Operation::update(std::int64_t{7}))
      .respond(2)
      .respond(3, I(7))
      .build();
}

// The naive signed adder figure: the read returns -1.
History negative_figure(double ret) {
  return HistoryBuilder()
      .invoke(3, Operation::read())
      .invoke(1, Operation::update(1.0))
      .respond(1)
      .invoke(2, Operation::update(-1.0))
      .respond(2)
      .respond(3, Value{ret})
      .build();
}

SequentialSpec pcm_example_spec() {
  return SequentialSpec::count_min(SketchHashes::pinned(2, 2, {{"a", {0, 0}}, {"b", {1, 0}}}), {{1, 4}, {2, 3}});
}

History pcm_example() {
  return HistoryBuilder()
      .invoke(1, Operation::update(Arg{std::string("a")}))
      .invoke(2, Operation::query(Arg{std::string("a")}))
      .respond(2, I(2))
      .invoke(2, Operation::query(Arg{std::string("b")}))
      .respond(2, I(2))
      .respond(1)
      .build();
}

std::uint64_t factorial(int m) { return m <= 1 ? 1 : m * factorial(m - 1); }

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------------------
// Independent oracle for counter and parameter histories: explicit subsets of pending
// updates, std::next_permutation over the kept operations, prefix sums for tau. The same
// completion serves both linearizations, as in the literal definition.

struct OracleVerdict {
  bool linearizable = false;
  bool ivl = false;
};

OracleVerdict brute_force_sum_object(const History& h) {
  const auto ops = operations(h);
  std::vector<std::size_t> fixed, optional;
  for (const auto& op : ops) {
    if (!op.pending())
      fixed.push_back(op.id);
    else if (op.op.kind == OpKind::Update)
      optional.push_back(op.id);
  }
  OracleVerdict out;
  for (std::uint32_t mask = 0; mask < (1u << optional.size()); ++mask) {
    std::vector<std::size_t> kept = fixed;
    for (std::size_t i = 0; i < optional.size(); ++i)
      if (mask & (1u << i)) kept.push_back(optional[i]);
    std::sort(kept.begin(), kept.end());
    bool lower_ok = false, upper_ok = false;
    do {
      bool legal = true;
      for (std::size_t i = 0; i < kept.size() && legal; ++i)
        for (std::size_t j = i + 1; j < kept.size() && legal; ++j) legal = !precedes(ops[kept[j]], ops[kept[i]]);
      if (!legal) continue;
      double sum = 0;
      bool all_eq = true, all_le = true, all_ge = true;
      for (auto id : kept) {
        const auto& op = ops[id];
        if (op.op.kind == OpKind::Update) {
          sum += *as_number(op.op.arg);
        } else {
          const double observed = *as_number(*op.ret);
          all_eq = all_eq && std::abs(sum - observed) <= kRealTolerance;
          all_le = all_le && sum <= observed + kRealTolerance;
          all_ge = all_ge && sum >= observed - kRealTolerance;
        }
      }
      out.linearizable = out.linearizable || all_eq;
      lower_ok = lower_ok || all_le;
      upper_ok = upper_ok || all_ge;
    } while (std::next_permutation(kept.begin(), kept.end()));
    out.ivl = out.ivl || (lower_ok && upper_ok);
  }
  return out;
}

// Random well-formed history of integer updates and reads with arbitrary read results.
History random_counter_history(Rng& rng, int ops, int processes) {
  HistoryBuilder b;
  std::vector<int> busy(processes + 1, 0);  // 0 idle, 1 updating, 2 reading
  std::int64_t total = 0;
  int invoked = 0;
  while (true) {
    std::vector<int> choices;
    for (int p = 1; p <= processes; ++p)
      if (busy[p] || invoked < ops) choices.push_back(p);
    if (choices.empty() || (invoked == ops && rng.chance(0.15))) break;
    const int p = choices[rng.below(choices.size())];
    if (busy[p] == 0) {
      ++invoked;
      if (rng.chance(0.55)) {
        const auto v = rng.between(1, 5);
        total += v;
        b.invoke(p, Operation::update(v));
        busy[p] = 1;
      } else {
        b.invoke(p, Operation::read());
        busy[p] = 2;
      }
    } else {
      if (busy[p] == 1)
        b.respond(p);
      else
        b.respond(p, I(rng.between(0, total + 1)));
      busy[p] = 0;
    }
  }
  return b.build();
}

// ---------------------------------------------------------------------------------------

TEST(Completions, NoPendingOperationsGivesTheHistory) {
  const auto h = adder_figure();
  const auto cs = enumerate_completions(h);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0], h);
}

TEST(Completions, OnePendingUpdateGivesTwo) {
  const auto h = HistoryBuilder().invoke(1, Operation::update(std::int64_t{1})).invoke(2, Operation::read()).respond(2, I(0)).build();
  const auto cs = enumerate_completions(h);
  ASSERT_EQ(cs.size(), 2u);
  std::vector<std::size_t> sizes{cs[0].size(), cs[1].size()};
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 4}));
  for (const auto& c : cs) EXPECT_TRUE(is_well_formed(c));
}

TEST(Completions, KPendingUpdatesGiveTwoToTheK) {
  for (int k = 0; k <= 6; ++k) {
    HistoryBuilder b;
    for (int p = 1; p <= k; ++p) b.invoke(p, Operation::update(std::int64_t{p}));
    b.invoke(k + 1, Operation::read());  // pending query: always dropped
    EXPECT_EQ(enumerate_completions(b.build()).size(), std::size_t{1} << k) << k;
  }
}

TEST(Completions, PendingQueriesAreDropped) {
  const auto h = HistoryBuilder().invoke(1, Operation::read()).build();
  const auto cs = enumerate_completions(h);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_TRUE(cs[0].empty());
}

TEST(Completions, TooManyPendingThrows) {
  HistoryBuilder b;
  for (int p = 1; p <= 7; ++p) b.invoke(p, Operation::update(std::int64_t{1}));
  EXPECT_THROW(enumerate_completions(b.build()), StateSpaceTooLarge);
  CheckerLimits wider;
  wider.max_pending = 7;
  EXPECT_EQ(enumerate_completions(b.build(), wider).size(), 128u);
}

TEST(Linearizations, FactorialForConcurrentOperations) {
  for (int m = 1; m <= 7; ++m) {
    std::size_t seen = 0;
    const auto n = for_each_linearization(fully_concurrent_reads(m), [&](const Linearization&) {
      ++seen;
      return true;
    });
    EXPECT_EQ(n, factorial(m)) << m;
    EXPECT_EQ(seen, factorial(m));
  }
}

TEST(Linearizations, SequentialOrderIsForced) {
  const auto h = HistoryBuilder().invoke(1, Operation::update(std::int64_t{1})).respond(1).invoke(2, Operation::read()).respond(2, I(1)).build();
  const auto all = enumerate_linearizations(h);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], (Linearization{0, 1}));
}

TEST(Linearizations, ChainsMatchPermutationCount) {
  // Process 1 runs a reads back to back and process 2 runs b; the count is checked
  // against filtering all permutations, and against (a + b choose a) when one side is a
  // single operation spanning the whole run.
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      HistoryBuilder hb;
      hb.invoke(1, Operation::read());
      hb.invoke(2, Operation::read());
      for (int i = 1; i < a; ++i) hb.respond(1, I(0)).invoke(1, Operation::read());
      for (int j = 1; j < b; ++j) hb.respond(2, I(0)).invoke(2, Operation::read());
      hb.respond(1, I(0)).respond(2, I(0));
      const auto h = hb.build();
      const auto ops = operations(h);
      std::size_t brute = 0;
      std::vector<std::size_t> ids(ops.size());
      for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
      do {
        bool legal = true;
        for (std::size_t i = 0; i < ids.size() && legal; ++i)
          for (std::size_t j = i + 1; j < ids.size() && legal; ++j) legal = !precedes(ops[ids[j]], ops[ids[i]]);
        brute += legal;
      } while (std::next_permutation(ids.begin(), ids.end()));
      EXPECT_EQ(enumerate_linearizations(h).size(), brute) << a << "x" << b;
      if (a == 1 || b == 1) EXPECT_EQ(brute, binomial(a + b, a));
    }
}

TEST(Linearizations, RespectRealTimeOrder) {
  const auto h = adder_figure();
  const auto ops = operations(h);
  for (const auto& lin : enumerate_linearizations(h)) {
    for (std::size_t i = 0; i < lin.size(); ++i)
      for (std::size_t j = i + 1; j < lin.size(); ++j) EXPECT_FALSE(precedes(ops[lin[j]], ops[lin[i]]));
  }
}

TEST(Linearizations, CapOnOperationCount) {
  EXPECT_THROW(enumerate_linearizations(fully_concurrent_reads(13)), StateSpaceTooLarge);
}

TEST(Linearizations, PendingOperationsAreRejected) {
  const auto h = HistoryBuilder().invoke(1, Operation::read()).build();
  EXPECT_ANY_THROW(enumerate_linearizations(h));
}

TEST(Linearizable, SequentialHistoriesAreTheirOwnWitness) {
  const auto h = HistoryBuilder()
                     .invoke(1, Operation::update(std::int64_t{2}))
                     .respond(1)
                     .invoke(2, Operation::read())
                     .respond(2, I(2))
                     .invoke(1, Operation::update(std::int64_t{3}))
                     .respond(1)
                     .invoke(3, Operation::read())
                     .respond(3, I(5))
                     .build();
  const auto r = check_linearizable(h, SequentialSpec::counter());
  EXPECT_TRUE(r.linearizable);
  EXPECT_EQ(r.witness, (Linearization{0, 1, 2, 3}));
}

TEST(Linearizable, PcmExampleIsNot) { EXPECT_FALSE(check_linearizable(pcm_example(), pcm_example_spec()).linearizable); }

TEST(Linearizable, AdderFigureIsNot) { EXPECT_FALSE(check_linearizable(adder_figure(), SequentialSpec::counter()).linearizable); }

TEST(Linearizable, PendingUpdateMayTakeEffect) {
  const auto h = HistoryBuilder().invoke(1, Operation::update(std::int64_t{4})).invoke(2, Operation::read()).respond(2, I(4)).build();
  EXPECT_TRUE(check_linearizable(h, SequentialSpec::counter()).linearizable);
}

TEST(Ivl, AdderFigureWithQueriesFirstAndLastWitnesses) {
  const auto r = check_ivl(adder_figure(), SequentialSpec::counter());
  ASSERT_TRUE(r.ivl);
  EXPECT_EQ(r.lower, (Linearization{0, 1, 2}));  // read first: 0 <= 7
  EXPECT_EQ(r.upper, (Linearization{1, 2, 0}));  // read last: 10 >= 7
  EXPECT_TRUE(verify_witness(adder_figure(), SequentialSpec::counter(), r.lower, Bound::Lower));
  EXPECT_TRUE(verify_witness(adder_figure(), SequentialSpec::counter(), r.upper, Bound::Upper));
}

TEST(Ivl, EveryValueInTheAdderEnvelopePasses) {
  for (std::int64_t v = -1; v <= 11; ++v) {
    auto events = adder_figure().events();
    events.back().ret = I(v);
    EXPECT_EQ(check_ivl(History(events), SequentialSpec::counter()).ivl, v >= 0 && v <= 10) << v;
  }
}

TEST(Ivl, NegativeValuesFigureIsNot) {
  const auto r = check_ivl(negative_figure(-1.0), SequentialSpec::parameter());
  EXPECT_FALSE(r.ivl);
  EXPECT_TRUE(r.rejected_by_envelope);
  EXPECT_TRUE(check_ivl(negative_figure(0.0), SequentialSpec::parameter()).ivl);
  EXPECT_TRUE(check_ivl(negative_figure(1.0), SequentialSpec::parameter()).ivl);
}

TEST(Ivl, PcmExampleIs) {
  const auto r = check_ivl(pcm_example(), pcm_example_spec());
  ASSERT_TRUE(r.ivl);
  EXPECT_TRUE(verify_witness(pcm_example(), pcm_example_spec(), r.lower, Bound::Lower));
  EXPECT_TRUE(verify_witness(pcm_example(), pcm_example_spec(), r.upper, Bound::Upper));
}

TEST(Ivl, ReadsThatSeeDisjointUpdates) {
  // r1 = 1 sees update(1) only, r2 = 2 sees update(2) only. Both are IVL: reads first
  // bounds them from below, updates first from above.
  const auto h = HistoryBuilder()
                     .invoke(1, Operation::update(std::int64_t{1}))
                     .invoke(2, Operation::update(std::int64_t{2}))
                     .invoke(3, Operation::read())
                     .respond(3, I(1))
                     .invoke(4, Operation::read())
                     .respond(4, I(2))
                     .respond(1)
                     .respond(2)
                     .invoke(3, Operation::read())
                     .respond(3, I(3))
                     .build();
  EXPECT_TRUE(check_ivl(h, SequentialSpec::counter()).ivl);
  EXPECT_FALSE(check_linearizable(h, SequentialSpec::counter()).linearizable);
  // The last read follows both updates, so every linearization gives it 3.
  auto events = h.events();
  events.back().ret = I(2);
  EXPECT_FALSE(check_ivl(History(events), SequentialSpec::counter()).ivl);
}

TEST(Ivl, BoundsAreInclusive) {
  auto events = adder_figure().events();
  for (std::int64_t v : {0, 10}) {
    events.back().ret = I(v);
    EXPECT_TRUE(check_ivl(History(events), SequentialSpec::counter()).ivl) << v;
  }
}

TEST(Ivl, LinearizableImpliesIvlOnRandomHistories) {
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const auto h = random_counter_history(rng, 6, 3);
    const auto v = check_all(h, SequentialSpec::counter());
    if (v.linearizable) EXPECT_TRUE(v.ivl) << i;
  }
}

TEST(Ivl, AgreesWithBruteForceOracle) {
  Rng rng(4242);
  int ivl_count = 0, lin_count = 0;
  for (int i = 0; i < 400; ++i) {
    const auto h = random_counter_history(rng, 1 + static_cast<int>(rng.below(6)), 1 + static_cast<int>(rng.below(3)));
    const auto oracle = brute_force_sum_object(h);
    const auto lin = check_linearizable(h, SequentialSpec::counter());
    const auto ivl = check_ivl(h, SequentialSpec::counter());
    ASSERT_EQ(lin.linearizable, oracle.linearizable) << i;
    ASSERT_EQ(ivl.ivl, oracle.ivl) << i;
    ivl_count += oracle.ivl;
    lin_count += oracle.linearizable;
    if (lin.linearizable) EXPECT_TRUE(verify_witness(h, SequentialSpec::counter(), lin.witness, Bound::Exact));
    if (ivl.ivl) {
      EXPECT_TRUE(verify_witness(h, SequentialSpec::counter(), ivl.lower, Bound::Lower));
      EXPECT_TRUE(verify_witness(h, SequentialSpec::counter(), ivl.upper, Bound::Upper));
    }
  }
  // The generator must exercise both outcomes for the comparison to mean anything.
  EXPECT_GT(ivl_count, 50);
  EXPECT_LT(ivl_count, 350);
  EXPECT_GT(lin_count, 20);
}

TEST(Ivl, AgreesWithBruteForceOnFuzzedParameterAndNaiveAdder) {
  for (auto kind : {ObjectKind::Parameter, ObjectKind::NaiveAdder}) {
    const auto params = fuzz_params_for(kind, 3, 8);
    int non_ivl = 0;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
      const auto h = replay(random_schedule(seed, params));
      const auto oracle = brute_force_sum_object(h);
      ASSERT_EQ(check_ivl(h, SequentialSpec::parameter()).ivl, oracle.ivl) << seed;
      ASSERT_EQ(check_linearizable(h, SequentialSpec::parameter()).linearizable, oracle.linearizable) << seed;
      non_ivl += !oracle.ivl;
    }
    EXPECT_GT(non_ivl, 0) << to_string(kind);
  }
}

TEST(Envelope, AdderFigureIsZeroToTen) {
  const auto e = value_envelope(adder_figure(), SequentialSpec::counter(), 0);
  EXPECT_EQ(std::get<std::int64_t>(e.min), 0);
  EXPECT_EQ(std::get<std::int64_t>(e.max), 10);
}

TEST(Envelope, SequentialHistoryIsAPoint) {
  const auto h = HistoryBuilder().invoke(1, Operation::update(std::int64_t{6})).respond(1).invoke(1, Operation::read()).respond(1, I(6)).build();
  const auto e = value_envelope(h, SequentialSpec::counter(), 1);
  EXPECT_EQ(std::get<std::int64_t>(e.min), 6);
  EXPECT_EQ(std::get<std::int64_t>(e.max), 6);
}

TEST(Envelope, TwoConcurrentIncrementsAndARead) {
  const auto h = HistoryBuilder()
                     .invoke(1, Operation::update(std::int64_t{1}))
                     .invoke(2, Operation::update(std::int64_t{1}))
                     .invoke(3, Operation::read())
                     .respond(1)
                     .respond(2)
                     .respond(3, I(1))
                     .build();
  const auto e = value_envelope(h, SequentialSpec::counter(), 2);
  EXPECT_EQ(std::get<std::int64_t>(e.min), 0);
  EXPECT_EQ(std::get<std::int64_t>(e.max), 2);
}

TEST(Envelope, ConsistentWithIvlVerdicts) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto h = random_counter_history(rng, 6, 3);
    const auto v = check_all(h, SequentialSpec::counter());
    const auto ops = operations(h);
    for (const auto& [id, e] : v.envelopes) {
      EXPECT_TRUE(compare_values(e.min, e.max) <= 0);
      if (v.ivl) {
        EXPECT_TRUE(compare_values(e.min, *ops[id].ret) <= 0);
        EXPECT_TRUE(compare_values(e.max, *ops[id].ret) >= 0);
      }
    }
  }
}

TEST(Envelope, PendingUpdatesWidenTheRange) {
  const auto h = HistoryBuilder().invoke(1, Operation::update(std::int64_t{5})).invoke(2, Operation::read()).respond(2, I(0)).build();
  const auto e = value_envelope(h, SequentialSpec::counter(), 1);
  EXPECT_EQ(std::get<std::int64_t>(e.min), 0);
  EXPECT_EQ(std::get<std::int64_t>(e.max), 5);
}

std::vector<SeededRun> pcm_runs(const std::vector<std::uint64_t>& seeds) {
  std::vector<SeededRun> runs;
  for (auto seed : seeds) {
    auto s = golden_schedule("pcm-example");
    auto& cfg = s.objects.front().config;
    cfg.pinned_hashes.clear();
    cfg.seed = seed;
    runs.push_back({replay(s), spec_for(cfg)});
  }
  return runs;
}

TEST(Randomized, PcmScheduleUnderFiveSeeds) {
  const auto runs = pcm_runs({1, 2, 3, 4, 5});
  const auto r = check_ivl_randomized(runs);
  ASSERT_TRUE(r.ivl);
  for (const auto& run : runs) {
    EXPECT_TRUE(verify_witness(run.history, run.spec, r.lower, Bound::Lower));
    EXPECT_TRUE(verify_witness(run.history, run.spec, r.upper, Bound::Upper));
  }
}

TEST(Randomized, SingleSeedReducesToCheckIvl) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto h = random_counter_history(rng, 5, 3);
    const SeededRun run{h, SequentialSpec::counter()};
    EXPECT_EQ(check_ivl_randomized(std::span<const SeededRun>(&run, 1)).ivl, check_ivl(h, SequentialSpec::counter()).ivl);
  }
}

TEST(Randomized, EditedValueAboveEnvelopeFails) {
  auto runs = pcm_runs({1, 2, 3});
  auto events = runs[1].history.events();
  for (auto& e : events)
    if (e.kind == EventKind::Respond && e.op.kind == OpKind::Query) e.ret = I(99);
  runs[1].history = History(events);
  EXPECT_FALSE(check_ivl_randomized(runs).ivl);
}

TEST(Randomized, SkeletonsMustMatch) {
  std::vector<SeededRun> runs{{adder_figure(), SequentialSpec::counter()}, {negative_figure(0.0), SequentialSpec::parameter()}};
  EXPECT_THROW(check_ivl_randomized(runs), SkeletonMismatch);
}

TEST(Locality, DisjointIvlObjectsInterleaved) {
  const auto h = HistoryBuilder()
                     .invoke(3, "x", Operation::read())
                     .invoke(1, "x", Operation::update(std::int64_t{3}))
                     .invoke(4, "y", Operation::update(std::int64_t{2}))
                     .respond(1)
                     .invoke(2, "x", Operation::update(std::int64_t{7}))
                     .respond(4)
                     .respond(2)
                     .respond(3, I(7))
                     .invoke(4, "y", Operation::read())
                     .respond(4, I(2))
                     .build();
  const auto r = check_locality(h, SequentialSpec::counter(), true);
  EXPECT_TRUE(r.conjunction);
  EXPECT_TRUE(r.per_object.at("x"));
  EXPECT_TRUE(r.per_object.at("y"));
  EXPECT_TRUE(r.agrees());
}

TEST(Locality, NonIvlObjectBesideIvlCounter) {
  SpecBinding spec(std::map<std::string, SequentialSpec>{{"a", SequentialSpec::parameter()}, {"c", SequentialSpec::counter()}});
  const auto h = HistoryBuilder()
                     .invoke(3, "a", Operation::read())
                     .invoke(1, "a", Operation::update(1.0))
                     .invoke(4, "c", Operation::update(std::int64_t{5}))
                     .respond(1)
                     .invoke(2, "a", Operation::update(-1.0))
                     .respond(2)
                     .respond(4)
                     .respond(3, Value{-1.0})
                     .invoke(4, "c", Operation::read())
                     .respond(4, I(5))
                     .build();
  const auto r = check_locality(h, spec, true);
  EXPECT_FALSE(r.conjunction);
  EXPECT_FALSE(r.per_object.at("a"));
  EXPECT_TRUE(r.per_object.at("c"));
  EXPECT_TRUE(r.agrees());
}

TEST(Locality, WholeHistoryMatchesConjunctionOnFuzzedPairs) {
  FuzzParams params;
  params.processes = 3;
  params.ops = 8;
  for (auto [name, kind] : {std::pair{"x", ObjectKind::Counter}, std::pair{"y", ObjectKind::NaiveAdder}}) {
    ObjectDecl d;
    d.name = name;
    d.config.kind = kind;
    params.objects.push_back(d);
  }
  SpecBinding spec(std::map<std::string, SequentialSpec>{{"x", SequentialSpec::counter()}, {"y", SequentialSpec::parameter()}});
  int failing = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto h = replay(random_schedule(seed, params));
    const auto r = check_locality(h, spec, true);
    ASSERT_TRUE(r.agrees()) << seed;
    failing += !r.conjunction;
  }
  EXPECT_GT(failing, 0);
}

TEST(Witness, RejectsOrdersThatBreakRealTime) {
  EXPECT_FALSE(verify_witness(adder_figure(), SequentialSpec::counter(), {2, 1, 0}, Bound::Upper));
  EXPECT_FALSE(verify_witness(adder_figure(), SequentialSpec::counter(), {0, 1}, Bound::Lower));
  EXPECT_FALSE(verify_witness(adder_figure(), SequentialSpec::counter(), {0, 1, 2}, Bound::Upper));
  EXPECT_EQ(format_linearization({2, 0, 1}), "[2 0 1]");
}

TEST(CheckAll, SnapshotGetsOnlyLinearizability) {
  const auto h = HistoryBuilder()
                     .invoke(1, Operation::update(std::int64_t{1}))
                     .invoke(2, Operation::scan())
                     .respond(2, Value{BitVector{1, 0}})
                     .respond(1)
                     .build();
  const auto v = check_all(h, SequentialSpec::snapshot(2));
  EXPECT_TRUE(v.linearizable);
  EXPECT_TRUE(v.ivl);
  EXPECT_TRUE(v.envelopes.empty());
  auto events = h.events();
  events[2].ret = Value{BitVector{0, 1}};
  EXPECT_FALSE(check_all(History(events), SequentialSpec::snapshot(2)).linearizable);
}

}  // namespace
}  // namespace ivl
