#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivl/history.hpp"
#include "ivl/spec.hpp"

// Brute-force decision procedures for linearizability and intermediate value
// linearizability (IVL) on small histories.
//
// A history is IVL when two linearizations H1, H2 of its skeleton exist such that every
// query that returns satisfies  ret(Q, tau(H1)) <= ret(Q, H) <= ret(Q, tau(H2)).
// The H1 condition and the H2 condition constrain different linearizations, so the pair
// search splits into two independent searches for one linearization each; both are exact.
//
// Pending operations: pending queries are dropped (they return nothing to bound), pending
// updates are both dropped and completed. The searches are depth-first over linearization
// prefixes with memoisation of (placed set, object state) pairs.

namespace ivl {

class StateSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SkeletonMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckerLimits {
  std::size_t max_ops = 12;
  std::size_t max_pending = 6;
};

/// Total order of operation ids (ids as assigned by `operations()` on the checked history).
using Linearization = std::vector<std::size_t>;

enum class Bound {
  Exact,  // tau value equals the observed one
  Lower,  // tau value <= observed
  Upper,  // tau value >= observed
};

/// Every completion: each pending update either removed or given a response appended at the
/// end; pending queries always removed. 2^k histories for k pending updates.
std::vector<History> enumerate_completions(const History& h, const CheckerLimits& limits = {});

/// Calls `visit` once per total order of the history's operations that extends real-time
/// precedence. The history must have no pending operations. Stops early when `visit`
/// returns false. Returns the number of linearizations visited.
std::size_t for_each_linearization(const History& h, const std::function<bool(const Linearization&)>& visit,
                                   const CheckerLimits& limits = {});
std::vector<Linearization> enumerate_linearizations(const History& h, const CheckerLimits& limits = {});

struct LinearizabilityResult {
  bool linearizable = false;
  Linearization witness;
};

LinearizabilityResult check_linearizable(const History& h, const SpecBinding& spec, const CheckerLimits& limits = {});

struct Envelope {
  Value min;
  Value max;
};

/// v_min / v_max of every query that returns in h, keyed by operation id, over all
/// completions and linearizations.
std::map<std::size_t, Envelope> value_envelopes(const History& h, const SpecBinding& spec, const CheckerLimits& limits = {});
Envelope value_envelope(const History& h, const SpecBinding& spec, std::size_t query_id, const CheckerLimits& limits = {});

struct IvlResult {
  bool ivl = false;
  Linearization lower;  // H1
  Linearization upper;  // H2
  /// Rejected because some query fell outside its envelope; no witness search ran.
  bool rejected_by_envelope = false;
};

IvlResult check_ivl(const History& h, const SpecBinding& spec, const CheckerLimits& limits = {});

/// One replay of a schedule under one coin-flip vector, with the specification that vector
/// induces.
struct SeededRun {
  History history;
  SequentialSpec spec;
};

/// IVL for randomized algorithms: one pair (H1, H2) must bound every query under every run.
/// All runs must share a skeleton (throws SkeletonMismatch). Sampling seeds can refute the
/// property but never prove it for all coin flips.
IvlResult check_ivl_randomized(std::span<const SeededRun> runs, const CheckerLimits& limits = {});

struct Verdict {
  bool linearizable = false;
  Linearization linearization;
  bool ivl = false;
  Linearization lower;
  Linearization upper;
  std::map<std::size_t, Envelope> envelopes;
};

/// Linearizability first, then IVL with per-query envelopes. Non-quantitative objects get
/// only the linearizability verdict (ivl mirrors it, envelopes stay empty).
Verdict check_all(const History& h, const SpecBinding& spec, const CheckerLimits& limits = {});

struct LocalityResult {
  std::map<std::string, bool> per_object;
  bool conjunction = true;
  std::optional<bool> whole;  // set in verification mode

  bool agrees() const { return !whole || *whole == conjunction; }
};

/// IVL of a multi-object history decided object by object. With `verify` the whole history
/// is also checked directly so the two verdicts can be compared.
LocalityResult check_locality(const History& h, const SpecBinding& spec, bool verify = false, const CheckerLimits& limits = {});

/// Re-evaluates a witness from scratch: the sequence must contain every completed operation
/// once, may contain pending updates, no pending queries, must respect real-time order,
/// and tau of the sequence must satisfy `bound` against every observed return value.
bool verify_witness(const History& h, const SpecBinding& spec, const Linearization& lin, Bound bound);

std::string format_linearization(const Linearization& lin);

}  // namespace ivl
