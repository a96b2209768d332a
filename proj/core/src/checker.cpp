#include "ivl/checker.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ivl {

namespace {

using Mask = std::uint64_t;

/// Operations of one completion, indexed densely; `preds[i]` holds the indices that must
/// be placed before i.
struct Problem {
  std::vector<OpRecord> ops;
  std::vector<Mask> preds;
  std::vector<std::size_t> object_of;  // index into object names
  std::size_t object_count = 0;
};

/// One specification instance with the return values it is checked against.
struct World {
  std::vector<SpecState> initial;      // per object
  std::vector<double> tolerance;       // per object
  std::vector<std::optional<Value>> observed;  // per op index
};

std::vector<OpRecord> checked_operations(const History& h, const CheckerLimits& limits) {
  auto ops = operations(h);
  if (ops.size() > limits.max_ops || ops.size() > 64)
    throw StateSpaceTooLarge("state-space too large: " + std::to_string(ops.size()) + " operations (cap " +
                             std::to_string(limits.max_ops) + ")");
  // Pending queries are dropped outright; only pending updates multiply the completions.
  auto pending = std::count_if(ops.begin(), ops.end(), [](const OpRecord& r) { return r.pending() && r.op.kind == OpKind::Update; });
  if (static_cast<std::size_t>(pending) > limits.max_pending)
    throw StateSpaceTooLarge("state-space too large: " + std::to_string(pending) + " pending updates (cap " +
                             std::to_string(limits.max_pending) + ")");
  return ops;
}

std::vector<std::size_t> pending_updates(const std::vector<OpRecord>& ops) {
  std::vector<std::size_t> out;
  for (const auto& r : ops)
    if (r.pending() && !r.op.returns_value()) out.push_back(r.id);
  return out;
}

/// Completion `choice` (bit j set: pending update j is completed). Fully completed first,
/// so callers that stop at the first success usually try one variant.
Problem make_problem(const std::vector<OpRecord>& all, const std::vector<std::size_t>& pend, Mask choice,
                     const std::vector<std::string>& object_names) {
  Problem p;
  p.object_count = object_names.size();
  for (const auto& r : all) {
    if (r.pending()) {
      if (r.op.returns_value()) continue;
      auto j = static_cast<std::size_t>(std::find(pend.begin(), pend.end(), r.id) - pend.begin());
      if (!((choice >> j) & 1u)) continue;
    }
    p.ops.push_back(r);
    p.object_of.push_back(static_cast<std::size_t>(std::find(object_names.begin(), object_names.end(), r.object) - object_names.begin()));
  }
  p.preds.assign(p.ops.size(), 0);
  for (std::size_t i = 0; i < p.ops.size(); ++i)
    for (std::size_t j = 0; j < p.ops.size(); ++j)
      if (precedes(p.ops[j], p.ops[i])) p.preds[i] |= Mask{1} << j;
  return p;
}

std::vector<Mask> completion_choices(std::size_t pending_count) {
  std::vector<Mask> out;
  const Mask all = (Mask{1} << pending_count) - 1;
  for (Mask m = all + 1; m-- > 0;) out.push_back(m);
  return out;
}

World make_world(const Problem& p, const SpecBinding& spec, const std::vector<std::string>& object_names,
                 const std::map<std::size_t, std::optional<Value>>* observed_override = nullptr) {
  World w;
  for (const auto& name : object_names) {
    const auto& s = spec.for_object(name);
    w.initial.push_back(s.initial_state());
    w.tolerance.push_back(s.tolerance());
  }
  for (const auto& r : p.ops) {
    if (observed_override) {
      auto it = observed_override->find(r.id);
      w.observed.push_back(it == observed_override->end() ? std::nullopt : it->second);
    } else {
      w.observed.push_back(r.ret);
    }
  }
  return w;
}

bool satisfies(const std::optional<Value>& value, const std::optional<Value>& observed, Bound bound, double tol) {
  if (!observed) return true;
  if (!value) return false;
  switch (bound) {
    case Bound::Exact: return values_equal(*value, *observed, tol);
    case Bound::Lower: return compare_values(*value, *observed, tol) <= 0;
    case Bound::Upper: return compare_values(*value, *observed, tol) >= 0;
  }
  return false;
}

/// Depth-first search for one linearization under which every world's tau values satisfy
/// `bound` against that world's observations.
class WitnessSearch {
 public:
  WitnessSearch(const Problem& p, const std::vector<World>& worlds, Bound bound) : p_(p), worlds_(worlds), bound_(bound) {
    states_.reserve(worlds.size());
    for (const auto& w : worlds) states_.push_back(w.initial);
  }

  std::optional<Linearization> run() {
    order_.clear();
    if (!dfs(0)) return std::nullopt;
    Linearization lin;
    for (auto i : order_) lin.push_back(p_.ops[i].id);
    return lin;
  }

 private:
  std::string key(Mask mask) const {
    std::string k(reinterpret_cast<const char*>(&mask), sizeof mask);
    for (const auto& per_world : states_)
      for (const auto& s : per_world) {
        s.append_key(k);
        k.push_back('|');
      }
    return k;
  }

  bool dfs(Mask mask) {
    const std::size_t n = p_.ops.size();
    if (mask == (n == 64 ? ~Mask{0} : (Mask{1} << n) - 1)) return true;
    auto k = key(mask);
    if (failed_.contains(k)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      const Mask bit = Mask{1} << i;
      if ((mask & bit) || (p_.preds[i] & ~mask)) continue;
      const auto obj = p_.object_of[i];
      std::vector<SpecState> saved;
      saved.reserve(worlds_.size());
      bool ok = true;
      for (std::size_t w = 0; w < worlds_.size() && ok; ++w) {
        saved.push_back(states_[w][obj]);
        auto v = states_[w][obj].apply(p_.ops[i].process, p_.ops[i].op);
        ok = satisfies(v, worlds_[w].observed[i], bound_, worlds_[w].tolerance[obj]);
      }
      if (ok) {
        order_.push_back(i);
        if (dfs(mask | bit)) return true;
        order_.pop_back();
      }
      for (std::size_t w = 0; w < saved.size(); ++w) states_[w][obj] = std::move(saved[w]);
    }
    failed_.insert(std::move(k));
    return false;
  }

  const Problem& p_;
  const std::vector<World>& worlds_;
  Bound bound_;
  std::vector<std::vector<SpecState>> states_;
  std::vector<std::size_t> order_;
  std::unordered_set<std::string> failed_;
};

/// Explores every reachable (placed set, state) node once and records, for each query with
/// an observed value, the min and max tau value over the linearizations.
class EnvelopeExplorer {
 public:
  EnvelopeExplorer(const Problem& p, const World& world) : p_(p), world_(world), state_(world.initial) {}

  void run(std::map<std::size_t, Envelope>& out) {
    out_ = &out;
    dfs(0);
  }

 private:
  void record(std::size_t i, const Value& v) {
    auto id = p_.ops[i].id;
    auto it = out_->find(id);
    if (it == out_->end()) {
      out_->emplace(id, Envelope{v, v});
      return;
    }
    if (compare_values(v, it->second.min, 0.0) < 0) it->second.min = v;
    if (compare_values(v, it->second.max, 0.0) > 0) it->second.max = v;
  }

  void dfs(Mask mask) {
    std::string k(reinterpret_cast<const char*>(&mask), sizeof mask);
    for (const auto& s : state_) s.append_key(k);
    if (!visited_.insert(std::move(k)).second) return;
    for (std::size_t i = 0; i < p_.ops.size(); ++i) {
      const Mask bit = Mask{1} << i;
      if ((mask & bit) || (p_.preds[i] & ~mask)) continue;
      const auto obj = p_.object_of[i];
      SpecState saved = state_[obj];
      auto v = state_[obj].apply(p_.ops[i].process, p_.ops[i].op);
      if (v && world_.observed[i]) record(i, *v);
      dfs(mask | bit);
      state_[obj] = std::move(saved);
    }
  }

  const Problem& p_;
  const World& world_;
  std::vector<SpecState> state_;
  std::unordered_set<std::string> visited_;
  std::map<std::size_t, Envelope>* out_ = nullptr;
};

bool all_quantitative(const History& h, const SpecBinding& spec) {
  for (const auto& name : objects_of(h))
    if (!spec.for_object(name).quantitative()) return false;
  return true;
}

std::optional<Linearization> search_completions(const History& h, const SpecBinding& spec, Bound bound, const CheckerLimits& limits) {
  auto ops = checked_operations(h, limits);
  auto names = objects_of(h);
  auto pend = pending_updates(ops);
  for (auto choice : completion_choices(pend.size())) {
    auto p = make_problem(ops, pend, choice, names);
    std::vector<World> worlds{make_world(p, spec, names)};
    if (auto lin = WitnessSearch(p, worlds, bound).run()) return lin;
  }
  return std::nullopt;
}

bool within(const Envelope& e, const Value& v, double tol) {
  return compare_values(e.min, v, tol) <= 0 && compare_values(v, e.max, tol) <= 0;
}

}  // namespace

std::vector<History> enumerate_completions(const History& h, const CheckerLimits& limits) {
  auto ops = checked_operations(h, limits);
  auto pend = pending_updates(ops);
  std::vector<History> out;
  for (auto choice : completion_choices(pend.size())) {
    std::vector<Event> events;
    std::uint64_t last_seq = 0;
    std::vector<const OpRecord*> to_complete;
    for (const auto& e : h.events()) {
      last_seq = e.seq;
      const OpRecord* rec = nullptr;
      if (e.kind == EventKind::Invoke) {
        for (const auto& r : ops)
          if (r.invoke_seq == e.seq) rec = &r;
      }
      if (rec && rec->pending()) {
        if (rec->op.returns_value()) continue;
        auto j = static_cast<std::size_t>(std::find(pend.begin(), pend.end(), rec->id) - pend.begin());
        if (!((choice >> j) & 1u)) continue;
        to_complete.push_back(rec);
      }
      events.push_back(e);
    }
    for (const auto* r : to_complete)
      events.push_back(Event{++last_seq, r->process, r->object, EventKind::Respond, r->op, std::nullopt});
    out.emplace_back(std::move(events));
  }
  return out;
}

std::size_t for_each_linearization(const History& h, const std::function<bool(const Linearization&)>& visit, const CheckerLimits& limits) {
  auto ops = checked_operations(h, limits);
  if (std::any_of(ops.begin(), ops.end(), [](const OpRecord& r) { return r.pending(); }))
    throw std::invalid_argument("linearizations are enumerated for completed histories");
  auto p = make_problem(ops, {}, 0, objects_of(h));
  const std::size_t n = p.ops.size();
  Linearization current;
  std::size_t count = 0;
  bool keep_going = true;
  std::function<void(Mask)> rec = [&](Mask mask) {
    if (current.size() == n) {
      ++count;
      keep_going = visit(current);
      return;
    }
    for (std::size_t i = 0; i < n && keep_going; ++i) {
      const Mask bit = Mask{1} << i;
      if ((mask & bit) || (p.preds[i] & ~mask)) continue;
      current.push_back(p.ops[i].id);
      rec(mask | bit);
      current.pop_back();
    }
  };
  rec(0);
  return count;
}

std::vector<Linearization> enumerate_linearizations(const History& h, const CheckerLimits& limits) {
  std::vector<Linearization> out;
  for_each_linearization(
      h,
      [&](const Linearization& lin) {
        out.push_back(lin);
        return true;
      },
      limits);
  return out;
}

LinearizabilityResult check_linearizable(const History& h, const SpecBinding& spec, const CheckerLimits& limits) {
  LinearizabilityResult result;
  if (auto lin = search_completions(h, spec, Bound::Exact, limits)) {
    result.linearizable = true;
    result.witness = std::move(*lin);
  }
  return result;
}

std::map<std::size_t, Envelope> value_envelopes(const History& h, const SpecBinding& spec, const CheckerLimits& limits) {
  if (!all_quantitative(h, spec)) throw SpecError("value envelopes need a quantitative object");
  auto ops = checked_operations(h, limits);
  auto names = objects_of(h);
  auto pend = pending_updates(ops);
  std::map<std::size_t, Envelope> out;
  for (auto choice : completion_choices(pend.size())) {
    auto p = make_problem(ops, pend, choice, names);
    auto world = make_world(p, spec, names);
    EnvelopeExplorer(p, world).run(out);
  }
  return out;
}

Envelope value_envelope(const History& h, const SpecBinding& spec, std::size_t query_id, const CheckerLimits& limits) {
  auto all = value_envelopes(h, spec, limits);
  auto it = all.find(query_id);
  if (it == all.end()) throw std::invalid_argument("operation " + std::to_string(query_id) + " is not a query that returns");
  return it->second;
}

IvlResult check_ivl(const History& h, const SpecBinding& spec, const CheckerLimits& limits) {
  if (!all_quantitative(h, spec)) throw SpecError("IVL is defined for quantitative objects");
  IvlResult result;
  auto ops = checked_operations(h, limits);

  auto envelopes = value_envelopes(h, spec, limits);
  for (const auto& r : ops) {
    if (!r.ret) continue;
    auto it = envelopes.find(r.id);
    if (it == envelopes.end() || !within(it->second, *r.ret, spec.for_object(r.object).tolerance())) {
      result.rejected_by_envelope = true;
      return result;
    }
  }

  auto names = objects_of(h);
  auto pend = pending_updates(ops);
  for (auto choice : completion_choices(pend.size())) {
    auto p = make_problem(ops, pend, choice, names);
    std::vector<World> worlds{make_world(p, spec, names)};
    auto lower = WitnessSearch(p, worlds, Bound::Lower).run();
    if (!lower) continue;
    auto upper = WitnessSearch(p, worlds, Bound::Upper).run();
    if (!upper) continue;
    result.ivl = true;
    result.lower = std::move(*lower);
    result.upper = std::move(*upper);
    return result;
  }
  return result;
}

IvlResult check_ivl_randomized(std::span<const SeededRun> runs, const CheckerLimits& limits) {
  if (runs.empty()) throw std::invalid_argument("need at least one run");
  const auto skeleton = skeletonize(runs.front().history);
  for (const auto& run : runs) {
    if (!run.spec.quantitative()) throw SpecError("IVL is defined for quantitative objects");
    if (!(skeletonize(run.history) == skeleton)) throw SkeletonMismatch("runs disagree on the order of invocations and responses");
  }
  if (runs.size() == 1) return check_ivl(runs.front().history, runs.front().spec, limits);

  auto ops = checked_operations(skeleton, limits);
  auto names = objects_of(skeleton);
  auto pend = pending_updates(ops);
  std::vector<std::vector<OpRecord>> run_ops;
  for (const auto& run : runs) run_ops.push_back(operations(run.history));

  IvlResult result;
  for (auto choice : completion_choices(pend.size())) {
    auto p = make_problem(ops, pend, choice, names);
    std::vector<World> worlds;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      std::map<std::size_t, std::optional<Value>> observed;
      for (const auto& r : run_ops[k]) observed[r.id] = r.ret;
      worlds.push_back(make_world(p, runs[k].spec, names, &observed));
    }
    auto lower = WitnessSearch(p, worlds, Bound::Lower).run();
    if (!lower) continue;
    auto upper = WitnessSearch(p, worlds, Bound::Upper).run();
    if (!upper) continue;
    result.ivl = true;
    result.lower = std::move(*lower);
    result.upper = std::move(*upper);
    return result;
  }
  return result;
}

Verdict check_all(const History& h, const SpecBinding& spec, const CheckerLimits& limits) {
  Verdict v;
  auto lin = check_linearizable(h, spec, limits);
  v.linearizable = lin.linearizable;
  v.linearization = lin.witness;
  if (!all_quantitative(h, spec)) {
    v.ivl = v.linearizable;
    v.lower = v.upper = v.linearization;
    return v;
  }
  auto ivl = check_ivl(h, spec, limits);
  v.ivl = ivl.ivl;
  v.lower = ivl.lower;
  v.upper = ivl.upper;
  v.envelopes = value_envelopes(h, spec, limits);
  return v;
}

LocalityResult check_locality(const History& h, const SpecBinding& spec, bool verify, const CheckerLimits& limits) {
  LocalityResult result;
  for (const auto& name : objects_of(h)) {
    bool ok = check_ivl(restrict_to(h, name), spec, limits).ivl;
    result.per_object[name] = ok;
    result.conjunction = result.conjunction && ok;
  }
  if (verify) result.whole = check_ivl(h, spec, limits).ivl;
  return result;
}

bool verify_witness(const History& h, const SpecBinding& spec, const Linearization& lin, Bound bound) {
  auto ops = operations(h);
  std::vector<int> seen(ops.size(), 0);
  std::vector<OpRecord> seq;
  for (auto id : lin) {
    if (id >= ops.size() || seen[id]++) return false;
    if (ops[id].pending() && ops[id].op.returns_value()) return false;
    seq.push_back(ops[id]);
  }
  for (const auto& r : ops)
    if (!r.pending() && !seen[r.id]) return false;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (precedes(seq[a], seq[b])) return false;

  auto evaluated = tau(spec, skeletonize(sequential_history(seq)));
  const auto& ev = evaluated.events();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq[i].ret) continue;
    const auto& value = ev[2 * i + 1].ret;
    if (!satisfies(value, seq[i].ret, bound, spec.for_object(seq[i].object).tolerance())) return false;
  }
  return true;
}

std::string format_linearization(const Linearization& lin) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < lin.size(); ++i) out << (i ? " " : "") << lin[i];
  out << ']';
  return out.str();
}

}  // namespace ivl
