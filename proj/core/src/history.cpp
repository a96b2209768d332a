#include "ivl/history.hpp"

#include <algorithm>
#include <map>

namespace ivl {

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::Update: return "update";
    case OpKind::Read: return "read";
    case OpKind::Query: return "query";
    case OpKind::Scan: return "scan";
  }
  return "?";
}

OpKind parse_op_kind(std::string_view text) {
  if (text == "update") return OpKind::Update;
  if (text == "read") return OpKind::Read;
  if (text == "query") return OpKind::Query;
  if (text == "scan") return OpKind::Scan;
  throw MalformedHistory("unknown operation: " + std::string(text));
}

bool operator==(const Event& a, const Event& b) {
  if (a.seq != b.seq || a.process != b.process || a.object != b.object || a.kind != b.kind || !(a.op == b.op))
    return false;
  if (a.ret.has_value() != b.ret.has_value()) return false;
  if (!a.ret) return true;
  // Bitwise comparison: histories are compared for replay determinism, not tolerance.
  return a.ret->index() == b.ret->index() && format_value(*a.ret) == format_value(*b.ret);
}

HistoryBuilder& HistoryBuilder::invoke(int process, std::string object, Operation op) {
  events_.push_back(Event{next_seq_++, ProcessId(process), std::move(object), EventKind::Invoke, std::move(op), {}});
  return *this;
}

HistoryBuilder& HistoryBuilder::respond(int process, std::optional<Value> ret) {
  for (auto it = events_.rbegin(); it != events_.rend(); ++it) {
    if (it->process.value != process) continue;
    if (it->kind != EventKind::Invoke) break;
    events_.push_back(Event{next_seq_++, it->process, it->object, EventKind::Respond, it->op, std::move(ret)});
    return *this;
  }
  throw MalformedHistory("respond without in-flight invoke for process " + std::to_string(process));
}

namespace {

std::string where(const Event& e) { return " (event seq " + std::to_string(e.seq) + ")"; }

}  // namespace

std::vector<OpRecord> operations(const History& h) {
  std::vector<OpRecord> ops;
  std::map<int, std::size_t> in_flight;
  std::optional<std::uint64_t> last_seq;
  for (const auto& e : h.events()) {
    if (last_seq && e.seq <= *last_seq) throw MalformedHistory("sequence numbers must strictly increase" + where(e));
    last_seq = e.seq;
    if (e.process.value < 1) throw MalformedHistory("process ids start at 1" + where(e));
    if (e.kind == EventKind::Invoke) {
      if (in_flight.contains(e.process.value))
        throw MalformedHistory("process " + std::to_string(e.process.value) + " has concurrent operations" + where(e));
      if (e.ret) throw MalformedHistory("invocation carries a return value" + where(e));
      in_flight[e.process.value] = ops.size();
      ops.push_back(OpRecord{ops.size(), e.process, e.object, e.op, e.seq, std::nullopt, std::nullopt});
    } else {
      auto it = in_flight.find(e.process.value);
      if (it == in_flight.end()) throw MalformedHistory("response without invocation" + where(e));
      auto& rec = ops[it->second];
      if (rec.object != e.object || !(rec.op == e.op)) throw MalformedHistory("response does not match its invocation" + where(e));
      if (e.ret && !e.op.returns_value()) throw MalformedHistory("update response carries a return value" + where(e));
      rec.respond_seq = e.seq;
      rec.ret = e.ret;
      in_flight.erase(it);
    }
  }
  return ops;
}

void validate(const History& h) { (void)operations(h); }

bool is_well_formed(const History& h) {
  try {
    validate(h);
    return true;
  } catch (const MalformedHistory&) {
    return false;
  }
}

bool is_sequential(const History& h) {
  if (!is_well_formed(h)) return false;
  const auto& ev = h.events();
  if (ev.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < ev.size(); i += 2) {
    if (ev[i].kind != EventKind::Invoke || ev[i + 1].kind != EventKind::Respond) return false;
    if (ev[i].process != ev[i + 1].process) return false;
  }
  return true;
}

bool is_skeleton(const History& h) {
  return std::none_of(h.events().begin(), h.events().end(), [](const Event& e) { return e.ret.has_value(); });
}

History skeletonize(const History& h) {
  validate(h);
  auto events = h.events();
  for (auto& e : events) e.ret.reset();
  return History(std::move(events));
}

History restrict_to(const History& h, std::string_view object) {
  std::vector<Event> out;
  for (const auto& e : h.events())
    if (e.object == object) out.push_back(e);
  return History(std::move(out));
}

std::vector<std::string> objects_of(const History& h) {
  std::vector<std::string> names;
  for (const auto& e : h.events())
    if (std::find(names.begin(), names.end(), e.object) == names.end()) names.push_back(e.object);
  return names;
}

History sequential_history(const std::vector<OpRecord>& ops) {
  std::vector<Event> events;
  events.reserve(ops.size() * 2);
  std::uint64_t seq = 1;
  for (const auto& op : ops) {
    events.push_back(Event{seq++, op.process, op.object, EventKind::Invoke, op.op, {}});
    events.push_back(Event{seq++, op.process, op.object, EventKind::Respond, op.op, op.ret});
  }
  return History(std::move(events));
}

}  // namespace ivl
