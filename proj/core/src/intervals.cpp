#include "ivl/intervals.hpp"

#include <map>
#include <string>

#include "ivl/hash_family.hpp"

namespace ivl {

namespace {

struct Open {
  std::size_t op_id;
  Operation op;
  std::int64_t lo = 0;
  std::uint64_t f_start = 0;
};

std::int64_t int_arg(const Operation& op) {
  if (const auto* v = std::get_if<std::int64_t>(&op.arg)) return *v;
  throw MalformedHistory("counter update needs an integer argument");
}

std::int64_t int_ret(const Event& e) {
  if (e.ret)
    if (const auto* v = std::get_if<std::int64_t>(&*e.ret)) return *v;
  throw MalformedHistory("expected an integer return value at seq " + std::to_string(e.seq));
}

}  // namespace

std::vector<ReadInterval> counter_read_intervals(const History& h) {
  validate(h);
  std::vector<ReadInterval> out;
  std::map<int, Open> open;
  std::size_t next_id = 0;
  std::int64_t completed = 0;
  std::int64_t invoked = 0;
  for (const auto& e : h.events()) {
    if (e.kind == EventKind::Invoke) {
      Open o{next_id++, e.op};
      if (e.op.kind == OpKind::Update)
        invoked += int_arg(e.op);
      else
        o.lo = completed;
      open.emplace(e.process.value, std::move(o));
      continue;
    }
    auto node = open.extract(e.process.value);
    const auto& o = node.mapped();
    if (o.op.kind == OpKind::Update) {
      completed += int_arg(o.op);
    } else if (e.ret) {
      out.push_back({o.op_id, e.process, o.lo, invoked, int_ret(e)});
    }
  }
  return out;
}

std::vector<FrequencyInterval> frequency_intervals(const History& h) {
  validate(h);
  std::vector<FrequencyInterval> out;
  std::map<int, Open> open;
  // Items are keyed the way the sketch keys them.
  std::map<std::uint64_t, std::uint64_t> completed;
  std::map<std::uint64_t, std::uint64_t> invoked;
  std::uint64_t stream = 0;
  std::size_t next_id = 0;
  for (const auto& e : h.events()) {
    const auto key = symbol_key(e.op.arg);
    if (e.kind == EventKind::Invoke) {
      Open o{next_id++, e.op};
      if (e.op.kind == OpKind::Update) {
        ++invoked[key];
        ++stream;
      } else {
        auto it = completed.find(key);
        o.f_start = it == completed.end() ? 0 : it->second;
      }
      open.emplace(e.process.value, std::move(o));
      continue;
    }
    auto node = open.extract(e.process.value);
    const auto& o = node.mapped();
    if (o.op.kind == OpKind::Update) {
      ++completed[key];
    } else if (e.ret) {
      auto it = invoked.find(key);
      const std::uint64_t f_end = it == invoked.end() ? 0 : it->second;
      out.push_back({o.op_id, e.process, o.op.arg, o.f_start, f_end, stream, static_cast<std::uint64_t>(int_ret(e))});
    }
  }
  return out;
}

}  // namespace ivl
