#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ivl/value.hpp"

namespace ivl {

enum class EventKind { Invoke, Respond };

enum class OpKind { Update, Read, Query, Scan };

std::string_view to_string(OpKind kind);
OpKind parse_op_kind(std::string_view text);

/// Operation descriptor: update(arg), read, query(symbol) or scan.
struct Operation {
  OpKind kind = OpKind::Read;
  Arg arg;

  bool returns_value() const { return kind != OpKind::Update; }

  static Operation update(Arg a) { return {OpKind::Update, std::move(a)}; }
  static Operation read() { return {OpKind::Read, {}}; }
  static Operation query(Arg symbol) { return {OpKind::Query, std::move(symbol)}; }
  static Operation scan() { return {OpKind::Scan, {}}; }

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// A response with no `ret` on a value-returning operation is an erased ("?") response.
struct Event {
  std::uint64_t seq = 0;
  ProcessId process;
  std::string object;
  EventKind kind = EventKind::Invoke;
  Operation op;
  std::optional<Value> ret;
};

bool operator==(const Event& a, const Event& b);

class MalformedHistory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered invocation/response events. Immutable once built.
class History {
 public:
  History() = default;
  explicit History(std::vector<Event> events) : events_(std::move(events)) {}

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  friend bool operator==(const History&, const History&) = default;

 private:
  std::vector<Event> events_;
};

/// Builds histories with consecutive sequence numbers; `respond` pairs with the process's
/// in-flight invocation.
class HistoryBuilder {
 public:
  HistoryBuilder& invoke(int process, std::string object, Operation op);
  HistoryBuilder& invoke(int process, Operation op) { return invoke(process, "x", std::move(op)); }
  HistoryBuilder& respond(int process, std::optional<Value> ret = std::nullopt);

  History build() const { return History(events_); }

 private:
  std::vector<Event> events_;
  std::uint64_t next_seq_ = 1;
};

/// One operation of a history, pairing its invoke and (if any) response.
/// Ids number operations in invocation order starting from 0.
struct OpRecord {
  std::size_t id = 0;
  ProcessId process;
  std::string object;
  Operation op;
  std::uint64_t invoke_seq = 0;
  std::optional<std::uint64_t> respond_seq;
  std::optional<Value> ret;

  bool pending() const { return !respond_seq.has_value(); }
};

/// Real-time precedence: a responded before b was invoked.
inline bool precedes(const OpRecord& a, const OpRecord& b) {
  return a.respond_seq && *a.respond_seq < b.invoke_seq;
}

/// Throws MalformedHistory unless: sequence numbers strictly increase, process ids are
/// positive, no process has two operations in flight, every response matches its
/// process's in-flight invocation (object and operation), invocations carry no return
/// value and update responses carry none either.
void validate(const History& h);
bool is_well_formed(const History& h);

/// Every invoke is immediately followed by its response.
bool is_sequential(const History& h);

/// No response carries a return value.
bool is_skeleton(const History& h);

/// Pairs invocations with responses. Validates first.
std::vector<OpRecord> operations(const History& h);

/// Same events, every return value erased.
History skeletonize(const History& h);

/// Subhistory of one object, sequence numbers preserved.
History restrict_to(const History& h, std::string_view object);

/// Object names in order of first appearance.
std::vector<std::string> objects_of(const History& h);

/// Sequential history listing `ops` in the given order (invoke immediately followed by
/// response), with sequence numbers 1, 2, ... and the records' return values.
History sequential_history(const std::vector<OpRecord>& ops);

}  // namespace ivl
