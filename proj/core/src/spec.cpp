#include "ivl/spec.hpp"

#include <cstring>

namespace ivl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void unsupported(const char* object, const Operation& op) {
  throw SpecError(std::string(object) + " does not support " + std::string(to_string(op.kind)));
}

}  // namespace

std::optional<Value> SpecState::apply(ProcessId process, const Operation& op) {
  return std::visit(
      overloaded{
          [&](std::int64_t& sum) -> std::optional<Value> {
            if (op.kind == OpKind::Read) return sum;
            if (op.kind != OpKind::Update) unsupported("counter", op);
            const auto* v = std::get_if<std::int64_t>(&op.arg);
            if (!v) throw SpecError("counter updates take an integer");
            if (*v < 0) throw SpecError("counter updates must be non-negative");
            sum += *v;
            return std::nullopt;
          },
          [&](double& sum) -> std::optional<Value> {
            if (op.kind == OpKind::Read) return sum;
            if (op.kind != OpKind::Update) unsupported("parameter", op);
            auto v = as_number(op.arg);
            if (!v) throw SpecError("parameter updates take a number");
            sum += *v;
            return std::nullopt;
          },
          [&](CountMinSketch& sketch) -> std::optional<Value> {
            if (op.kind == OpKind::Query) return static_cast<std::int64_t>(sketch.query(op.arg));
            if (op.kind != OpKind::Update) unsupported("CountMin", op);
            sketch.update(op.arg);
            return std::nullopt;
          },
          [&](BitVector& bits) -> std::optional<Value> {
            if (op.kind == OpKind::Scan) return bits;
            if (op.kind != OpKind::Update) unsupported("binary snapshot", op);
            const auto* v = std::get_if<std::int64_t>(&op.arg);
            if (!v || (*v != 0 && *v != 1)) throw SpecError("snapshot updates take a bit");
            if (process.value < 1 || process.slot() >= bits.size()) throw SpecError("process has no snapshot component");
            bits[process.slot()] = static_cast<std::uint8_t>(*v);
            return std::nullopt;
          },
      },
      repr_);
}

void SpecState::append_key(std::string& out) const {
  std::visit(overloaded{
                 [&](std::int64_t sum) { out.append(reinterpret_cast<const char*>(&sum), sizeof sum); },
                 [&](double sum) { out.append(reinterpret_cast<const char*>(&sum), sizeof sum); },
                 [&](const CountMinSketch& sketch) {
                   const auto& cells = sketch.cells();
                   out.append(reinterpret_cast<const char*>(cells.data()), cells.size() * sizeof(std::uint64_t));
                 },
                 [&](const BitVector& bits) { out.append(reinterpret_cast<const char*>(bits.data()), bits.size()); },
             },
             repr_);
}

SequentialSpec SequentialSpec::count_min(std::uint64_t seed, std::size_t width, std::size_t depth) {
  return Kind{CountMinSpec{SketchHashes::seeded(seed, width, depth), {}}};
}

SequentialSpec SequentialSpec::count_min(SketchHashes hashes, std::vector<std::vector<std::uint64_t>> initial) {
  return Kind{CountMinSpec{std::move(hashes), std::move(initial)}};
}

SpecState SequentialSpec::initial_state() const {
  return std::visit(overloaded{
                        [](const CounterSpec&) { return SpecState(std::int64_t{0}); },
                        [](const ParameterSpec&) { return SpecState(0.0); },
                        [](const CountMinSpec& cm) { return SpecState(CountMinSketch(cm.hashes, cm.initial)); },
                        [](const SnapshotSpec& s) { return SpecState(BitVector(s.components, 0)); },
                    },
                    kind_);
}

std::string SequentialSpec::name() const {
  return std::visit(overloaded{
                        [](const CounterSpec&) -> std::string { return "counter"; },
                        [](const ParameterSpec&) -> std::string { return "parameter"; },
                        [](const CountMinSpec& cm) -> std::string {
                          return "countmin(w=" + std::to_string(cm.hashes.width()) + ",d=" + std::to_string(cm.hashes.depth()) + ")";
                        },
                        [](const SnapshotSpec& s) -> std::string { return "snapshot(n=" + std::to_string(s.components) + ")"; },
                    },
                    kind_);
}

const SequentialSpec& SpecBinding::for_object(const std::string& object) const {
  auto it = per_object_.find(object);
  if (it != per_object_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw SpecError("no sequential specification for object '" + object + "'");
}

History tau(const SpecBinding& spec, const History& s) {
  if (!is_sequential(s)) throw SpecError("tau needs a sequential history");
  std::map<std::string, SpecState> states;
  std::vector<Event> out = s.events();
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto& inv = out[i];
    auto it = states.find(inv.object);
    if (it == states.end()) it = states.emplace(inv.object, spec.for_object(inv.object).initial_state()).first;
    out[i + 1].ret = it->second.apply(inv.process, inv.op);
  }
  return History(std::move(out));
}

History tau_counter(const History& s) { return tau(SequentialSpec::counter(), s); }

History tau_parameter(const History& s) { return tau(SequentialSpec::parameter(), s); }

History tau_countmin(std::uint64_t seed, std::size_t width, std::size_t depth, const History& s) {
  return tau(SequentialSpec::count_min(seed, width, depth), s);
}

}  // namespace ivl
