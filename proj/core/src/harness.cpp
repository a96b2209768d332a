#include "ivl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace ivl {

std::unique_ptr<StepObject> default_factory(const ObjectDecl& decl) { return make_step_object(decl.config); }

Replayer::Replayer(const Schedule& schedule, const ObjectFactory& factory) : processes_(schedule.processes) {
  for (const auto& decl : schedule.objects) {
    if (objects_.contains(decl.name)) throw ScheduleError("object '" + decl.name + "' declared twice");
    objects_.emplace(decl.name, factory(decl));
  }
}

StepObject& Replayer::object(const std::string& name) {
  auto it = objects_.find(name);
  if (it == objects_.end()) throw ScheduleError("undeclared object '" + name + "'");
  return *it->second;
}

bool Replayer::in_flight(ProcessId p) const { return flights_.contains(p.value); }

int Replayer::steps_taken(ProcessId p) const {
  auto it = flights_.find(p.value);
  return it == flights_.end() ? 0 : it->second.stepper->steps();
}

Replayer::Flight& Replayer::flight_of(ProcessId p) {
  auto it = flights_.find(p.value);
  if (it == flights_.end()) throw ScheduleError("process " + std::to_string(p.value) + " has no operation in flight");
  return it->second;
}

void Replayer::respond(ProcessId p) {
  auto& f = flight_of(p);
  events_.push_back(Event{next_seq_++, p, f.object, EventKind::Respond, f.op, f.stepper->result()});
  flights_.erase(p.value);
  history_ = History(events_);
}

void Replayer::apply(const ScheduleEntry& entry) {
  if (const auto* inv = std::get_if<InvokeEntry>(&entry)) {
    const auto p = inv->process;
    if (p.value < 1 || static_cast<std::size_t>(p.value) > processes_)
      throw ScheduleError("process " + std::to_string(p.value) + " is outside 1.." + std::to_string(processes_));
    if (in_flight(p)) throw ScheduleError("process " + std::to_string(p.value) + " invokes while an operation is in flight");
    auto& obj = object(inv->object);
    std::unique_ptr<OpStepper> stepper;
    try {
      stepper = obj.begin(p, inv->op);
    } catch (const std::invalid_argument& e) {
      throw ScheduleError(e.what());
    } catch (const std::out_of_range& e) {
      throw ScheduleError(e.what());
    }
    events_.push_back(Event{next_seq_++, p, inv->object, EventKind::Invoke, inv->op, std::nullopt});
    const bool immediate = stepper->done();
    flights_.emplace(p.value, Flight{inv->object, inv->op, std::move(stepper)});
    if (immediate)
      respond(p);
    else
      history_ = History(events_);
    return;
  }
  if (const auto* st = std::get_if<StepEntry>(&entry)) {
    auto& f = flight_of(st->process);
    if (f.stepper->step()) respond(st->process);
    return;
  }
  const auto p = std::get<RunEntry>(entry).process;
  auto& f = flight_of(p);
  while (!f.stepper->step()) {
  }
  respond(p);
}

History replay(const Schedule& schedule, const ObjectFactory& factory) {
  Replayer r(schedule, factory);
  for (const auto& e : schedule.entries) r.apply(e);
  return r.take_history();
}

FuzzParams fuzz_params_for(ObjectKind kind, std::size_t processes, std::size_t ops) {
  FuzzParams p;
  p.processes = processes;
  p.ops = ops;
  ObjectDecl d;
  d.name = "x";
  d.config.kind = kind;
  d.config.processes = processes;
  d.config.width = 4;
  d.config.depth = 2;
  d.config.seed = 1;
  p.objects.push_back(d);
  return p;
}

Operation random_operation(ObjectKind kind, const FuzzParams& params, Rng& rng) {
  const bool update = rng.chance(params.update_fraction);
  switch (kind) {
    case ObjectKind::Counter:
    case ObjectKind::LockedCounter:
      return update ? Operation::update(rng.between(1, params.max_value)) : Operation::read();
    case ObjectKind::Parameter:
    case ObjectKind::NaiveAdder: {
      if (!update) return Operation::read();
      auto magnitude = rng.between(1, params.max_value);
      return Operation::update(rng.chance(0.5) ? magnitude : -magnitude);
    }
    case ObjectKind::Pcm: {
      auto symbol = params.alphabet.at(rng.below(params.alphabet.size()));
      return update ? Operation::update(symbol) : Operation::query(symbol);
    }
    case ObjectKind::Snapshot:
      return update ? Operation::update(static_cast<std::int64_t>(rng.below(2))) : Operation::scan();
  }
  return Operation::read();
}

Schedule random_schedule(std::uint64_t seed, const FuzzParams& params, const ObjectFactory& factory) {
  if (params.objects.empty()) throw ScheduleError("random schedules need at least one object");
  Schedule s;
  s.name = "random-" + std::to_string(seed);
  s.processes = params.processes;
  s.seed = seed;
  s.objects = params.objects;
  for (auto& o : s.objects) o.config.processes = params.processes;

  Rng rng(mix_seed(seed, 0x5343484544ULL));  // small consecutive seeds seed the engine poorly
  Replayer sim(s, factory);
  std::size_t remaining = params.ops;
  while (true) {
    std::vector<ScheduleEntry> moves;
    for (std::size_t i = 1; i <= params.processes; ++i) {
      const ProcessId p(static_cast<int>(i));
      if (sim.in_flight(p))
        moves.emplace_back(StepEntry{p});
      else if (remaining > 0)
        moves.emplace_back(InvokeEntry{p, {}, {}});
    }
    if (moves.empty()) break;
    if (remaining == 0 && rng.chance(params.stop_probability)) break;
    auto move = moves[rng.below(moves.size())];
    if (auto* inv = std::get_if<InvokeEntry>(&move)) {
      const auto& decl = s.objects[rng.below(s.objects.size())];
      inv->object = decl.name;
      inv->op = random_operation(decl.config.kind, params, rng);
      --remaining;
    }
    sim.apply(move);
    s.entries.push_back(std::move(move));
  }
  return s;
}

Workload random_workload(ObjectKind kind, const FuzzParams& params, std::uint64_t seed, std::size_t ops_per_process) {
  auto rngs = std::make_shared<std::vector<Rng>>();
  for (std::size_t p = 0; p <= params.processes; ++p) rngs->emplace_back(mix_seed(seed, p));
  return [=](ProcessId p, std::size_t index) -> std::optional<Invocation> {
    if (index >= ops_per_process) return std::nullopt;
    auto& rng = (*rngs)[std::min<std::size_t>(static_cast<std::size_t>(p.value), rngs->size() - 1)];
    return Invocation{"x", random_operation(kind, params, rng)};
  };
}

History stress_run(std::map<std::string, StepObject*> objects, const StressConfig& config, const Workload& workload) {
  for (const auto& [name, obj] : objects)
    if (config.threads > obj->config().processes)
      throw std::invalid_argument("object '" + name + "' has fewer processes than stress threads");

  std::atomic<std::uint64_t> ticket{0};
  auto next_ticket = [&ticket] {
    auto t = ticket.fetch_add(1, std::memory_order_seq_cst) + 1;
    if (t == std::numeric_limits<std::uint64_t>::max()) std::terminate();  // sequencer overflow
    return t;
  };
  const auto deadline = std::chrono::steady_clock::now() + config.duration;
  std::vector<std::vector<Event>> logs(config.threads);
  std::vector<std::exception_ptr> errors(config.threads);

  auto body = [&](std::size_t t) {
    const ProcessId p(static_cast<int>(t + 1));
    auto& log = logs[t];
    try {
      for (std::size_t i = 0;; ++i) {
        if (config.duration.count() > 0 && std::chrono::steady_clock::now() >= deadline) break;
        auto next = workload(p, i);
        if (!next) break;
        auto it = objects.find(next->object);
        if (it == objects.end()) throw std::invalid_argument("unknown object '" + next->object + "'");
        auto stepper = it->second->begin(p, next->op);
        log.push_back(Event{next_ticket(), p, next->object, EventKind::Invoke, next->op, std::nullopt});
        while (!stepper->done()) stepper->step();
        auto ret = stepper->result();
        log.push_back(Event{next_ticket(), p, std::move(next->object), EventKind::Respond, std::move(next->op), std::move(ret)});
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(config.threads);
  for (std::size_t t = 0; t < config.threads; ++t) threads.emplace_back(body, t);
  for (auto& th : threads) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Event> events;
  std::size_t total = 0;
  for (const auto& log : logs) total += log.size();
  events.reserve(total);
  for (auto& log : logs) std::move(log.begin(), log.end(), std::back_inserter(events));
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.seq < b.seq; });
  return History(std::move(events));
}

History stress_run(StepObject& object, const StressConfig& config, const Workload& workload) {
  return stress_run(std::map<std::string, StepObject*>{{"x", &object}}, config, workload);
}

}  // namespace ivl
