#include "ivl/objects.hpp"

namespace ivl {

AccessTally TallyBoard::total() const {
  AccessTally t;
  for (const auto& s : slots_) {
    t.reads += s.reads.load(std::memory_order_relaxed);
    t.writes += s.writes.load(std::memory_order_relaxed);
    t.rmws += s.rmws.load(std::memory_order_relaxed);
  }
  return t;
}

AccessTally TallyBoard::of(ProcessId p) const {
  auto i = static_cast<std::size_t>(p.value);
  const auto& s = slots_[i < slots_.size() ? i : 0];
  return {s.reads.load(std::memory_order_relaxed), s.writes.load(std::memory_order_relaxed), s.rmws.load(std::memory_order_relaxed)};
}

bool IvlParameter::Read::step() {
  if (done()) throw StepError("read already complete");
  if (!scan_) {
    auto& adder = (phase_ % 2 == 0) ? obj_->positive_ : obj_->negative_;
    scan_.emplace(adder.begin_read(process_));
  }
  ++steps_;
  if (scan_->step()) {
    seen_[phase_++] = scan_->result();
    scan_.reset();
  }
  return done();
}

void IvlParameter::update(ProcessId p, double v) {
  auto op = begin_update(p, v);
  while (!op.step()) {
  }
}

double IvlParameter::read(ProcessId p) {
  auto op = begin_read(p);
  while (!op.step()) {
  }
  return op.result();
}

AccessTally IvlParameter::tally() const {
  auto t = positive_.tally();
  t += negative_.tally();
  return t;
}

PcmSketch::PcmSketch(SketchHashes hashes, std::size_t processes, const std::vector<std::vector<std::uint64_t>>& initial)
    : hashes_(std::move(hashes)), cells_(hashes_.width() * hashes_.depth()), tally_(processes) {
  if (initial.empty()) return;
  if (initial.size() != depth()) throw std::invalid_argument("initial matrix needs one row per hash");
  for (std::size_t r = 0; r < depth(); ++r) {
    if (initial[r].size() != width()) throw std::invalid_argument("initial matrix row has the wrong width");
    for (std::size_t c = 0; c < width(); ++c) cells_[r * width() + c].store(initial[r][c]);
  }
}

bool PcmSketch::Update::step() {
  if (done()) throw StepError("update already complete");
  sketch_->tally_.rmw(process_);
  auto old = sketch_->cell(row_, item_).fetch_add(1, std::memory_order_seq_cst);
  if (old == std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("PCM counter overflow");
  ++row_;
  return done();
}

bool PcmSketch::Query::step() {
  if (done()) throw StepError("query already complete");
  sketch_->tally_.read(process_);
  auto c = sketch_->cell(row_, item_).load(std::memory_order_seq_cst);
  if (min_ > c) min_ = c;
  ++row_;
  return done();
}

void PcmSketch::update(ProcessId p, const Arg& item) {
  auto op = begin_update(p, item);
  while (!op.step()) {
  }
}

std::uint64_t PcmSketch::query(ProcessId p, const Arg& item) {
  auto op = begin_query(p, item);
  while (!op.step()) {
  }
  return op.result();
}

bool LockedCounter::Update::step() {
  if (done_) throw StepError("update already complete");
  std::lock_guard lock(counter_->mu_);
  counter_->tally_.rmw(process_);
  counter_->value_ += delta_;
  done_ = true;
  return true;
}

bool LockedCounter::Read::step() {
  if (done_) throw StepError("read already complete");
  std::lock_guard lock(counter_->mu_);
  counter_->tally_.read(process_);
  value_ = counter_->value_;
  done_ = true;
  return true;
}

void LockedCounter::update(ProcessId p, std::int64_t v) { begin_update(p, v).step(); }

std::uint64_t LockedCounter::read(ProcessId p) {
  auto op = begin_read(p);
  op.step();
  return op.result();
}

std::uint64_t LockedCounter::peek() const {
  std::lock_guard lock(mu_);
  return value_;
}

}  // namespace ivl
