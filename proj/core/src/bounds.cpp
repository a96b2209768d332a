#include "ivl/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "ivl/countmin.hpp"
#include "ivl/harness.hpp"
#include "ivl/intervals.hpp"

namespace ivl {

namespace {

constexpr std::uint64_t kStreamTag = 0x5354524541ULL;
constexpr std::uint64_t kHashTag = 0x48415348ULL;
constexpr std::uint64_t kQueryStream = 1ULL << 32;

// ceil() of a value that should be an exact integer but picked up rounding error, such as
// ln(1 / (1/e)), lands one too high without the nudge.
std::size_t ceil_nudged(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }

Dimensions dims_of(const ValidationConfig& c) {
  auto d = c.dims ? *c.dims : dims_for(c.alpha, c.delta);
  if (c.identity_hashes && !c.dims) d.width = std::max(d.width, c.alphabet);
  return d;
}

SketchHashes hashes_for(const ValidationConfig& c, const Dimensions& d, std::size_t trial) {
  if (c.identity_hashes) return SketchHashes::identity(d.width, d.depth);
  return SketchHashes::seeded(hash_seed(c.seed, trial), d.width, d.depth);
}

void score(TrialOutcome& t, std::uint64_t ret, std::uint64_t f_start, std::uint64_t f_end, double epsilon) {
  ++t.queries;
  const bool lower = ret < f_start;
  const bool upper = static_cast<double>(ret) > static_cast<double>(f_end) + epsilon;
  t.lower_violations += lower;
  t.upper_violations += upper;
  t.joint_violations += lower || upper;
  if (ret > f_end) t.max_overestimate = std::max(t.max_overestimate, ret - f_end);
}

double rate(std::size_t hits, std::size_t total) { return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total); }

}  // namespace

Dimensions dims_for(double alpha, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return {ceil_nudged(std::numbers::e / alpha), std::max<std::size_t>(1, ceil_nudged(std::log(1.0 / delta)))};
}

ZipfDistribution::ZipfDistribution(std::size_t size, double exponent) {
  if (size == 0) throw std::invalid_argument("Zipf alphabet must be non-empty");
  if (!(exponent > 0.0)) throw std::invalid_argument("Zipf exponent must be positive");
  cdf_.resize(size);
  double total = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    total += std::pow(static_cast<double>(k + 1), -exponent);
    cdf_[k] = total;
  }
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::uint64_t ZipfDistribution::operator()(Rng& rng) const {
  const double u = rng.unit();
  return static_cast<std::uint64_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
}

double ZipfDistribution::probability(std::size_t rank) const {
  return rank == 0 ? cdf_[0] : cdf_.at(rank) - cdf_[rank - 1];
}

std::vector<std::uint64_t> zipf_stream(const ZipfDistribution& dist, std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> out(length);
  for (auto& x : out) x = dist(rng);
  return out;
}

std::size_t ErrorReport::queries() const {
  std::size_t n = 0;
  for (const auto& t : outcomes) n += t.queries;
  return n;
}

std::size_t ErrorReport::lower_violations() const {
  std::size_t n = 0;
  for (const auto& t : outcomes) n += t.lower_violations;
  return n;
}

std::size_t ErrorReport::upper_violations() const {
  std::size_t n = 0;
  for (const auto& t : outcomes) n += t.upper_violations;
  return n;
}

std::size_t ErrorReport::joint_violations() const {
  std::size_t n = 0;
  for (const auto& t : outcomes) n += t.joint_violations;
  return n;
}

double ErrorReport::lower_rate() const { return rate(lower_violations(), queries()); }
double ErrorReport::upper_rate() const { return rate(upper_violations(), queries()); }
double ErrorReport::joint_rate() const { return rate(joint_violations(), queries()); }

double ErrorReport::trial_rate() const {
  const auto bad = std::count_if(outcomes.begin(), outcomes.end(), [](const TrialOutcome& t) { return t.joint_violations > 0; });
  return rate(static_cast<std::size_t>(bad), outcomes.size());
}

bool ErrorReport::passes() const {
  return lower_violations() == 0 && joint_rate() <= config.delta + binomial_tolerance(config.delta, outcomes.size());
}

double binomial_tolerance(double delta, std::size_t trials) {
  if (trials == 0) return 1.0;
  return 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

std::uint64_t stream_seed(std::uint64_t master, std::size_t trial) { return mix_seed(mix_seed(master, kStreamTag), trial); }
std::uint64_t hash_seed(std::uint64_t master, std::size_t trial) { return mix_seed(mix_seed(master, kHashTag), trial); }

std::vector<std::uint64_t> query_set(const ValidationConfig& config, std::size_t trial) {
  std::vector<std::uint64_t> out;
  const auto heavy = std::min(config.heavy_queries, config.alphabet);
  for (std::uint64_t k = 0; k < heavy; ++k) out.push_back(k);
  Rng rng(mix_seed(stream_seed(config.seed, trial), kQueryStream));
  for (std::size_t i = 0; i < config.random_queries; ++i) out.push_back(rng.below(config.alphabet));
  return out;
}

ErrorReport validate_sequential(const ValidationConfig& config) {
  ErrorReport report{config, dims_of(config), {}};
  const ZipfDistribution dist(config.alphabet, config.zipf_exponent);
  const auto checkpoints = std::max<std::size_t>(1, config.checkpoints);
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    TrialOutcome t{trial, stream_seed(config.seed, trial), hash_seed(config.seed, trial)};
    const auto stream = zipf_stream(dist, config.stream_length, t.stream_seed);
    const auto queries = query_set(config, trial);
    CountMinSketch sketch(hashes_for(config, report.dims, trial));
    std::vector<std::uint64_t> exact(config.alphabet, 0);

    std::size_t fed = 0;
    for (std::size_t c = 1; c <= checkpoints; ++c) {
      const auto until = config.stream_length * c / checkpoints;
      for (; fed < until; ++fed) {
        sketch.update_key(stream[fed]);
        ++exact[stream[fed]];
      }
      const double epsilon = config.alpha * static_cast<double>(fed);
      for (auto q : queries) score(t, sketch.query_key(q), exact[q], exact[q], epsilon);
    }
    report.outcomes.push_back(t);
  }
  return report;
}

ErrorReport validate_concurrent(const ValidationConfig& config) {
  if (config.writers == 0) throw std::invalid_argument("concurrent validation needs at least one writer");
  ErrorReport report{config, dims_of(config), {}};
  const ZipfDistribution dist(config.alphabet, config.zipf_exponent);
  const auto writers = config.writers;

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    TrialOutcome t{trial, stream_seed(config.seed, trial), hash_seed(config.seed, trial)};
    const auto stream = zipf_stream(dist, config.stream_length, t.stream_seed);
    const auto queries = query_set(config, trial);

    ObjectConfig oc;
    oc.kind = ObjectKind::Pcm;
    oc.processes = writers + 1;
    oc.width = report.dims.width;
    oc.depth = report.dims.depth;
    oc.seed = t.hash_seed;
    oc.identity_hashes = config.identity_hashes;
    auto sketch = make_step_object(oc);

    std::atomic<std::size_t> finished{0};
    Workload workload = [&](ProcessId p, std::size_t index) -> std::optional<Invocation> {
      const auto slot = p.slot();
      if (slot < writers) {
        const auto i = index * writers + slot;
        if (i >= stream.size()) {
          finished.fetch_add(1);
          return std::nullopt;
        }
        return Invocation{"x", Operation::update(static_cast<std::int64_t>(stream[i]))};
      }
      if (index >= config.max_concurrent_queries || finished.load() == writers) return std::nullopt;
      if (index % 4 == 3) std::this_thread::yield();
      return Invocation{"x", Operation::query(static_cast<std::int64_t>(queries[index % queries.size()]))};
    };
    const auto history = stress_run(*sketch, StressConfig{writers + 1, {}}, workload);

    for (const auto& f : frequency_intervals(history))
      score(t, f.ret, f.f_start, f.f_end, config.alpha * static_cast<double>(f.stream_end));
    report.outcomes.push_back(t);
  }
  return report;
}

bool within_sequential_rate(const ErrorReport& sequential, const ErrorReport& concurrent) {
  const double n1 = static_cast<double>(sequential.queries());
  const double n2 = static_cast<double>(concurrent.queries());
  if (n1 == 0 || n2 == 0) return true;
  const double pooled = static_cast<double>(sequential.joint_violations() + concurrent.joint_violations()) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  return concurrent.joint_rate() <= sequential.joint_rate() + 2.0 * se;
}

}  // namespace ivl
