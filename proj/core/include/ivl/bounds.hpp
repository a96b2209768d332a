#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ivl/rng.hpp"

// Empirical checks of the (epsilon, delta) guarantee of CountMin, sequentially and for the
// parallel sketch under real threads.
//
// A query of item a is a lower violation when it returns less than f_start (the count of a
// before the query began) and an upper violation when it returns more than f_end + epsilon
// (the count of a when it ended, plus epsilon). Sequentially f_start = f_end = the exact
// count. epsilon = alpha * n with n the stream length when the query ends.

namespace ivl {

struct Dimensions {
  std::size_t width = 0;
  std::size_t depth = 0;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// w = ceil(e / alpha), d = ceil(ln(1 / delta)), the standard CountMin sizing.
/// Throws std::invalid_argument unless 0 < alpha < 1 and 0 < delta < 1.
Dimensions dims_for(double alpha, double delta);

/// Zipf distribution over ranks 0..size-1: P(k) proportional to (k + 1)^-exponent.
class ZipfDistribution {
 public:
  ZipfDistribution(std::size_t size, double exponent);

  std::uint64_t operator()(Rng& rng) const;
  double probability(std::size_t rank) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// `length` item keys drawn independently from `dist`.
std::vector<std::uint64_t> zipf_stream(const ZipfDistribution& dist, std::size_t length, std::uint64_t seed);

struct ValidationConfig {
  double alpha = 0.01;
  double delta = 0.01;
  std::size_t stream_length = 100'000;
  std::size_t alphabet = 10'000;
  double zipf_exponent = 1.1;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  /// Queried items per trial: the heaviest ranks plus uniformly drawn ones.
  std::size_t heavy_queries = 16;
  std::size_t random_queries = 16;
  /// Sequential validation queries the whole query set at this many evenly spaced points.
  std::size_t checkpoints = 4;
  /// Concurrent validation: writer threads, and a cap on the query thread's operations.
  std::size_t writers = 4;
  std::size_t max_concurrent_queries = 2'000;
  /// Overrides dims_for(alpha, delta).
  std::optional<Dimensions> dims;
  /// key mod w hashing; with w >= alphabet every item gets its own counter.
  bool identity_hashes = false;
};

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t stream_seed = 0;
  std::uint64_t hash_seed = 0;
  std::size_t queries = 0;
  std::size_t lower_violations = 0;
  std::size_t upper_violations = 0;
  std::size_t joint_violations = 0;  // queries violating either side
  std::uint64_t max_overestimate = 0;  // largest ret - f_end seen
};

struct ErrorReport {
  ValidationConfig config;
  Dimensions dims;
  std::vector<TrialOutcome> outcomes;

  std::size_t queries() const;
  std::size_t lower_violations() const;
  std::size_t upper_violations() const;
  std::size_t joint_violations() const;
  /// Violations per query, pooled over all trials.
  double lower_rate() const;
  double upper_rate() const;
  double joint_rate() const;
  /// Fraction of trials with at least one violating query.
  double trial_rate() const;
  /// No underestimates, and the joint rate within delta plus binomial slack.
  bool passes() const;
};

/// 3 * sqrt(delta (1 - delta) / trials).
double binomial_tolerance(double delta, std::size_t trials);

/// Stream and hash seeds of a trial. They come from disjoint derivations of the master
/// seed, so the input never depends on the hash coefficients.
std::uint64_t stream_seed(std::uint64_t master, std::size_t trial);
std::uint64_t hash_seed(std::uint64_t master, std::size_t trial);

/// Items queried in a trial; drawn from the stream side of the seed.
std::vector<std::uint64_t> query_set(const ValidationConfig& config, std::size_t trial);

ErrorReport validate_sequential(const ValidationConfig& config);

/// Each trial stress-runs a parallel sketch with `writers` threads splitting the stream
/// round-robin and one more thread querying until they finish. f_start and f_end come from
/// the recorded history.
ErrorReport validate_concurrent(const ValidationConfig& config);

/// Concurrent joint rate at most the sequential one plus two pooled standard errors.
bool within_sequential_rate(const ErrorReport& sequential, const ErrorReport& concurrent);

}  // namespace ivl
