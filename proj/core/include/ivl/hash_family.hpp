#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ivl/value.hpp"

namespace ivl {

/// Item key for hashing. Integer arguments map to themselves; symbols are FNV-1a hashed,
/// which is stable across platforms (std::hash is not).
std::uint64_t symbol_key(std::string_view symbol);
inline std::uint64_t symbol_key(const char* symbol) { return symbol_key(std::string_view(symbol)); }
std::uint64_t symbol_key(const Arg& item);

/// d pairwise-independent row hashes h_i(x) = ((a_i x + b_i) mod p) mod w with p = 2^61 - 1.
/// Coefficients come from the coin-flip seed only.
class HashFamily {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  HashFamily(std::uint64_t seed, std::size_t width, std::size_t depth);

  std::size_t bucket(std::size_t row, std::uint64_t key) const;

  std::size_t width() const { return width_; }
  std::size_t depth() const { return a_.size(); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::size_t width_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

/// The hash functions a sketch uses: a seeded family, a pinned per-symbol table (for
/// replaying hand-built examples), or the identity `key mod w` (collision-free when every
/// key is below w).
class SketchHashes {
 public:
  static SketchHashes seeded(std::uint64_t seed, std::size_t width, std::size_t depth);
  /// buckets[symbol][row], 0-based.
  static SketchHashes pinned(std::size_t width, std::size_t depth, std::map<std::string, std::vector<std::size_t>> buckets);
  static SketchHashes identity(std::size_t width, std::size_t depth);

  std::size_t bucket(std::size_t row, const Arg& item) const;
  std::size_t bucket(std::size_t row, std::uint64_t key) const;

  std::size_t width() const { return width_; }
  std::size_t depth() const { return depth_; }

  enum class Mode { Seeded, Pinned, Identity };
  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return family_.seed(); }
  const std::map<std::string, std::vector<std::size_t>>& table() const { return table_; }

 private:
  SketchHashes(Mode mode, std::size_t width, std::size_t depth, HashFamily family);

  Mode mode_;
  std::size_t width_;
  std::size_t depth_;
  HashFamily family_;
  std::map<std::string, std::vector<std::size_t>> table_;
};

}  // namespace ivl
