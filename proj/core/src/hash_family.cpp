#include "ivl/hash_family.hpp"

#include <random>
#include <stdexcept>

namespace ivl {

std::uint64_t symbol_key(std::string_view symbol) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : symbol) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t symbol_key(const Arg& item) {
  if (const auto* i = std::get_if<std::int64_t>(&item)) return static_cast<std::uint64_t>(*i);
  if (const auto* s = std::get_if<std::string>(&item)) return symbol_key(std::string_view(*s));
  throw std::invalid_argument("sketch items are integers or symbols");
}

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mod_mersenne61(u128 x) {
  constexpr std::uint64_t p = HashFamily::kPrime;
  std::uint64_t lo = static_cast<std::uint64_t>(x & p);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + (hi & p) + (hi >> 61);
  while (r >= p) r -= p;
  return r;
}

}  // namespace

HashFamily::HashFamily(std::uint64_t seed, std::size_t width, std::size_t depth) : seed_(seed), width_(width) {
  if (width == 0 || depth == 0) throw std::invalid_argument("sketch dimensions must be at least 1");
  std::mt19937_64 rng(seed);
  a_.reserve(depth);
  b_.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    a_.push_back(1 + rng() % (kPrime - 1));
    b_.push_back(rng() % kPrime);
  }
}

std::size_t HashFamily::bucket(std::size_t row, std::uint64_t key) const {
  const std::uint64_t x = mod_mersenne61(key);
  const auto ax = static_cast<u128>(a_[row]) * x + b_[row];
  return static_cast<std::size_t>(mod_mersenne61(ax) % width_);
}

SketchHashes::SketchHashes(Mode mode, std::size_t width, std::size_t depth, HashFamily family)
    : mode_(mode), width_(width), depth_(depth), family_(std::move(family)) {}

SketchHashes SketchHashes::seeded(std::uint64_t seed, std::size_t width, std::size_t depth) {
  return SketchHashes(Mode::Seeded, width, depth, HashFamily(seed, width, depth));
}

SketchHashes SketchHashes::pinned(std::size_t width, std::size_t depth, std::map<std::string, std::vector<std::size_t>> buckets) {
  SketchHashes h(Mode::Pinned, width, depth, HashFamily(0, width, depth));
  for (const auto& [symbol, rows] : buckets) {
    if (rows.size() != depth) throw std::invalid_argument("pinned hash for '" + symbol + "' needs one bucket per row");
    for (auto b : rows)
      if (b >= width) throw std::invalid_argument("pinned bucket out of range for '" + symbol + "'");
  }
  h.table_ = std::move(buckets);
  return h;
}

SketchHashes SketchHashes::identity(std::size_t width, std::size_t depth) {
  return SketchHashes(Mode::Identity, width, depth, HashFamily(0, width, depth));
}

std::size_t SketchHashes::bucket(std::size_t row, std::uint64_t key) const {
  switch (mode_) {
    case Mode::Seeded: return family_.bucket(row, key);
    case Mode::Identity: return static_cast<std::size_t>(key % width_);
    case Mode::Pinned: break;
  }
  throw std::invalid_argument("pinned hashes are looked up by symbol");
}

std::size_t SketchHashes::bucket(std::size_t row, const Arg& item) const {
  if (mode_ != Mode::Pinned) return bucket(row, symbol_key(item));
  const std::string name = format_arg(item);
  auto it = table_.find(name);
  if (it == table_.end()) throw std::invalid_argument("no pinned hash for symbol '" + name + "'");
  return it->second[row];
}

}  // namespace ivl
