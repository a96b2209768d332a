#include "ivl/countmin.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ivl {

CountMinSketch::CountMinSketch(SketchHashes hashes) : hashes_(std::move(hashes)), cells_(hashes_.width() * hashes_.depth(), 0) {}

CountMinSketch::CountMinSketch(SketchHashes hashes, const std::vector<std::vector<std::uint64_t>>& initial)
    : CountMinSketch(std::move(hashes)) {
  if (initial.empty()) return;
  if (initial.size() != depth()) throw std::invalid_argument("initial matrix needs one row per hash");
  for (std::size_t r = 0; r < depth(); ++r) {
    if (initial[r].size() != width()) throw std::invalid_argument("initial matrix row has the wrong width");
    for (std::size_t c = 0; c < width(); ++c) cells_[r * width() + c] = initial[r][c];
  }
}

void CountMinSketch::bump(std::size_t row, std::size_t column) {
  auto& cell = cells_[row * width() + column];
  if (cell == std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("CountMin counter overflow");
  ++cell;
}

void CountMinSketch::update(const Arg& item) {
  for (std::size_t r = 0; r < depth(); ++r) bump(r, hashes_.bucket(r, item));
}

void CountMinSketch::update_key(std::uint64_t key) {
  for (std::size_t r = 0; r < depth(); ++r) bump(r, hashes_.bucket(r, key));
}

std::uint64_t CountMinSketch::query(const Arg& item) const {
  auto best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t r = 0; r < depth(); ++r) best = std::min(best, counter(r, hashes_.bucket(r, item)));
  return best;
}

std::uint64_t CountMinSketch::query_key(std::uint64_t key) const {
  auto best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t r = 0; r < depth(); ++r) best = std::min(best, counter(r, hashes_.bucket(r, key)));
  return best;
}

}  // namespace ivl
