#pragma once

#include <cstdint>
#include <vector>

#include "ivl/hash_family.hpp"

namespace ivl {

/// Sequential CountMin: a d x w counter matrix, update bumps c[i][h_i(a)] in every row,
/// query returns the row-wise minimum.
class CountMinSketch {
 public:
  explicit CountMinSketch(SketchHashes hashes);
  /// Starts from a given matrix instead of zeros; initial[row][column].
  CountMinSketch(SketchHashes hashes, const std::vector<std::vector<std::uint64_t>>& initial);

  void update(const Arg& item);
  void update_key(std::uint64_t key);
  std::uint64_t query(const Arg& item) const;
  std::uint64_t query_key(std::uint64_t key) const;

  std::uint64_t counter(std::size_t row, std::size_t column) const { return cells_[row * width() + column]; }
  std::size_t width() const { return hashes_.width(); }
  std::size_t depth() const { return hashes_.depth(); }
  const SketchHashes& hashes() const { return hashes_; }
  const std::vector<std::uint64_t>& cells() const { return cells_; }

 private:
  void bump(std::size_t row, std::size_t column);

  SketchHashes hashes_;
  std::vector<std::uint64_t> cells_;
};

}  // namespace ivl
