#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace spbmaxsat {

// Set of small unsigned integers in [0, capacity) with O(1) insert, erase
// and membership, stored densely so a uniform random member is one index
// away. Erase swaps the last member into the hole, so iteration order
// depends on the operation history.
class IndexedSet {
 public:
  IndexedSet() = default;
  explicit IndexedSet(std::size_t capacity) : pos_(capacity, kAbsent) {}

  void reset(std::size_t capacity) {
    items_.clear();
    pos_.assign(capacity, kAbsent);
  }

  bool contains(std::uint32_t x) const { return pos_[x] != kAbsent; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  std::uint32_t operator[](std::size_t i) const { return items_[i]; }
  std::span<const std::uint32_t> items() const { return items_; }

  void insert(std::uint32_t x) {
    if (pos_[x] != kAbsent) return;
    pos_[x] = static_cast<std::uint32_t>(items_.size());
    items_.push_back(x);
  }

  void erase(std::uint32_t x) {
    const std::uint32_t p = pos_[x];
    if (p == kAbsent) return;
    const std::uint32_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[x] = kAbsent;
  }

  void clear() {
    for (std::uint32_t x : items_) pos_[x] = kAbsent;
    items_.clear();
  }

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> items_;
  std::vector<std::uint32_t> pos_;
};

}  // namespace spbmaxsat
