#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tokgraph {

// Enumerates the set partitions of {0, ..., n-1} as restricted-growth strings
// (a[0] = 0, a[i] <= 1 + max(a[0..i-1])) in lexicographic order. The first
// string is all zeros (one block), the last is 0,1,...,n-1 (singletons).
class RestrictedGrowthStrings {
 public:
  explicit RestrictedGrowthStrings(std::size_t n) : code_(n, 0), prefix_max_(n, 0) {}

  const std::vector<int>& current() const noexcept { return code_; }
  std::size_t block_count() const noexcept {
    return code_.empty() ? 0 : static_cast<std::size_t>(prefix_max_.back()) + 1;
  }

  // Advances to the lexicographic successor; false when exhausted.
  bool next() {
    for (std::size_t i = code_.size(); i-- > 1;) {
      if (code_[i] <= prefix_max_[i - 1]) {
        ++code_[i];
        prefix_max_[i] = std::max(prefix_max_[i - 1], code_[i]);
        for (std::size_t j = i + 1; j < code_.size(); ++j) {
          code_[j] = 0;
          prefix_max_[j] = prefix_max_[i];
        }
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<int> code_;
  std::vector<int> prefix_max_;
};

// Bell number B(n) by the Bell triangle; exact for n <= 25.
inline std::uint64_t bell_number(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

// Groups element indices by their restricted-growth code.
inline std::vector<std::vector<int>> blocks_from_code(const std::vector<int>& code) {
  int blocks = 0;
  for (int c : code) blocks = std::max(blocks, c + 1);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks));
  for (std::size_t i = 0; i < code.size(); ++i)
    out[static_cast<std::size_t>(code[i])].push_back(static_cast<int>(i));
  return out;
}

}  // namespace tokgraph
