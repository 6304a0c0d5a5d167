#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace srf {

/// Mixed-radix encoding of tuples. The first coordinate is most significant,
/// so index order is lexicographic tuple order.
class TupleIndexer {
 public:
  TupleIndexer() = default;
  explicit TupleIndexer(std::vector<std::size_t> radices);

  std::size_t arity() const noexcept { return radices_.size(); }
  std::size_t count() const noexcept { return count_; }
  std::size_t radix(std::size_t j) const { return radices_.at(j); }
  const std::vector<std::size_t>& radices() const noexcept { return radices_; }

  std::size_t encode(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> decode(std::size_t index) const;

  /// Advances `tuple` to its lexicographic successor; false after the last.
  bool next(std::vector<std::size_t>& tuple) const;

 private:
  std::vector<std::size_t> radices_;
  std::size_t count_ = 1;
};

/// Calls f(tuple) for every tuple in the product of the given index sets,
/// in lexicographic order. Does nothing if any factor is empty.
template <class Sets, class F>
void for_each_product(const Sets& sets, F&& f) {
  const std::size_t n = sets.size();
  std::vector<std::vector<std::size_t>> lists(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (auto i = sets[j].find_first(); i != sets[j].npos; i = sets[j].find_next(i))
      lists[j].push_back(i);
    if (lists[j].empty()) return;
  }
  std::vector<std::size_t> pos(n, 0), tuple(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) tuple[j] = lists[j][pos[j]];
    f(std::as_const(tuple));
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++pos[j] < lists[j].size()) break;
      pos[j] = 0;
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace srf
