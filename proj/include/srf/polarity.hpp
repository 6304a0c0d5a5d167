#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srf/bits.hpp"
#include "srf/sort.hpp"

namespace srf {

/// A subset of one carrier of a frame, tagged with the carrier's sort.
struct SortedSet {
  Sort sort = Sort::one;
  PointSet members;

  bool operator==(const SortedSet&) const = default;
};

/// A polarity (X, ⊥, Y). ⊥ is stored row-wise; I is its complement.
class SortedFrame {
 public:
  SortedFrame() = default;
  /// gal_rows[x] is the set of y with x ⊥ y.
  SortedFrame(std::vector<std::string> xs, std::vector<std::string> ys, std::vector<PointSet> gal_rows);

  std::size_t size(Sort s) const noexcept { return s == Sort::one ? xs_.size() : ys_.size(); }
  const std::vector<std::string>& names(Sort s) const noexcept { return s == Sort::one ? xs_ : ys_; }
  const std::string& name(Sort s, std::size_t u) const { return names(s).at(u); }
  std::optional<std::size_t> find(Sort s, std::string_view name) const;

  bool gal(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  bool rel(std::size_t x, std::size_t y) const { return !rows_[x][y]; }  // I

  /// {u}′: the row {x}⊥ for sort one, the column ⊥{y} for sort dual.
  const PointSet& prime_point(Sort s, std::size_t u) const { return s == Sort::one ? rows_[u] : cols_[u]; }
  const std::vector<PointSet>& rows() const noexcept { return rows_; }
  const std::vector<PointSet>& cols() const noexcept { return cols_; }

  /// Γu = {w : u ≼ w}.
  const PointSet& gamma(Sort s, std::size_t u) const { return s == Sort::one ? up_x_[u] : up_y_[u]; }
  bool below(Sort s, std::size_t u, std::size_t w) const { return gamma(s, u)[w]; }

  SortedSet empty(Sort s) const { return {s, PointSet(size(s))}; }
  SortedSet full(Sort s) const { return {s, full_set(size(s))}; }
  SortedSet point_set(Sort s, std::size_t u) const { return {s, singleton(size(s), u)}; }

  bool operator==(const SortedFrame& o) const { return xs_ == o.xs_ && ys_ == o.ys_ && rows_ == o.rows_; }

 private:
  std::vector<std::string> xs_, ys_;
  std::vector<PointSet> rows_, cols_;
  std::vector<PointSet> up_x_, up_y_;
};

/// U ↦ U⊥ (sort one) or V ↦ ⊥V (sort dual).
SortedSet galois_map(const SortedFrame& f, const SortedSet& u);
SortedSet closure(const SortedFrame& f, const SortedSet& u);
bool is_galois(const SortedFrame& f, const SortedSet& u);

enum class Residuated {
  diamond_xy,  // ◇U ⊆ Y, for U ⊆ X
  box_yx,      // □V ⊆ X, for V ⊆ Y
  diamond_yx,  // ◆V ⊆ X, for V ⊆ Y
  box_xy,      // ■U ⊆ Y, for U ⊆ X
};

/// Throws sort_mismatch when the argument's sort does not fit the direction.
SortedSet residuated_pair(const SortedFrame& f, const SortedSet& w, Residuated which);

SortedSet complement(const SortedSet& s);

/// up[u] = Γu for each sort.
struct Preorders {
  std::vector<PointSet> one, dual;
};
Preorders sort_preorder(const SortedFrame& f);

/// First pair of distinct equivalent points in scan order (sort one first).
std::optional<std::pair<Sort, std::pair<std::size_t, std::size_t>>> separation_witness(const SortedFrame& f);
bool check_separated(const SortedFrame& f);

SortedSet upper_closure(const SortedFrame& f, Sort s, std::size_t u);

struct GaloisSet {
  PointSet members;
  std::optional<std::size_t> closed_by;  // some u with Γu = members
  std::optional<std::size_t> open_by;    // some v of the other sort with {v}′ = members

  bool closed() const noexcept { return closed_by.has_value(); }
  bool open() const noexcept { return open_by.has_value(); }
  bool clopen() const noexcept { return closed() && open(); }
  std::string_view kind() const noexcept;  // "clopen", "closed", "open", "other"
};

/// All Galois sets of one sort, ordered by canonical_less. Meet is
/// intersection, join is closure of union.
struct GaloisSetLattice {
  Sort sort = Sort::one;
  std::vector<GaloisSet> sets;
  std::vector<std::size_t> meet_table, join_table;
  std::size_t bot = 0, top = 0;

  std::size_t size() const noexcept { return sets.size(); }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_table[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_table[a * size() + b]; }
  std::optional<std::size_t> index_of(const PointSet& s) const;

  std::map<PointSet, std::size_t> index;
};

struct EnumerationOptions {
  enum class Method { automatic, brute_force, lectic };
  std::size_t max_pairs = std::size_t{1} << 14;
  Method method = Method::automatic;
  std::size_t brute_force_limit = 16;  // carrier size up to which automatic uses brute force
};

/// Throws scale_exceeded when |X|·|Y| exceeds the cap, or when brute force is
/// requested on a carrier above the limit.
GaloisSetLattice enumerate_galois_sets(const SortedFrame& f, Sort s, const EnumerationOptions& opts = {});

/// Fixed points of `close` over an n-element carrier in lectic order.
template <class Close>
std::vector<PointSet> next_closure_all(std::size_t n, Close&& close) {
  std::vector<PointSet> out;
  PointSet a = close(PointSet(n));
  out.push_back(a);
  while (!a.all()) {
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (a[i]) {
        a.reset(i);
        continue;
      }
      PointSet b = a;
      b.set(i);
      b = close(b);
      PointSet low(n);
      for (std::size_t j = 0; j < i; ++j) low.set(j);
      if ((b & low).is_subset_of(a)) {
        a = std::move(b);
        out.push_back(a);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace srf
