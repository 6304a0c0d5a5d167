#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace srf {

using PointSet = boost::dynamic_bitset<>;

inline PointSet empty_set(std::size_t n) { return PointSet(n); }

inline PointSet full_set(std::size_t n) {
  PointSet s(n);
  s.set();
  return s;
}

inline PointSet singleton(std::size_t n, std::size_t i) {
  PointSet s(n);
  s.set(i);
  return s;
}

template <class F>
void for_each_member(const PointSet& s, F&& f) {
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) f(i);
}

std::vector<std::size_t> members(const PointSet& s);

/// Deterministic order on subsets of one carrier: by cardinality, then by
/// the ascending list of member indices.
bool canonical_less(const PointSet& a, const PointSet& b);

/// Subset of an n-element carrier whose members are the set bits of `mask`.
PointSet from_mask(std::size_t n, unsigned long long mask);

}  // namespace srf
