#pragma once

#include <variant>
#include <vector>

#include "srf/order.hpp"
#include "srf/polarity.hpp"
#include "srf/relational.hpp"
#include "srf/report.hpp"

namespace srf {

/// Filters as X, ideals as Y, both ordered by principal generator; x ⊥ y
/// iff x ∩ y ≠ ∅. Points are named "↑a" and "↓a".
SortedFrame canonical_polarity(const Lattice& l);

using Principal = std::variant<Filter, Ideal>;

/// f̂(u⃗): the filter (output tag 1) or ideal (output tag d) generated by
/// {f(a⃗) : a⃗ ∈ u⃗}. Throws sort_mismatch when u_j does not match input tag j.
Principal point_operator(const NLE& nle, const NormalOperator& f, const std::vector<Principal>& u);

/// w R u⃗ iff f̂(u⃗) ⊆ w, over the canonical polarity of nle's lattice.
SortedRelation canonical_relation(const NLE& nle, const SortedFrame& frame, const NormalOperator& f);

struct CanonicalFrame {
  NLE nle;
  FrameWithRelations frame;
  Report axioms;  // star level
  std::vector<Filter> filters;
  std::vector<Ideal> ideals;
};

CanonicalFrame canonical_frame(const NLE& nle, const EnumerationOptions& opts = {});

/// ζ₁(a) = {x : a ∈ x} and ζ∂(a) = {y : a ∈ y}. Throw unknown_element.
SortedSet zeta1(const CanonicalFrame& cf, Elem a);
SortedSet zetad(const CanonicalFrame& cf, Elem a);
SortedSet zeta1(const CanonicalFrame& cf, std::string_view a);
SortedSet zetad(const CanonicalFrame& cf, std::string_view a);

/// ζ₁ is a lattice embedding onto the clopens, represents every operator
/// (single-sorted and sorted forms), and the canonical relations and their
/// Galois duals are described elementwise.
Report verify_representation(const CanonicalFrame& cf, const EnumerationOptions& opts = {});

}  // namespace srf
