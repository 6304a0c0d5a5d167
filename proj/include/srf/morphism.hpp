#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "srf/canonical.hpp"
#include "srf/order.hpp"
#include "srf/polarity.hpp"
#include "srf/relational.hpp"
#include "srf/report.hpp"

namespace srf {

/// π = (p, q) from `source` (F₂) to `target` (F₁); p : X₂ → X₁, q : Y₂ → Y₁.
/// Relations are matched by position.
struct WeakBoundedMorphism {
  FrameWithRelations source;
  FrameWithRelations target;
  std::vector<std::size_t> p, q;

  std::size_t operator()(Sort s, std::size_t w) const { return s == Sort::one ? p.at(w) : q.at(w); }
};

/// Throws precondition_failed when p or q is not a total map between the carriers.
void require_total(const WeakBoundedMorphism& pi);

/// p⁻¹(W) or q⁻¹(W), by sort.
SortedSet preimage(const WeakBoundedMorphism& pi, const SortedSet& w);

/// MAx1, MAx2, MAx3.
Report check_weak_bounded(const WeakBoundedMorphism& pi);

/// Per relation: MAx4:<R>, MAx4-set:<R>, MAx4-agree:<R>.
Report check_relation_condition(const WeakBoundedMorphism& pi);

/// MAx5, MAx6.
Report check_star_conditions(const WeakBoundedMorphism& pi);

/// Everything: MAx1-MAx6.
Report check_morphism(const WeakBoundedMorphism& pi);

/// π⁻¹ restricted to stable sets of the target, as a map between the
/// enumerated Galois-set lattices.
struct InducedHom {
  StableLattices from;  // target frame's Galois sets
  StableLattices to;    // source frame's Galois sets
  std::vector<std::size_t> map;  // on stable (sort one) sets
  Report checks;
};

/// Throws precondition_failed unless MAx1-MAx3 hold.
InducedHom induced_hom(const WeakBoundedMorphism& pi, const EnumerationOptions& opts = {});

struct DualMorphism {
  CanonicalFrame source;  // canonical frame of h's target
  CanonicalFrame target;  // canonical frame of h's source
  WeakBoundedMorphism pi;
  Report checks;          // MAx1-MAx6 and naturality
};

/// p(x*) = h⁻¹[x*], q(y*) = h⁻¹[y*]. Throws invalid_homomorphism.
DualMorphism dual_of_homomorphism(const LatticeHomomorphism& h, const EnumerationOptions& opts = {});

/// π⁻¹(ζ₁(a)) = ζ₁(h(a)) and π⁻¹(ζ∂(a)) = ζ∂(h(a)) for every a.
Check check_naturality(const LatticeHomomorphism& h, const DualMorphism& d);

struct LatticeRoundTrip {
  SetAlgebra clopens;
  std::vector<std::size_t> map;  // a ↦ index of ζ₁(a) among the clopens
  Report checks;
};

/// L against the clopen algebra of its canonical frame via a ↦ ζ₁(a).
LatticeRoundTrip roundtrip_lattice(const NLE& nle, const EnumerationOptions& opts = {});

struct FrameIso {
  std::vector<std::size_t> px, py;
};

/// Bijections preserving ⊥ and every relation in both directions. Throws
/// scale_exceeded above `max_points` per sort.
std::optional<FrameIso> find_frame_isomorphism(const FrameWithRelations& a, const FrameWithRelations& b,
                                               std::size_t max_points = 8);

struct FrameRoundTrip {
  SetAlgebra clopens;
  CanonicalFrame canonical;
  std::optional<FrameIso> iso;
  Report checks;
};

/// Throws precondition_failed unless the frame passes the star axioms.
FrameRoundTrip roundtrip_frame(const FrameWithRelations& fr, const EnumerationOptions& opts = {},
                               std::size_t max_points = 8);

/// The three statements of the X-side equivalence chain, each computed
/// independently: inclusion π⁻¹(◇₁A) ⊆ ◇₂π⁻¹(A) for every increasing A, for
/// every Γx, and MAx2.
struct ChainResult {
  bool all_monotone_sets = false;
  bool all_closed = false;
  bool back_condition = false;
  bool agree() const noexcept {
    return all_monotone_sets == all_closed && all_closed == back_condition;
  }
};
/// Enumerates subsets of X₁ (resp. Y₁); throws scale_exceeded above 16 points.
ChainResult diamond_chain(const WeakBoundedMorphism& pi);
/// Y-side: □₂π⁻¹(B) ⊆ π⁻¹(□₁B) for every decreasing B, for every −Γy, and MAx3.
ChainResult box_chain(const WeakBoundedMorphism& pi);

/// outer ∘ inner, where inner.target is outer.source.
WeakBoundedMorphism compose(const WeakBoundedMorphism& outer, const WeakBoundedMorphism& inner);

}  // namespace srf
