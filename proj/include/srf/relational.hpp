#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srf/order.hpp"
#include "srf/polarity.hpp"
#include "srf/report.hpp"
#include "srf/tuple_index.hpp"

namespace srf {

/// (i_{n+1}; i_1 ... i_n): the output slot first, then the inputs.
struct SortType {
  Sort output = Sort::one;
  std::vector<Sort> inputs;

  std::size_t arity() const noexcept { return inputs.size(); }
  std::string to_string() const;  // e.g. "(d;1,d)"
  bool operator==(const SortType&) const = default;
};

/// Sort type of the relation that represents an operator of type t, and back.
SortType sort_type_of(const DistributionType& t);
DistributionType distribution_type_of(const SortType& s);

/// An (n+1)-ary relation stored as one section Ru⃗ per input tuple.
struct SortedRelation {
  std::string name;
  SortType sort;
  TupleIndexer index;             // over the input carriers
  std::vector<PointSet> sections;  // sections[index(u⃗)] = {w : w R u⃗}

  SortedRelation() = default;
  SortedRelation(std::string name, SortType sort, const SortedFrame& f);

  std::size_t arity() const noexcept { return sort.arity(); }
  const PointSet& at(std::span<const std::size_t> u) const { return sections[index.encode(u)]; }
  PointSet& at(std::span<const std::size_t> u) { return sections[index.encode(u)]; }
  bool holds(std::size_t w, std::span<const std::size_t> u) const { return at(u)[w]; }
  std::size_t tuple_count() const;

  bool operator==(const SortedRelation& o) const {
    return name == o.name && sort == o.sort && sections == o.sections;
  }
};

struct FrameWithRelations {
  std::string name;
  SortedFrame frame;
  std::vector<SortedRelation> relations;

  std::vector<SortType> tau() const;
  const SortedRelation& relation(std::string_view name) const;
  bool operator==(const FrameWithRelations&) const = default;
};

/// Names of the points of a tuple, for witnesses.
nlohmann::json point_names(const SortedFrame& f, std::span<const Sort> sorts, std::span<const std::size_t> tuple);
nlohmann::json set_names(const SortedFrame& f, const SortedSet& s);

/// R′ with R′u⃗ = (Ru⃗)′.
SortedRelation galois_dual(const FrameWithRelations& fr, const SortedRelation& r);

/// k = 0: the section Ru⃗ (w ignored). 1 <= k <= n: {v : w R u⃗[v]_k}; the
/// k-th entry of `args` is ignored. Throws index_out_of_range.
SortedSet section(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k, std::size_t w,
                  std::span<const std::size_t> args);

/// α_R(W⃗) = ⋃{Rw⃗ : w⃗ ∈ W⃗}. Throws sort_mismatch.
SortedSet image_operator(const FrameWithRelations& fr, const SortedRelation& r, const std::vector<SortedSet>& w);

/// ᾱ_R(F⃗) = (α_R(F⃗))″. Throws not_galois_input.
SortedSet closed_image(const FrameWithRelations& fr, const SortedRelation& r, const std::vector<SortedSet>& f);

/// Galois-set lattices of both sorts, shared by the operations that range
/// over all Galois sets.
struct StableLattices {
  GaloisSetLattice one, dual;
  const GaloisSetLattice& of(Sort s) const { return s == Sort::one ? one : dual; }
};
StableLattices stable_lattices(const SortedFrame& f, const EnumerationOptions& opts = {});

/// β^k(E⃗[G]_k): the union of all Galois F with α_R(E⃗[F]_k) ⊆ G. Place k is
/// 1-based; args[k-1] is G (sort of R's output). Throws not_galois_input.
SortedSet residual(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                   const std::vector<SortedSet>& args, const StableLattices& st);

struct ResidualForms {
  SortedSet galois_union;   // ⋃{F Galois : α_R(E⃗[F]_k) ⊆ G}
  SortedSet closed_union;   // ⋃{Γu : α_R(E⃗[Γu]_k) ⊆ G}
  SortedSet points;         // {u : α_R(E⃗[Γu]_k) ⊆ G}
};
ResidualForms residual_forms(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                             const std::vector<SortedSet>& args, const StableLattices& st);

/// γ̄^k(F⃗) = ⋂{G Galois : ᾱ_R(F⃗[G′]_k) ⊆ F′_k}. args[k-1] has the sort
/// opposite to R's output; the result has the sort opposite to input k.
SortedSet conjugate(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                    const std::vector<SortedSet>& args, const StableLattices& st);

/// First input-slot section v R′ p⃗[_]_k that is not Galois, if any.
struct SectionWitness {
  std::size_t place = 0;  // 1-based
  std::size_t v = 0;
  std::vector<std::size_t> args;
  SortedSet section;
};
std::optional<SectionWitness> non_galois_section(const FrameWithRelations& fr, const SortedRelation& r,
                                                 std::optional<std::size_t> only_place = std::nullopt);

/// S with w S p⃗[v]_k iff w ∈ (v R′ p⃗[_]_k)′, whose image operator is the
/// k-conjugate of ᾱ_R. Throws section_not_galois, index_out_of_range.
SortedRelation build_conjugate_relation(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k);

/// ᾱ¹_R on stable sets: inputs tagged d are primed first, the result is
/// primed when the output is tagged d. Throws not_galois_input.
SortedSet lift_single_sorted(const FrameWithRelations& fr, const SortedRelation& r,
                             const std::vector<SortedSet>& a);

/// Lattice of a family of stable sets together with the lifted operators.
struct SetAlgebra {
  NLE nle;
  std::vector<PointSet> sets;  // element i of nle is sets[i]
  Report checks;               // normality of each lifted operator
};

/// All stable sets with the lifted operators. Throws axiom_violation unless
/// FAx1-FAx4 hold.
SetAlgebra complex_algebra(const FrameWithRelations& fr, const EnumerationOptions& opts = {});

/// The clopen stable sets with the lifted operators. Throws
/// precondition_failed if the clopens are not closed under the operators.
SetAlgebra clopen_algebra(const FrameWithRelations& fr, const EnumerationOptions& opts = {});

enum class AxiomLevel { base, star };

/// FAx1-FAx4 (base) or FAx1, FAx2*, FAx3-FAx7 (star).
Report check_axioms(const FrameWithRelations& fr, AxiomLevel level, const EnumerationOptions& opts = {});

struct DistributionOptions {
  bool exhaustive = false;
  std::size_t subset_limit = 12;  // stable sets up to which all subsets are joined
  std::size_t samples = 1000;
  unsigned seed = 20240611;
};

/// ᾱ_R(F⃗[⋁𝒢]_k) = ⋁{ᾱ_R(F⃗[G]_k) : G ∈ 𝒢} over families 𝒢 of Galois sets,
/// for all Galois F⃗. Check id "distribution:<R>:<k>".
Check check_distribution(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                         const StableLattices& st, const DistributionOptions& opts = {});

/// The unique w with Ru⃗ = Γw. Throws not_separated, not_closed.
std::size_t point_image(const FrameWithRelations& fr, const SortedRelation& r, std::span<const std::size_t> u);

}  // namespace srf
