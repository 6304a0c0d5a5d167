#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "srf/bits.hpp"
#include "srf/sort.hpp"
#include "srf/tuple_index.hpp"

namespace srf {

/// Dense index of a lattice element.
using Elem = std::size_t;

/// A finite bounded lattice given extensionally. Elements keep the order in
/// which they were declared; every table is indexed by that order.
struct Lattice {
  std::vector<std::string> names;
  std::vector<PointSet> up;  // up[a] = {b : a <= b}
  std::vector<Elem> meet_table;
  std::vector<Elem> join_table;
  Elem bot = 0;
  Elem top = 0;

  std::size_t size() const noexcept { return names.size(); }
  bool leq(Elem a, Elem b) const { return up[a][b]; }
  Elem meet(Elem a, Elem b) const { return meet_table[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_table[a * size() + b]; }

  std::optional<Elem> find(std::string_view name) const;
  /// Throws Errc::unknown_element.
  Elem at(std::string_view name) const;

  bool operator==(const Lattice&) const = default;
};

/// Order data as read from a document: element ids and any generating pairs.
struct RawOrder {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
};

/// Closes the pairs reflexively and transitively and derives the lattice
/// tables. Throws not_a_partial_order, not_a_lattice or no_bounds.
Lattice validate_lattice(const RawOrder& raw);

/// Order reversed, meet and join swapped, bounds swapped.
Lattice opposite(const Lattice& l);

struct DistributionType {
  std::vector<Sort> inputs;
  Sort output = Sort::one;

  std::size_t arity() const noexcept { return inputs.size(); }
  std::string to_string() const;  // e.g. "(1,d;d)"
  bool operator==(const DistributionType&) const = default;
};

/// Flips every tag. An operator is normal of type t over L exactly when it is
/// normal of type flipped(t) over opposite(L).
DistributionType flipped(const DistributionType& t);

/// An n-ary operation with its full table. Table rows are in lexicographic
/// argument order (first argument most significant).
struct NormalOperator {
  std::string name;
  DistributionType dtype;
  std::size_t radix = 0;  // lattice size
  std::vector<Elem> table;

  std::size_t arity() const noexcept { return dtype.arity(); }
  TupleIndexer indexer() const { return TupleIndexer(std::vector<std::size_t>(arity(), radix)); }
  Elem operator()(std::span<const Elem> args) const;
  Elem& at(std::span<const Elem> args);

  bool operator==(const NormalOperator&) const = default;
};

template <class F>
NormalOperator make_operator(const Lattice& l, std::string name, DistributionType dtype, F&& f) {
  NormalOperator op{std::move(name), std::move(dtype), l.size(), {}};
  const auto idx = op.indexer();
  op.table.resize(idx.count());
  for (std::size_t i = 0; i < idx.count(); ++i) op.table[i] = f(std::span<const Elem>(idx.decode(i)));
  return op;
}

/// A lattice with quasioperators.
struct NLE {
  std::string name;
  Lattice lattice;
  std::vector<NormalOperator> operators;

  std::vector<DistributionType> similarity_type() const;
  const NormalOperator& op(std::string_view name) const;

  bool operator==(const NLE&) const = default;
};

/// A failed distribution instance at argument place `place` (0-based).
/// `left`/`right` are the joined pair; both empty for the empty join.
struct DistributionViolation {
  std::size_t place = 0;
  std::vector<Elem> args;
  std::optional<Elem> left, right;
  Elem expected = 0;  // join of the separate values, in the output tag's order
  Elem actual = 0;    // value at the joined argument
};

struct NormalityReport {
  std::vector<DistributionViolation> violations;
  bool normal() const noexcept { return violations.empty(); }
};

/// Exhaustive check that `f` sends joins (in L or L^op per input tag) to joins
/// (per output tag), including the empty join.
NormalityReport validate_normal_operator(const Lattice& l, const NormalOperator& f);

struct Filter {
  PointSet members;
  Elem generator = 0;
  bool operator==(const Filter&) const = default;
};

struct Ideal {
  PointSet members;
  Elem generator = 0;
  bool operator==(const Ideal&) const = default;
};

Filter principal_filter(const Lattice& l, Elem a);
Ideal principal_ideal(const Lattice& l, Elem a);

/// All filters, ordered by principal generator. In a finite lattice every
/// filter is principal; the improper filter is the one generated by bot.
std::vector<Filter> filters(const Lattice& l);
std::vector<Ideal> ideals(const Lattice& l);

/// Least filter containing s; {top} for empty s.
Filter filter_generated(const Lattice& l, const PointSet& s);
Ideal ideal_generated(const Lattice& l, const PointSet& s);

struct LatticeHomomorphism {
  NLE source;
  NLE target;
  std::vector<Elem> map;

  Elem operator()(Elem a) const { return map.at(a); }
};

struct HomViolation {
  std::string equation;  // "meet", "join", "bot", "top", "type", "op:<name>"
  nlohmann::json witness;
};

/// Every broken preservation equation, in scan order.
std::vector<HomViolation> validate_homomorphism(const LatticeHomomorphism& h);

/// outer after inner.
LatticeHomomorphism compose(const LatticeHomomorphism& outer, const LatticeHomomorphism& inner);

/// Bijection a -> phi[a] preserving and reflecting order and commuting with
/// every operator (operators matched by position), if one exists.
std::optional<std::vector<Elem>> find_isomorphism(const NLE& a, const NLE& b);

/// Element names of a tuple, for witnesses.
nlohmann::json element_names(const Lattice& l, std::span<const Elem> tuple);

}  // namespace srf
