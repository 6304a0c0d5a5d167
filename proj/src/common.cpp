#include <algorithm>

#include "srf/bits.hpp"
#include "srf/error.hpp"
#include "srf/report.hpp"
#include "srf/tuple_index.hpp"

namespace srf {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::not_a_partial_order: return "NotAPartialOrder";
    case Errc::not_a_lattice: return "NotALattice";
    case Errc::no_bounds: return "NoBounds";
    case Errc::scale_exceeded: return "ScaleExceeded";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_galois_input: return "NotGaloisInput";
    case Errc::section_not_galois: return "SectionNotGalois";
    case Errc::axiom_violation: return "AxiomViolation";
    case Errc::not_closed: return "NotClosed";
    case Errc::not_separated: return "NotSeparated";
    case Errc::sort_mismatch: return "SortMismatch";
    case Errc::unknown_element: return "UnknownElement";
    case Errc::precondition_failed: return "PreconditionFailed";
    case Errc::invalid_homomorphism: return "InvalidHomomorphism";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::semantic_error: return "SemanticError";
  }
  return "Error";
}

std::vector<std::size_t> members(const PointSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for_each_member(s, [&](std::size_t i) { out.push_back(i); });
  return out;
}

bool canonical_less(const PointSet& a, const PointSet& b) {
  const auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return members(a) < members(b);
}

PointSet from_mask(std::size_t n, unsigned long long mask) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1ULL) s.set(i);
  return s;
}

TupleIndexer::TupleIndexer(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
  count_ = 1;
  for (auto r : radices_) count_ *= r;
}

std::size_t TupleIndexer::encode(std::span<const std::size_t> tuple) const {
  std::size_t index = 0;
  for (std::size_t j = 0; j < radices_.size(); ++j) index = index * radices_[j] + tuple[j];
  return index;
}

std::vector<std::size_t> TupleIndexer::decode(std::size_t index) const {
  std::vector<std::size_t> tuple(radices_.size());
  for (std::size_t j = radices_.size(); j-- > 0;) {
    tuple[j] = index % radices_[j];
    index /= radices_[j];
  }
  return tuple;
}

bool TupleIndexer::next(std::vector<std::size_t>& tuple) const {
  for (std::size_t j = radices_.size(); j-- > 0;) {
    if (++tuple[j] < radices_[j]) return true;
    tuple[j] = 0;
  }
  return false;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

Check pass_check(std::string id, std::string note) {
  return Check{std::move(id), Status::pass, nullptr, std::move(note), 0.0};
}

Check fail_check(std::string id, nlohmann::json witness, std::string note) {
  return Check{std::move(id), Status::fail, std::move(witness), std::move(note), 0.0};
}

Check skipped_check(std::string id, std::string note) {
  return Check{std::move(id), Status::skipped, nullptr, std::move(note), 0.0};
}

Check check_from(std::string id, std::optional<nlohmann::json> witness, std::string note) {
  if (witness) return fail_check(std::move(id), std::move(*witness), std::move(note));
  return pass_check(std::move(id), std::move(note));
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::all_passed() const noexcept { return failures() == 0; }

std::size_t Report::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed(); }));
}

const Check* Report::find(std::string_view id) const noexcept {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<std::string> Report::failed_ids() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed()) out.push_back(c.id);
  return out;
}

const std::vector<std::pair<std::string_view, std::string_view>>& check_catalog() {
  static const std::vector<std::pair<std::string_view, std::string_view>> catalog = {
      {"lattice", "input order is a bounded lattice"},
      {"normality", "operator distributes over joins per its distribution type"},
      {"hom", "lattice homomorphism preserves meets, joins, bounds and operators"},
      {"FAx1", "frame is separated"},
      {"FAx2", "every relation section is a closed element"},
      {"FAx2*", "FAx2, and sections at clopen points are clopen"},
      {"FAx3", "relations are decreasing in every argument place"},
      {"FAx4", "all sections of Galois dual relations are Galois sets"},
      {"FAx5", "clopens closed under finite intersections"},
      {"FAx6", "closed elements are the intersection closure of the clopens"},
      {"FAx7", "clopens and complements generate a Stone topology (finite: clopens separate points)"},
      {"distribution", "closed image operator distributes over joins of Galois sets at a place"},
      {"complex-normality", "lifted operator on stable sets is normal of its distribution type"},
      {"rep-injective", "representation map is injective"},
      {"rep-order", "representation map preserves and reflects order"},
      {"rep-meet", "representation sends meets to intersections"},
      {"rep-join", "representation sends joins to closures of unions"},
      {"rep-clopen-image", "image of the representation is exactly the clopen stable sets"},
      {"rep-zeta-dual", "the co-representation is the Galois image of the representation"},
      {"rep-op", "operator tables agree with lifted closed image operators"},
      {"rep-op-sorted", "sorted closed image operator represents the operator"},
      {"rep-relation", "canonical relation holds iff every argument tuple lands in the point"},
      {"rep-dual-relation", "Galois dual relation holds iff some argument tuple lands in the point"},
      {"MAx1", "morphism preserves the frame relation I"},
      {"MAx2", "weak back condition on X"},
      {"MAx3", "weak back condition on Y"},
      {"MAx4", "relation condition (first-order form)"},
      {"MAx4-set", "relation condition (preimage of image operator on closed tuples)"},
      {"MAx4-agree", "first-order and set-level relation conditions agree"},
      {"MAx5", "preimages of closed elements are closed"},
      {"MAx6", "preimages commute with the Galois map on clopen elements"},
      {"diamond-chain", "back condition on X agrees with diamond preimage inclusions on closed and increasing sets"},
      {"box-chain", "back condition on Y agrees with box preimage inclusions on co-closed and decreasing sets"},
      {"naturality", "preimage of a represented element represents its image (derived property)"},
      {"hom-stable-image", "preimage maps stable sets to stable sets"},
      {"hom-meets", "preimage preserves meets of stable sets"},
      {"hom-joins", "preimage preserves joins of stable sets"},
      {"hom-op", "preimage commutes with closed image operators"},
      {"iso-bijective", "representation is a bijection onto the clopen stable sets"},
      {"iso-order", "representation is an order isomorphism"},
      {"iso-op", "representation commutes with every operator"},
      {"iso", "round trip produced an isomorphism"},
      {"frame-iso", "frame is isomorphic to the canonical frame of its clopen algebra"},
  };
  return catalog;
}

bool in_catalog(std::string_view id) {
  const auto base = id.substr(0, id.find(':'));
  for (const auto& [key, desc] : check_catalog())
    if (key == base) return true;
  return false;
}

}  // namespace srf
