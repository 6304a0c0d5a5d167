#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "srf/error.hpp"
#include "support.hpp"

using namespace srf;
using namespace srf::test;

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

WeakBoundedMorphism identity_of(const FrameWithRelations& fr) {
  return {fr, fr, identity_map(fr.frame.size(Sort::one)), identity_map(fr.frame.size(Sort::dual))};
}

Bits naive_preimage(const std::vector<std::size_t>& map, const Bits& w) {
  Bits out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = w[map[i]];
  return out;
}

const std::vector<std::size_t>& map_of(const WeakBoundedMorphism& pi, Sort s) { return s == Sort::one ? pi.p : pi.q; }

// ∀x ∈ X₁ ∀y′ ∈ Y₂ (x I₁ q(y′) → ∃x′ ∈ X₂ (x ≼ p(x′) ∧ x′ I₂ y′))
bool naive_back_x(const WeakBoundedMorphism& pi) {
  const auto& f1 = pi.target.frame;
  const auto& f2 = pi.source.frame;
  for (std::size_t x = 0; x < f1.size(Sort::one); ++x)
    for (std::size_t y = 0; y < f2.size(Sort::dual); ++y) {
      if (!f1.rel(x, pi.q[y])) continue;
      bool found = false;
      for (std::size_t x2 = 0; x2 < f2.size(Sort::one) && !found; ++x2)
        found = naive::below(f1, Sort::one, x, pi.p[x2]) && f2.rel(x2, y);
      if (!found) return false;
    }
  return true;
}

// π⁻¹(◇₁Γx) ⊆ ◇₂π⁻¹(Γx) for every x
bool naive_closed_x(const WeakBoundedMorphism& pi) {
  const auto& f1 = pi.target.frame;
  const auto& f2 = pi.source.frame;
  for (std::size_t x = 0; x < f1.size(Sort::one); ++x) {
    const Bits g = naive::gamma(f1, Sort::one, x);
    if (!subset(naive_preimage(pi.q, naive::diamond(f1, g)), naive::diamond(f2, naive_preimage(pi.p, g)))) return false;
  }
  return true;
}

// A frame pair with a random pair of maps between them.
WeakBoundedMorphism random_maps(std::mt19937& rng, std::size_t max_points) {
  auto pick = [&] { return 1 + rng() % max_points; };
  const auto f1 = random_frame(rng, pick(), pick());
  const auto f2 = random_frame(rng, pick(), pick());
  return {bare(f2, "F2"), bare(f1, "F1"), random_map(rng, f2.size(Sort::one), f1.size(Sort::one)),
          random_map(rng, f2.size(Sort::dual), f1.size(Sort::dual))};
}

// Up to `wanted` random morphisms that pass MAx1-MAx3.
std::vector<WeakBoundedMorphism> random_weak_bounded(unsigned seed, std::size_t wanted, std::size_t max_points) {
  std::mt19937 rng(seed);
  std::vector<WeakBoundedMorphism> out;
  for (int tries = 0; tries < 200000 && out.size() < wanted; ++tries) {
    auto pi = random_maps(rng, max_points);
    if (check_weak_bounded(pi).all_passed()) out.push_back(std::move(pi));
  }
  return out;
}

// G3 onto the two-element Heyting algebra, collapsing e to 1.
LatticeHomomorphism g3_onto_c2() {
  const NLE g3 = load_nle("g3");
  NLE c2 = load_nle("c2");
  c2.name = "C2h";
  c2.operators.push_back(make_operator(c2.lattice, "prod", g3.operators[0].dtype,
                                       [](std::span<const Elem> a) { return std::min(a[0], a[1]); }));
  c2.operators.push_back(make_operator(c2.lattice, "imp", g3.operators[1].dtype,
                                       [](std::span<const Elem> a) { return a[0] <= a[1] ? Elem{1} : Elem{0}; }));
  return {g3, c2, {0, 1, 1}};
}

void check_induced_against_naive(const WeakBoundedMorphism& pi) {
  const auto& f1 = pi.target.frame;
  const auto& f2 = pi.source.frame;
  for (Sort s : {Sort::one, Sort::dual}) {
    const auto gal = naive::galois_sets(f1, s);
    for (const Bits& a : gal) {
      const Bits pa = naive_preimage(map_of(pi, s), a);
      CHECK(naive::close(f2, s, pa) == pa);
      for (const Bits& b : gal) {
        Bits meet(a.size()), uni(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          meet[i] = a[i] && b[i];
          uni[i] = a[i] || b[i];
        }
        const Bits pb = naive_preimage(map_of(pi, s), b);
        Bits pmeet(pa.size()), puni(pa.size());
        for (std::size_t i = 0; i < pa.size(); ++i) {
          pmeet[i] = pa[i] && pb[i];
          puni[i] = pa[i] || pb[i];
        }
        CHECK(naive_preimage(map_of(pi, s), meet) == pmeet);
        CHECK(naive_preimage(map_of(pi, s), naive::close(f1, s, uni)) == naive::close(f2, s, puni));
      }
    }
  }
}

}  // namespace

TEST_CASE("preimage") {
  const CanonicalFrame g3 = canonical_of("g3");
  const auto pi = identity_of(g3.frame);
  const SortedSet s = zeta1(g3, "e");
  CHECK(preimage(pi, s) == s);
  WeakBoundedMorphism bad = pi;
  bad.p.pop_back();
  try {
    require_total(bad);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::precondition_failed);
  }
}

TEST_CASE("dual of C3 to C2") {
  const auto h = std::get<LatticeHomomorphism>(parse_morphism(fixture("hom_c3_c2")));
  const DualMorphism d = dual_of_homomorphism(h);
  const auto& pi = d.pi;
  const auto& src = pi.source.frame;  // canonical C2
  const auto& tgt = pi.target.frame;  // canonical C3
  CHECK(src.size(Sort::one) == 2);
  CHECK(tgt.size(Sort::one) == 3);
  CHECK(pi.p[point(src, Sort::one, "↑1")] == point(tgt, Sort::one, "↑e"));
  CHECK(pi.p[point(src, Sort::one, "↑0")] == point(tgt, Sort::one, "↑0"));
  // p(x*) = h⁻¹[x*]
  for (std::size_t x = 0; x < src.size(Sort::one); ++x) {
    Bits pre(3);
    for (Elem a = 0; a < 3; ++a) pre[a] = d.source.filters[x].members[h(a)];
    CHECK(to_bits(d.target.filters[pi.p[x]].members) == pre);
  }
  for (std::size_t y = 0; y < src.size(Sort::dual); ++y) {
    Bits pre(3);
    for (Elem a = 0; a < 3; ++a) pre[a] = d.source.ideals[y].members[h(a)];
    CHECK(to_bits(d.target.ideals[pi.q[y]].members) == pre);
  }
  CHECK(d.checks.all_passed());
  const Report m = check_morphism(pi);
  for (const char* id : {"MAx1", "MAx2", "MAx3", "MAx5", "MAx6"}) {
    REQUIRE(m.find(id) != nullptr);
    CHECK(m.find(id)->status == Status::pass);
  }
  // π⁻¹(Γ↑e) = Γ↑1
  const SortedSet ge{Sort::one, tgt.gamma(Sort::one, point(tgt, Sort::one, "↑e"))};
  CHECK(preimage(pi, ge).members == src.gamma(Sort::one, point(src, Sort::one, "↑1")));
  // naturality, directly
  CHECK(check_naturality(h, d).status == Status::pass);
  for (Elem a = 0; a < 3; ++a) {
    CHECK(preimage(pi, zeta1(d.target, a)) == zeta1(d.source, h(a)));
    CHECK(preimage(pi, zetad(d.target, a)) == zetad(d.source, h(a)));
  }
  const InducedHom ind = induced_hom(pi);
  CHECK(ind.checks.all_passed());
  check_induced_against_naive(pi);
  // π⁻¹ on stable sets is h, up to the representation isomorphisms
  for (Elem a = 0; a < 3; ++a) {
    const auto i = ind.from.one.index_of(zeta1(d.target, a).members);
    REQUIRE(i.has_value());
    CHECK(ind.to.one.sets[ind.map[*i]].members == zeta1(d.source, h(a)).members);
  }
}

TEST_CASE("identity morphisms") {
  const auto m3 = parse_nle(fixture("m3"));
  const DualMorphism d = dual_of_homomorphism(LatticeHomomorphism{m3, m3, identity_map(5)});
  CHECK(d.pi.p == identity_map(5));
  CHECK(d.pi.q == identity_map(5));
  CHECK(d.checks.all_passed());

  const CanonicalFrame g3 = canonical_of("g3");
  const auto pi = identity_of(g3.frame);
  CHECK(check_morphism(pi).all_passed());
  const InducedHom ind = induced_hom(pi);
  CHECK(ind.checks.all_passed());
  CHECK(ind.map == identity_map(ind.from.one.size()));

  const auto gid = std::get<LatticeHomomorphism>(parse_morphism(fixture("hom_g3_id")));
  const DualMorphism dg = dual_of_homomorphism(gid);
  const Report rel = check_relation_condition(dg.pi);
  for (const char* id : {"MAx4:prod", "MAx4:imp", "MAx4-set:prod", "MAx4-set:imp"}) {
    REQUIRE(rel.find(id) != nullptr);
    CHECK(rel.find(id)->status == Status::pass);
  }
}

TEST_CASE("dual of a homomorphism is rejected when h is not one") {
  const auto bad = std::get<LatticeHomomorphism>(parse_morphism(fixture("hom_m3_c2_bad")));
  try {
    dual_of_homomorphism(bad);
    FAIL("expected InvalidHomomorphism");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_homomorphism);
  }
}

TEST_CASE("MAx2 negative control") {
  const auto pi = std::get<WeakBoundedMorphism>(parse_morphism(fixture("broken_max2")));
  const Report r = check_morphism(pi);
  CHECK(r.failed_ids() == std::vector<std::string>{"MAx2"});
  CHECK_FALSE(r.find("MAx2")->witness.is_null());
  CHECK_FALSE(naive_back_x(pi));
  try {
    induced_hom(pi);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::precondition_failed);
  }
}

TEST_CASE("a constant map fails MAx5") {
  // antichain source: rows a:{c}, b:{d}
  const SortedFrame f2({"a", "b"}, {"c", "d"}, {singleton(2, 0), singleton(2, 1)});
  const CanonicalFrame c2 = canonical_of("c2");
  const std::size_t x0 = point(c2.frame.frame, Sort::one, "↑0"), y1 = point(c2.frame.frame, Sort::dual, "↓1");
  const WeakBoundedMorphism pi{bare(f2), c2.frame, {x0, x0}, {y1, y1}};
  const Report r = check_star_conditions(pi);
  REQUIRE(r.find("MAx5") != nullptr);
  CHECK(r.find("MAx5")->status == Status::fail);
  CHECK_FALSE(r.find("MAx5")->witness.is_null());
}

TEST_CASE("equivalence chains agree on small frames") {
  std::mt19937 rng(31);
  int holds = 0, fails = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto pi = random_maps(rng, 4);
    const ChainResult d = diamond_chain(pi);
    const ChainResult b = box_chain(pi);
    CHECK(d.agree());
    CHECK(b.agree());
    CHECK(d.back_condition == naive_back_x(pi));
    CHECK(d.all_closed == naive_closed_x(pi));
    (d.back_condition ? holds : fails)++;
  }
  // both outcomes occur, so the agreement is not vacuous
  CHECK(holds > 50);
  CHECK(fails > 50);
}

TEST_CASE("weak bounded morphisms give complete lattice homomorphisms") {
  const auto sample = random_weak_bounded(32, 60, 3);
  REQUIRE(sample.size() >= 30);
  for (const auto& pi : sample) {
    check_induced_against_naive(pi);
    const InducedHom ind = induced_hom(pi);
    CHECK(ind.checks.all_passed());
  }
}

TEST_CASE("closure preservation") {
  const auto sample = random_weak_bounded(33, 80, 3);
  REQUIRE(sample.size() >= 40);
  bool counterexample = false;
  for (const auto& pi : sample)
    for (Sort s : {Sort::one, Sort::dual}) {
      const auto& f1 = pi.target.frame;
      const auto& f2 = pi.source.frame;
      const std::size_t n = f1.size(s);
      for (unsigned long long m = 0; m < (1ull << n); ++m) {
        const Bits u = mask_bits(n, m);
        const bool same = naive_preimage(map_of(pi, s), naive::close(f1, s, u)) ==
                          naive::close(f2, s, naive_preimage(map_of(pi, s), u));
        if (naive::increasing(f1, s, u))
          CHECK(same);
        else if (!same)
          counterexample = true;
      }
    }
  // arbitrary subsets are not enough for weak bounded morphisms
  CHECK(counterexample);
}

TEST_CASE("relation condition on Galois tuples follows from closed elements") {
  const LatticeHomomorphism h = g3_onto_c2();
  REQUIRE(validate_homomorphism(h).empty());
  const DualMorphism d = dual_of_homomorphism(h);
  const auto& pi = d.pi;
  const Report rel = check_relation_condition(pi);
  REQUIRE(rel.find("MAx4-set:prod")->status == Status::pass);
  REQUIRE(rel.find("MAx4-set:imp")->status == Status::pass);
  // the general identity on every tuple of Galois sets
  const StableLattices st = stable_lattices(pi.target.frame);
  for (std::size_t i = 0; i < pi.target.relations.size(); ++i) {
    const auto& r = pi.target.relations[i];
    const auto& s = pi.source.relations[i];
    std::vector<std::size_t> radices;
    for (Sort t : r.sort.inputs) radices.push_back(st.of(t).size());
    const TupleIndexer idx(radices);
    for (std::size_t t = 0; t < idx.count(); ++t) {
      const auto code = idx.decode(t);
      std::vector<SortedSet> fs, pre;
      for (std::size_t j = 0; j < code.size(); ++j) {
        fs.push_back({r.sort.inputs[j], st.of(r.sort.inputs[j]).sets[code[j]].members});
        pre.push_back(preimage(pi, fs.back()));
      }
      CHECK(preimage(pi, closed_image(pi.target, r, fs)) == closed_image(pi.source, s, pre));
    }
  }
  const InducedHom ind = induced_hom(pi);
  CHECK(ind.checks.find("hom-op:prod")->status == Status::pass);
  CHECK(ind.checks.find("hom-op:imp")->status == Status::pass);
  CHECK(check_morphism(pi).all_passed());
}

TEST_CASE("duality is contravariant") {
  const auto h1 = std::get<LatticeHomomorphism>(parse_morphism(fixture("hom_c3_c2")));
  const NLE c2 = load_nle("c2");
  const NLE c3 = load_nle("c3");
  const LatticeHomomorphism h2{c2, c3, {c3.lattice.at("0"), c3.lattice.at("1")}};
  const DualMorphism d1 = dual_of_homomorphism(h1);
  const DualMorphism d2 = dual_of_homomorphism(h2);
  {
    const DualMorphism whole = dual_of_homomorphism(compose(h1, h2));  // C2 → C2
    const WeakBoundedMorphism parts = compose(d2.pi, d1.pi);
    CHECK(whole.pi.p == parts.p);
    CHECK(whole.pi.q == parts.q);
    CHECK(whole.pi.p == identity_map(2));
  }
  {
    const DualMorphism whole = dual_of_homomorphism(compose(h2, h1));  // C3 → C3
    const WeakBoundedMorphism parts = compose(d1.pi, d2.pi);
    CHECK(whole.pi.p == parts.p);
    CHECK(whole.pi.q == parts.q);
    CHECK(check_weak_bounded(parts).all_passed());
  }
}

TEST_CASE("lattice round trips") {
  for (const auto& name : lattice_fixtures()) {
    CAPTURE(name);
    const NLE nle = load_nle(name);
    const LatticeRoundTrip rt = roundtrip_lattice(nle);
    CHECK(rt.checks.all_passed());
    REQUIRE(rt.checks.find("iso") != nullptr);
    CHECK(rt.checks.find("iso")->status == Status::pass);
    CHECK(rt.map.size() == nle.lattice.size());
    const CanonicalFrame cf = canonical_frame(nle);
    for (Elem a = 0; a < nle.lattice.size(); ++a) CHECK(rt.clopens.sets[rt.map[a]] == zeta1(cf, a).members);
  }
}

TEST_CASE("frame isomorphisms and frame round trips") {
  const CanonicalFrame c2 = canonical_of("c2");
  const CanonicalFrame c3 = canonical_of("c3");
  const CanonicalFrame m3 = canonical_of("m3");
  CHECK_FALSE(find_frame_isomorphism(c2.frame, c3.frame).has_value());
  const auto self = find_frame_isomorphism(m3.frame, m3.frame);
  REQUIRE(self.has_value());
  const auto& f = m3.frame.frame;
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = 0; y < 5; ++y) CHECK(f.gal(x, y) == f.gal(self->px[x], self->py[y]));
  try {
    find_frame_isomorphism(m3.frame, m3.frame, 3);
    FAIL("expected ScaleExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::scale_exceeded);
  }

  for (const std::string name : {"c2", "m3", "g3"}) {
    CAPTURE(name);
    const FrameRoundTrip rt = roundtrip_frame(canonical_of(name).frame);
    CHECK(rt.iso.has_value());
    CHECK(rt.checks.all_passed());
  }
  try {
    roundtrip_frame(parse_frame(fixture("broken_fax2")));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::precondition_failed);
  }
}
