#include "srf/morphism.hpp"

#include <functional>
#include <limits>

#include "srf/error.hpp"

namespace srf {

using nlohmann::json;

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

const SortedFrame& src(const WeakBoundedMorphism& pi) { return pi.source.frame; }
const SortedFrame& tgt(const WeakBoundedMorphism& pi) { return pi.target.frame; }

std::optional<std::size_t> gamma_generator(const SortedFrame& f, Sort s, const PointSet& m) {
  for (std::size_t w = 0; w < f.size(s); ++w)
    if (f.gamma(s, w) == m) return w;
  return std::nullopt;
}

std::optional<json> max1(const WeakBoundedMorphism& pi) {
  for (std::size_t x = 0; x < src(pi).size(Sort::one); ++x)
    for (std::size_t y = 0; y < src(pi).size(Sort::dual); ++y)
      if (src(pi).rel(x, y) && !tgt(pi).rel(pi.p[x], pi.q[y]))
        return json{{"x", src(pi).name(Sort::one, x)}, {"y", src(pi).name(Sort::dual, y)}};
  return std::nullopt;
}

std::optional<json> max2(const WeakBoundedMorphism& pi) {
  for (std::size_t x = 0; x < tgt(pi).size(Sort::one); ++x)
    for (std::size_t y = 0; y < src(pi).size(Sort::dual); ++y) {
      if (!tgt(pi).rel(x, pi.q[y])) continue;
      bool found = false;
      for (std::size_t z = 0; z < src(pi).size(Sort::one) && !found; ++z)
        found = tgt(pi).below(Sort::one, x, pi.p[z]) && src(pi).rel(z, y);
      if (!found) return json{{"x", tgt(pi).name(Sort::one, x)}, {"y_source", src(pi).name(Sort::dual, y)}};
    }
  return std::nullopt;
}

std::optional<json> max3(const WeakBoundedMorphism& pi) {
  for (std::size_t x = 0; x < src(pi).size(Sort::one); ++x)
    for (std::size_t y = 0; y < tgt(pi).size(Sort::dual); ++y) {
      if (!tgt(pi).rel(pi.p[x], y)) continue;
      bool found = false;
      for (std::size_t v = 0; v < src(pi).size(Sort::dual) && !found; ++v)
        found = tgt(pi).below(Sort::dual, y, pi.q[v]) && src(pi).rel(x, v);
      if (!found) return json{{"x_source", src(pi).name(Sort::one, x)}, {"y", tgt(pi).name(Sort::dual, y)}};
    }
  return std::nullopt;
}

}  // namespace

void require_total(const WeakBoundedMorphism& pi) {
  auto check = [&](const std::vector<std::size_t>& m, Sort s, const char* label) {
    if (m.size() != src(pi).size(s))
      throw Error(Errc::precondition_failed, std::string(label) + " must be defined on every source point");
    for (auto v : m)
      if (v >= tgt(pi).size(s)) throw Error(Errc::precondition_failed, std::string(label) + " leaves the target carrier");
  };
  check(pi.p, Sort::one, "p");
  check(pi.q, Sort::dual, "q");
}

SortedSet preimage(const WeakBoundedMorphism& pi, const SortedSet& w) {
  const auto& m = w.sort == Sort::one ? pi.p : pi.q;
  SortedSet out = src(pi).empty(w.sort);
  for (std::size_t v = 0; v < m.size(); ++v) out.members[v] = w.members[m[v]];
  return out;
}

Report check_weak_bounded(const WeakBoundedMorphism& pi) {
  require_total(pi);
  Report rep;
  rep.add(timed([&] { return check_from("MAx1", max1(pi)); }));
  rep.add(timed([&] { return check_from("MAx2", max2(pi)); }));
  rep.add(timed([&] { return check_from("MAx3", max3(pi)); }));
  return rep;
}

Report check_relation_condition(const WeakBoundedMorphism& pi) {
  require_total(pi);
  Report rep;
  if (pi.source.relations.size() != pi.target.relations.size())
    throw Error(Errc::sort_mismatch, "source and target frames have different relation lists");
  for (std::size_t i = 0; i < pi.target.relations.size(); ++i) {
    const SortedRelation& r = pi.target.relations[i];
    const SortedRelation& s = pi.source.relations[i];
    if (r.sort != s.sort)
      throw Error(Errc::sort_mismatch, "relation " + r.name + " has sort " + r.sort.to_string() + " in the target but " +
                                           s.sort.to_string() + " in the source");
    const Sort out = r.sort.output;

    Check first = timed([&] {
      std::vector<std::size_t> u(r.arity(), 0);
      do {
        for (std::size_t v = 0; v < src(pi).size(out); ++v) {
          const bool lhs = r.holds(pi(out, v), u);
          bool rhs = false;
          std::vector<std::size_t> w(s.arity(), 0);
          do {
            bool above = true;
            for (std::size_t j = 0; j < w.size() && above; ++j)
              above = tgt(pi).below(r.sort.inputs[j], u[j], pi(r.sort.inputs[j], w[j]));
            rhs = above && s.holds(v, w);
          } while (!rhs && s.index.next(w));
          if (lhs != rhs)
            return fail_check("MAx4:" + r.name, json{{"v", src(pi).name(out, v)},
                                                     {"args", point_names(tgt(pi), r.sort.inputs, u)},
                                                     {"image_related", lhs}});
        }
      } while (r.index.next(u));
      return pass_check("MAx4:" + r.name);
    });

    Check set_level = timed([&] {
      std::vector<std::size_t> u(r.arity(), 0);
      do {
        std::vector<SortedSet> gam, pre;
        for (std::size_t j = 0; j < u.size(); ++j) {
          gam.push_back(upper_closure(tgt(pi), r.sort.inputs[j], u[j]));
          pre.push_back(preimage(pi, gam.back()));
        }
        const SortedSet lhs = preimage(pi, image_operator(pi.target, r, gam));
        const SortedSet rhs = image_operator(pi.source, s, pre);
        if (lhs != rhs)
          return fail_check("MAx4-set:" + r.name, json{{"args", point_names(tgt(pi), r.sort.inputs, u)},
                                                       {"preimage_of_image", set_names(src(pi), lhs)},
                                                       {"image_of_preimages", set_names(src(pi), rhs)}});
      } while (r.index.next(u));
      return pass_check("MAx4-set:" + r.name);
    });

    const bool agree = first.passed() == set_level.passed();
    rep.add(std::move(first));
    rep.add(std::move(set_level));
    rep.add(agree ? pass_check("MAx4-agree:" + r.name)
                  : fail_check("MAx4-agree:" + r.name, json{{"first_order", rep.checks[rep.checks.size() - 2].passed()},
                                                            {"set_level", rep.checks.back().passed()}}));
  }
  return rep;
}

Report check_star_conditions(const WeakBoundedMorphism& pi) {
  require_total(pi);
  Report rep;
  rep.add(timed([&]() -> Check {
    for (Sort s : {Sort::one, Sort::dual})
      for (std::size_t u = 0; u < tgt(pi).size(s); ++u) {
        const SortedSet pre = preimage(pi, upper_closure(tgt(pi), s, u));
        if (!gamma_generator(src(pi), s, pre.members))
          return fail_check("MAx5", json{{"u", tgt(pi).name(s, u)}, {"preimage", set_names(src(pi), pre)}});
      }
    return pass_check("MAx5");
  }));
  rep.add(timed([&]() -> Check {
    for (Sort s : {Sort::one, Sort::dual})
      for (std::size_t u = 0; u < tgt(pi).size(s); ++u)
        for (std::size_t v = 0; v < tgt(pi).size(flip(s)); ++v) {
          if (tgt(pi).gamma(s, u) != tgt(pi).prime_point(flip(s), v)) continue;
          const SortedSet lhs = preimage(pi, upper_closure(tgt(pi), s, u));
          const SortedSet rhs = galois_map(src(pi), preimage(pi, upper_closure(tgt(pi), flip(s), v)));
          if (lhs != rhs)
            return fail_check("MAx6", json{{"u", tgt(pi).name(s, u)},
                                           {"v", tgt(pi).name(flip(s), v)},
                                           {"preimage", set_names(src(pi), lhs)},
                                           {"prime_of_preimage", set_names(src(pi), rhs)}});
        }
    return pass_check("MAx6");
  }));
  return rep;
}

Report check_morphism(const WeakBoundedMorphism& pi) {
  Report rep = check_weak_bounded(pi);
  rep.append(check_relation_condition(pi));
  rep.append(check_star_conditions(pi));
  return rep;
}

InducedHom induced_hom(const WeakBoundedMorphism& pi, const EnumerationOptions& opts) {
  const Report wb = check_weak_bounded(pi);
  if (!wb.all_passed())
    throw Error(Errc::precondition_failed, "not a weak bounded morphism", json{{"failed", wb.failed_ids()}});
  const Report rel = check_relation_condition(pi);

  InducedHom ih{stable_lattices(tgt(pi), opts), stable_lattices(src(pi), opts), {}, {}};
  for (const auto& g : ih.from.one.sets) {
    auto idx = ih.to.one.index_of(preimage(pi, {Sort::one, g.members}).members);
    ih.map.push_back(idx ? *idx : npos);
  }

  ih.checks.add(timed([&]() -> Check {
    for (Sort s : {Sort::one, Sort::dual})
      for (const auto& g : ih.from.of(s).sets) {
        const SortedSet pre = preimage(pi, {s, g.members});
        if (!ih.to.of(s).index_of(pre.members))
          return fail_check("hom-stable-image",
                            json{{"set", set_names(tgt(pi), {s, g.members})}, {"preimage", set_names(src(pi), pre)}});
      }
    return pass_check("hom-stable-image");
  }));
  const bool total = ih.checks.all_passed();
  auto pre_index = [&](Sort s, const PointSet& m) { return ih.to.of(s).index_of(preimage(pi, {s, m}).members); };

  // In a finite lattice arbitrary meets and joins reduce to the empty and
  // binary ones.
  ih.checks.add(timed([&]() -> Check {
    if (!total) return skipped_check("hom-meets", "preimage is not stable-valued");
    for (Sort s : {Sort::one, Sort::dual}) {
      const auto& a = ih.from.of(s);
      const auto& b = ih.to.of(s);
      if (*pre_index(s, a.sets[a.top].members) != b.top)
        return fail_check("hom-meets", json{{"sort", tag(s)}, {"family", "empty"}});
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          if (*pre_index(s, a.sets[a.meet(i, j)].members) !=
              b.meet(*pre_index(s, a.sets[i].members), *pre_index(s, a.sets[j].members)))
            return fail_check("hom-meets", json{{"sort", tag(s)},
                                                {"sets", {set_names(tgt(pi), {s, a.sets[i].members}),
                                                          set_names(tgt(pi), {s, a.sets[j].members})}}});
    }
    return pass_check("hom-meets");
  }));
  ih.checks.add(timed([&]() -> Check {
    if (!total) return skipped_check("hom-joins", "preimage is not stable-valued");
    for (Sort s : {Sort::one, Sort::dual}) {
      const auto& a = ih.from.of(s);
      const auto& b = ih.to.of(s);
      if (*pre_index(s, a.sets[a.bot].members) != b.bot)
        return fail_check("hom-joins", json{{"sort", tag(s)}, {"family", "empty"}});
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          if (*pre_index(s, a.sets[a.join(i, j)].members) !=
              b.join(*pre_index(s, a.sets[i].members), *pre_index(s, a.sets[j].members)))
            return fail_check("hom-joins", json{{"sort", tag(s)},
                                                {"sets", {set_names(tgt(pi), {s, a.sets[i].members}),
                                                          set_names(tgt(pi), {s, a.sets[j].members})}}});
    }
    return pass_check("hom-joins");
  }));

  for (std::size_t i = 0; i < pi.target.relations.size(); ++i) {
    const SortedRelation& r = pi.target.relations[i];
    const SortedRelation& s = pi.source.relations[i];
    const std::string id = "hom-op:" + r.name;
    const Check* m4 = rel.find("MAx4-set:" + r.name);
    if (!m4 || !m4->passed() || !total) {
      ih.checks.add(skipped_check(id, "relation condition does not hold"));
      continue;
    }
    ih.checks.add(timed([&]() -> Check {
      std::vector<std::size_t> radices;
      for (Sort in : r.sort.inputs) radices.push_back(ih.from.of(in).size());
      const TupleIndexer idx(radices);
      std::vector<std::size_t> t(r.arity(), 0);
      do {
        std::vector<SortedSet> args, pre;
        for (std::size_t j = 0; j < t.size(); ++j) {
          args.push_back({r.sort.inputs[j], ih.from.of(r.sort.inputs[j]).sets[t[j]].members});
          pre.push_back(preimage(pi, args.back()));
        }
        const SortedSet lhs = preimage(pi, closed_image(pi.target, r, args));
        const SortedSet rhs = closed_image(pi.source, s, pre);
        if (lhs != rhs) {
          json a = json::array();
          for (const auto& x : args) a.push_back(set_names(tgt(pi), x));
          return fail_check(id, json{{"args", a}, {"lhs", set_names(src(pi), lhs)}, {"rhs", set_names(src(pi), rhs)}});
        }
      } while (idx.next(t));
      return pass_check(id);
    }));
  }
  return ih;
}

namespace {

std::size_t locate(const std::vector<PointSet>& carriers, const PointSet& m, const char* what) {
  for (std::size_t i = 0; i < carriers.size(); ++i)
    if (carriers[i] == m) return i;
  throw Error(Errc::invalid_homomorphism, std::string("inverse image of a ") + what + " is not a " + what);
}

}  // namespace

DualMorphism dual_of_homomorphism(const LatticeHomomorphism& h, const EnumerationOptions& opts) {
  const auto violations = validate_homomorphism(h);
  if (!violations.empty()) {
    json list = json::array();
    for (const auto& v : violations) list.push_back({{"equation", v.equation}, {"witness", v.witness}});
    throw Error(Errc::invalid_homomorphism, "map is not a homomorphism (" + violations.front().equation + ")",
                json{{"violations", list}});
  }
  DualMorphism d{canonical_frame(h.target, opts), canonical_frame(h.source, opts), {}, {}};
  const Lattice& l = h.source.lattice;
  std::vector<PointSet> fl, il;
  for (const auto& f : d.target.filters) fl.push_back(f.members);
  for (const auto& i : d.target.ideals) il.push_back(i.members);

  d.pi.source = d.source.frame;
  d.pi.target = d.target.frame;
  auto inverse_image = [&](const PointSet& star) {
    PointSet m(l.size());
    for (Elem a = 0; a < l.size(); ++a) m[a] = star[h(a)];
    return m;
  };
  for (const auto& x : d.source.filters) d.pi.p.push_back(locate(fl, inverse_image(x.members), "filter"));
  for (const auto& y : d.source.ideals) d.pi.q.push_back(locate(il, inverse_image(y.members), "ideal"));

  d.checks = check_morphism(d.pi);
  d.checks.add(timed([&] { return check_naturality(h, d); }));
  return d;
}

Check check_naturality(const LatticeHomomorphism& h, const DualMorphism& d) {
  for (Elem a = 0; a < h.source.lattice.size(); ++a) {
    if (preimage(d.pi, zeta1(d.target, a)) != zeta1(d.source, h(a)) ||
        preimage(d.pi, zetad(d.target, a)) != zetad(d.source, h(a)))
      return fail_check("naturality", json{{"element", h.source.lattice.names[a]}},
                        "derived property, not stated as a claim");
  }
  return pass_check("naturality", "derived property: preimage commutes with the representation maps");
}

LatticeRoundTrip roundtrip_lattice(const NLE& nle, const EnumerationOptions& opts) {
  const CanonicalFrame cf = canonical_frame(nle, opts);
  LatticeRoundTrip rt{clopen_algebra(cf.frame, opts), {}, {}};
  const Lattice& l = nle.lattice;
  const Lattice& c = rt.clopens.nle.lattice;
  for (Elem a = 0; a < l.size(); ++a) {
    const PointSet z = zeta1(cf, a).members;
    auto it = std::find(rt.clopens.sets.begin(), rt.clopens.sets.end(), z);
    rt.map.push_back(it == rt.clopens.sets.end() ? npos : static_cast<std::size_t>(it - rt.clopens.sets.begin()));
  }
  rt.checks.append(rt.clopens.checks);

  rt.checks.add(timed([&] {
    PointSet hit(c.size());
    for (Elem a = 0; a < l.size(); ++a) {
      if (rt.map[a] == npos) return fail_check("iso-bijective", json{{"element", l.names[a]}, {"reason", "not clopen"}});
      if (hit[rt.map[a]]) return fail_check("iso-bijective", json{{"element", l.names[a]}, {"reason", "collision"}});
      hit.set(rt.map[a]);
    }
    if (!hit.all()) return fail_check("iso-bijective", json{{"reason", "clopen not in the image"}});
    return pass_check("iso-bijective");
  }));
  const bool bijective = rt.checks.checks.back().passed();

  rt.checks.add(timed([&] {
    if (!bijective) return skipped_check("iso-order", "no bijection");
    for (Elem a = 0; a < l.size(); ++a)
      for (Elem b = 0; b < l.size(); ++b)
        if (l.leq(a, b) != c.leq(rt.map[a], rt.map[b]))
          return fail_check("iso-order", json{{"elements", {l.names[a], l.names[b]}}});
    return pass_check("iso-order");
  }));
  for (std::size_t k = 0; k < nle.operators.size(); ++k) {
    const auto& f = nle.operators[k];
    const auto& g = rt.clopens.nle.operators[k];
    const std::string id = "iso-op:" + f.name;
    rt.checks.add(timed([&] {
      if (!bijective) return skipped_check(id, "no bijection");
      if (f.dtype != g.dtype)
        return fail_check(id, json{{"type", f.dtype.to_string()}, {"lifted_type", g.dtype.to_string()}});
      const auto idx = f.indexer();
      std::vector<std::size_t> a(f.arity(), 0);
      std::vector<Elem> image(f.arity());
      do {
        for (std::size_t j = 0; j < a.size(); ++j) image[j] = rt.map[a[j]];
        if (rt.map[f(a)] != g(image))
          return fail_check(id, json{{"args", element_names(l, a)},
                                     {"value", l.names[f(a)]},
                                     {"lifted", c.names[g(image)]}});
      } while (idx.next(a));
      return pass_check(id);
    }));
  }
  const bool ok = rt.checks.all_passed();
  const bool abstract_iso = find_isomorphism(nle, rt.clopens.nle).has_value();
  rt.checks.add(ok && abstract_iso
                    ? pass_check("iso", "representation map is an isomorphism; independent search agrees")
                    : fail_check("iso", json{{"representation_checks", ok}, {"independent_search", abstract_iso}}));
  return rt;
}

std::optional<FrameIso> find_frame_isomorphism(const FrameWithRelations& a, const FrameWithRelations& b,
                                               std::size_t max_points) {
  const SortedFrame& fa = a.frame;
  const SortedFrame& fb = b.frame;
  const std::size_t nx = fa.size(Sort::one), ny = fa.size(Sort::dual);
  if (nx > max_points || ny > max_points)
    throw Error(Errc::scale_exceeded, "frame isomorphism search is capped at " + std::to_string(max_points) +
                                          " points per sort");
  if (nx != fb.size(Sort::one) || ny != fb.size(Sort::dual) || a.tau() != b.tau()) return std::nullopt;

  FrameIso iso{std::vector<std::size_t>(nx, npos), std::vector<std::size_t>(ny, npos)};
  std::vector<bool> used_x(nx, false), used_y(ny, false);

  auto relations_match = [&] {
    for (std::size_t i = 0; i < a.relations.size(); ++i) {
      const auto& ra = a.relations[i];
      const auto& rb = b.relations[i];
      const Sort out = ra.sort.output;
      const auto& omap = out == Sort::one ? iso.px : iso.py;
      std::vector<std::size_t> u(ra.arity(), 0), v(ra.arity());
      do {
        for (std::size_t j = 0; j < u.size(); ++j) v[j] = (ra.sort.inputs[j] == Sort::one ? iso.px : iso.py)[u[j]];
        const PointSet& sa = ra.at(u);
        const PointSet& sb = rb.at(v);
        for (std::size_t w = 0; w < sa.size(); ++w)
          if (sa[w] != sb[omap[w]]) return false;
      } while (ra.index.next(u));
    }
    return true;
  };

  std::function<bool(std::size_t)> assign_y = [&](std::size_t y) -> bool {
    if (y == ny) return relations_match();
    for (std::size_t d = 0; d < ny; ++d) {
      if (used_y[d] || fa.cols()[y].count() != fb.cols()[d].count()) continue;
      bool ok = true;
      for (std::size_t x = 0; x < nx && ok; ++x) ok = fa.gal(x, y) == fb.gal(iso.px[x], d);
      if (!ok) continue;
      iso.py[y] = d;
      used_y[d] = true;
      if (assign_y(y + 1)) return true;
      used_y[d] = false;
    }
    return false;
  };
  std::function<bool(std::size_t)> assign_x = [&](std::size_t x) -> bool {
    if (x == nx) return assign_y(0);
    for (std::size_t c = 0; c < nx; ++c) {
      if (used_x[c] || fa.rows()[x].count() != fb.rows()[c].count()) continue;
      bool ok = true;
      for (std::size_t z = 0; z < x && ok; ++z)
        ok = fa.below(Sort::one, z, x) == fb.below(Sort::one, iso.px[z], c) &&
             fa.below(Sort::one, x, z) == fb.below(Sort::one, c, iso.px[z]);
      if (!ok) continue;
      iso.px[x] = c;
      used_x[c] = true;
      if (assign_x(x + 1)) return true;
      used_x[c] = false;
    }
    return false;
  };
  if (assign_x(0)) return iso;
  return std::nullopt;
}

FrameRoundTrip roundtrip_frame(const FrameWithRelations& fr, const EnumerationOptions& opts, std::size_t max_points) {
  const Report axioms = check_axioms(fr, AxiomLevel::star, opts);
  if (!axioms.all_passed())
    throw Error(Errc::precondition_failed, "frame does not satisfy the star axioms",
                json{{"failed", axioms.failed_ids()}});
  SetAlgebra clopens = clopen_algebra(fr, opts);
  CanonicalFrame canonical = canonical_frame(clopens.nle, opts);
  FrameRoundTrip rt{std::move(clopens), std::move(canonical), std::nullopt, {}};
  rt.checks.append(rt.clopens.checks);
  rt.iso = find_frame_isomorphism(fr, rt.canonical.frame, max_points);
  rt.checks.add(timed([&] {
    if (!rt.iso) return fail_check("frame-iso", json{{"reason", "no isomorphism exists"}});
    json px = json::object(), py = json::object();
    for (std::size_t x = 0; x < rt.iso->px.size(); ++x)
      px[fr.frame.name(Sort::one, x)] = rt.canonical.frame.frame.name(Sort::one, rt.iso->px[x]);
    for (std::size_t y = 0; y < rt.iso->py.size(); ++y)
      py[fr.frame.name(Sort::dual, y)] = rt.canonical.frame.frame.name(Sort::dual, rt.iso->py[y]);
    Check c = pass_check("frame-iso");
    c.witness = json{{"p", px}, {"q", py}};
    return c;
  }));
  return rt;
}

namespace {

// All subsets of an n-point carrier that are upward closed in the preorder.
std::vector<PointSet> upsets(const SortedFrame& f, Sort s) {
  const std::size_t n = f.size(s);
  if (n > 16) throw Error(Errc::scale_exceeded, "subset enumeration over more than 16 points refused");
  std::vector<PointSet> out;
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    PointSet m = from_mask(n, mask);
    bool up = true;
    for_each_member(m, [&](std::size_t u) { up = up && f.gamma(s, u).is_subset_of(m); });
    if (up) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

ChainResult diamond_chain(const WeakBoundedMorphism& pi) {
  require_total(pi);
  auto holds_for = [&](const PointSet& a) {
    const SortedSet lhs = preimage(pi, residuated_pair(tgt(pi), {Sort::one, a}, Residuated::diamond_xy));
    const SortedSet rhs = residuated_pair(src(pi), preimage(pi, {Sort::one, a}), Residuated::diamond_xy);
    return lhs.members.is_subset_of(rhs.members);
  };
  ChainResult r;
  r.all_monotone_sets = true;
  for (const auto& a : upsets(tgt(pi), Sort::one)) r.all_monotone_sets = r.all_monotone_sets && holds_for(a);
  r.all_closed = true;
  for (std::size_t x = 0; x < tgt(pi).size(Sort::one); ++x)
    r.all_closed = r.all_closed && holds_for(tgt(pi).gamma(Sort::one, x));
  r.back_condition = !max2(pi).has_value();
  return r;
}

ChainResult box_chain(const WeakBoundedMorphism& pi) {
  require_total(pi);
  auto holds_for = [&](const PointSet& b) {
    const SortedSet lhs = residuated_pair(src(pi), preimage(pi, {Sort::dual, b}), Residuated::box_yx);
    const SortedSet rhs = preimage(pi, residuated_pair(tgt(pi), {Sort::dual, b}, Residuated::box_yx));
    return lhs.members.is_subset_of(rhs.members);
  };
  ChainResult r;
  r.all_monotone_sets = true;
  // Decreasing sets are the complements of increasing ones.
  for (const auto& up : upsets(tgt(pi), Sort::dual)) r.all_monotone_sets = r.all_monotone_sets && holds_for(~up);
  r.all_closed = true;
  for (std::size_t y = 0; y < tgt(pi).size(Sort::dual); ++y)
    r.all_closed = r.all_closed && holds_for(~tgt(pi).gamma(Sort::dual, y));
  r.back_condition = !max3(pi).has_value();
  return r;
}

WeakBoundedMorphism compose(const WeakBoundedMorphism& outer, const WeakBoundedMorphism& inner) {
  require_total(outer);
  require_total(inner);
  if (inner.target.frame.size(Sort::one) != outer.source.frame.size(Sort::one) ||
      inner.target.frame.size(Sort::dual) != outer.source.frame.size(Sort::dual))
    throw Error(Errc::precondition_failed, "morphisms are not composable");
  WeakBoundedMorphism c{inner.source, outer.target, {}, {}};
  for (auto x : inner.p) c.p.push_back(outer.p[x]);
  for (auto y : inner.q) c.q.push_back(outer.q[y]);
  return c;
}

}  // namespace srf
