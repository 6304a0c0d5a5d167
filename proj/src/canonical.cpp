#include "srf/canonical.hpp"

#include "srf/error.hpp"

namespace srf {

using nlohmann::json;

SortedFrame canonical_polarity(const Lattice& l) {
  const auto fs = filters(l);
  const auto is = ideals(l);
  std::vector<std::string> xs, ys;
  for (const auto& f : fs) xs.push_back("↑" + l.names[f.generator]);
  for (const auto& i : is) ys.push_back("↓" + l.names[i.generator]);
  std::vector<PointSet> rows(fs.size(), PointSet(is.size()));
  for (std::size_t x = 0; x < fs.size(); ++x)
    for (std::size_t y = 0; y < is.size(); ++y) rows[x][y] = fs[x].members.intersects(is[y].members);
  return SortedFrame(std::move(xs), std::move(ys), std::move(rows));
}

namespace {

const PointSet& members_of(const Principal& p) {
  return std::visit([](const auto& v) -> const PointSet& { return v.members; }, p);
}

Sort sort_of(const Principal& p) { return std::holds_alternative<Filter>(p) ? Sort::one : Sort::dual; }

}  // namespace

Principal point_operator(const NLE& nle, const NormalOperator& f, const std::vector<Principal>& u) {
  if (u.size() != f.arity())
    throw Error(Errc::sort_mismatch, f.name + " takes " + std::to_string(f.arity()) + " arguments");
  std::vector<PointSet> sets;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (sort_of(u[j]) != f.dtype.inputs[j])
      throw Error(Errc::sort_mismatch, "argument " + std::to_string(j + 1) + " of " + f.name + " must be " +
                                           (f.dtype.inputs[j] == Sort::one ? "a filter" : "an ideal"));
    sets.push_back(members_of(u[j]));
  }
  const Lattice& l = nle.lattice;
  PointSet values(l.size());
  for_each_product(sets, [&](const std::vector<std::size_t>& a) { values.set(f(a)); });
  if (f.dtype.output == Sort::one) return filter_generated(l, values);
  return ideal_generated(l, values);
}

SortedRelation canonical_relation(const NLE& nle, const SortedFrame& frame, const NormalOperator& f) {
  const Lattice& l = nle.lattice;
  const auto fs = filters(l);
  const auto is = ideals(l);
  SortedRelation r(f.name, sort_type_of(f.dtype), frame);
  std::vector<std::size_t> u(r.arity(), 0);
  do {
    std::vector<Principal> args;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (f.dtype.inputs[j] == Sort::one)
        args.emplace_back(fs[u[j]]);
      else
        args.emplace_back(is[u[j]]);
    }
    const PointSet image = members_of(point_operator(nle, f, args));
    PointSet& sec = r.at(u);
    for (std::size_t w = 0; w < sec.size(); ++w) {
      const PointSet& wm = f.dtype.output == Sort::one ? fs[w].members : is[w].members;
      sec[w] = image.is_subset_of(wm);
    }
  } while (r.index.next(u));
  return r;
}

CanonicalFrame canonical_frame(const NLE& nle, const EnumerationOptions& opts) {
  CanonicalFrame cf;
  cf.nle = nle;
  cf.filters = filters(nle.lattice);
  cf.ideals = ideals(nle.lattice);
  cf.frame.name = nle.name.empty() ? "canonical" : "canonical(" + nle.name + ")";
  cf.frame.frame = canonical_polarity(nle.lattice);
  for (const auto& f : nle.operators) cf.frame.relations.push_back(canonical_relation(nle, cf.frame.frame, f));
  cf.axioms = check_axioms(cf.frame, AxiomLevel::star, opts);
  return cf;
}

SortedSet zeta1(const CanonicalFrame& cf, Elem a) {
  if (a >= cf.nle.lattice.size()) throw Error(Errc::unknown_element, "element index out of range");
  SortedSet s = cf.frame.frame.empty(Sort::one);
  for (std::size_t x = 0; x < cf.filters.size(); ++x) s.members[x] = cf.filters[x].members[a];
  return s;
}

SortedSet zetad(const CanonicalFrame& cf, Elem a) {
  if (a >= cf.nle.lattice.size()) throw Error(Errc::unknown_element, "element index out of range");
  SortedSet s = cf.frame.frame.empty(Sort::dual);
  for (std::size_t y = 0; y < cf.ideals.size(); ++y) s.members[y] = cf.ideals[y].members[a];
  return s;
}

SortedSet zeta1(const CanonicalFrame& cf, std::string_view a) { return zeta1(cf, cf.nle.lattice.at(a)); }
SortedSet zetad(const CanonicalFrame& cf, std::string_view a) { return zetad(cf, cf.nle.lattice.at(a)); }

Report verify_representation(const CanonicalFrame& cf, const EnumerationOptions& opts) {
  Report rep;
  const Lattice& l = cf.nle.lattice;
  const SortedFrame& fr = cf.frame.frame;
  const std::size_t n = l.size();
  std::vector<SortedSet> z1, zd;
  for (Elem a = 0; a < n; ++a) {
    z1.push_back(zeta1(cf, a));
    zd.push_back(zetad(cf, a));
  }
  auto names2 = [&](Elem a, Elem b) { return json{l.names[a], l.names[b]}; };

  rep.add(timed([&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a + 1; b < n; ++b)
        if (z1[a] == z1[b]) return fail_check("rep-injective", json{{"elements", names2(a, b)}});
    return pass_check("rep-injective");
  }));
  rep.add(timed([&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (l.leq(a, b) != z1[a].members.is_subset_of(z1[b].members))
          return fail_check("rep-order", json{{"elements", names2(a, b)}, {"leq", l.leq(a, b)}});
    return pass_check("rep-order");
  }));
  rep.add(timed([&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (z1[l.meet(a, b)].members != (z1[a].members & z1[b].members))
          return fail_check("rep-meet", json{{"elements", names2(a, b)}});
    return pass_check("rep-meet");
  }));
  rep.add(timed([&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (z1[l.join(a, b)] != closure(fr, SortedSet{Sort::one, z1[a].members | z1[b].members}))
          return fail_check("rep-join", json{{"elements", names2(a, b)}});
    return pass_check("rep-join");
  }));
  rep.add(timed([&] {
    const auto g = enumerate_galois_sets(fr, Sort::one, opts);
    PointSet hit(g.size());
    for (Elem a = 0; a < n; ++a) {
      auto idx = g.index_of(z1[a].members);
      if (!idx || !g.sets[*idx].clopen())
        return fail_check("rep-clopen-image", json{{"element", l.names[a]}, {"set", set_names(fr, z1[a])}});
      hit.set(*idx);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.sets[i].clopen() && !hit[i])
        return fail_check("rep-clopen-image", json{{"unrepresented_clopen", set_names(fr, {Sort::one, g.sets[i].members})}});
    return pass_check("rep-clopen-image");
  }));
  rep.add(timed([&] {
    for (Elem a = 0; a < n; ++a)
      if (galois_map(fr, z1[a]) != zd[a] || galois_map(fr, zd[a]) != z1[a])
        return fail_check("rep-zeta-dual", json{{"element", l.names[a]}});
    return pass_check("rep-zeta-dual");
  }));

  const auto fs = filters(l);
  const auto is = ideals(l);
  for (std::size_t k = 0; k < cf.nle.operators.size(); ++k) {
    const NormalOperator& f = cf.nle.operators[k];
    const SortedRelation& r = cf.frame.relations[k];
    const auto idx = f.indexer();

    rep.add(timed([&] {
      std::vector<std::size_t> a(f.arity(), 0);
      do {
        std::vector<SortedSet> args;
        for (auto e : a) args.push_back(z1[e]);
        const SortedSet lhs = z1[f(a)];
        const SortedSet rhs = lift_single_sorted(cf.frame, r, args);
        if (lhs != rhs)
          return fail_check("rep-op:" + f.name, json{{"args", element_names(l, a)},
                                                     {"value", l.names[f(a)]},
                                                     {"lifted", set_names(fr, rhs)}});
      } while (idx.next(a));
      return pass_check("rep-op:" + f.name);
    }));
    rep.add(timed([&] {
      std::vector<std::size_t> a(f.arity(), 0);
      do {
        std::vector<SortedSet> args;
        for (std::size_t j = 0; j < a.size(); ++j)
          args.push_back(f.dtype.inputs[j] == Sort::one ? z1[a[j]] : zd[a[j]]);
        const SortedSet lhs = f.dtype.output == Sort::one ? z1[f(a)] : zd[f(a)];
        const SortedSet rhs = closed_image(cf.frame, r, args);
        if (lhs != rhs)
          return fail_check("rep-op-sorted:" + f.name,
                            json{{"args", element_names(l, a)}, {"value", l.names[f(a)]}, {"image", set_names(fr, rhs)}});
      } while (idx.next(a));
      return pass_check("rep-op-sorted:" + f.name);
    }));

    auto member_sets = [&](const std::vector<std::size_t>& u) {
      std::vector<PointSet> sets;
      for (std::size_t j = 0; j < u.size(); ++j)
        sets.push_back(f.dtype.inputs[j] == Sort::one ? fs[u[j]].members : is[u[j]].members);
      return sets;
    };
    const Sort out = f.dtype.output;
    const std::size_t nout = fr.size(out);
    const std::size_t nopp = fr.size(flip(out));
    auto out_members = [&](Sort s, std::size_t w) -> const PointSet& {
      return s == Sort::one ? fs[w].members : is[w].members;
    };

    rep.add(timed([&] {
      std::vector<std::size_t> u(r.arity(), 0);
      do {
        const auto sets = member_sets(u);
        for (std::size_t w = 0; w < nout; ++w) {
          bool all_in = true;
          for_each_product(sets, [&](const std::vector<std::size_t>& a) { all_in = all_in && out_members(out, w)[f(a)]; });
          if (r.holds(w, u) != all_in)
            return fail_check("rep-relation:" + f.name, json{{"w", fr.name(out, w)},
                                                             {"args", point_names(fr, r.sort.inputs, u)},
                                                             {"relation", r.holds(w, u)}});
        }
      } while (r.index.next(u));
      return pass_check("rep-relation:" + f.name);
    }));
    rep.add(timed([&] {
      const SortedRelation d = galois_dual(cf.frame, r);
      std::vector<std::size_t> u(r.arity(), 0);
      do {
        const auto sets = member_sets(u);
        for (std::size_t v = 0; v < nopp; ++v) {
          bool some_in = false;
          for_each_product(sets, [&](const std::vector<std::size_t>& a) { some_in = some_in || out_members(flip(out), v)[f(a)]; });
          if (d.holds(v, u) != some_in)
            return fail_check("rep-dual-relation:" + f.name, json{{"v", fr.name(flip(out), v)},
                                                                  {"args", point_names(fr, r.sort.inputs, u)},
                                                                  {"relation", d.holds(v, u)}});
        }
      } while (r.index.next(u));
      return pass_check("rep-dual-relation:" + f.name);
    }));
  }
  return rep;
}

}  // namespace srf
