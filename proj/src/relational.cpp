#include "srf/relational.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "srf/error.hpp"

namespace srf {

using nlohmann::json;

std::string SortType::to_string() const {
  std::string s = "(";
  s += tag(output);
  s += ';';
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (j) s += ',';
    s += tag(inputs[j]);
  }
  s += ')';
  return s;
}

SortType sort_type_of(const DistributionType& t) { return {t.output, t.inputs}; }
DistributionType distribution_type_of(const SortType& s) { return {s.inputs, s.output}; }

namespace {

std::vector<std::size_t> carrier_sizes(const SortedFrame& f, const std::vector<Sort>& sorts) {
  std::vector<std::size_t> r;
  for (Sort s : sorts) r.push_back(f.size(s));
  return r;
}

void require_place(const SortedRelation& r, std::size_t k) {
  if (k < 1 || k > r.arity())
    throw Error(Errc::index_out_of_range,
                "place " + std::to_string(k) + " outside 1.." + std::to_string(r.arity()) + " for " + r.name);
}

void require_sorts(const SortedRelation& r, const std::vector<SortedSet>& args, const std::vector<Sort>& expected) {
  if (args.size() != expected.size())
    throw Error(Errc::sort_mismatch, r.name + " expects " + std::to_string(expected.size()) + " arguments");
  for (std::size_t j = 0; j < args.size(); ++j)
    if (args[j].sort != expected[j])
      throw Error(Errc::sort_mismatch, "argument " + std::to_string(j + 1) + " of " + r.name + " must have sort " +
                                           std::string(tag(expected[j])));
}

void require_galois(const FrameWithRelations& fr, const std::vector<SortedSet>& args) {
  for (std::size_t j = 0; j < args.size(); ++j)
    if (!is_galois(fr.frame, args[j]))
      throw Error(Errc::not_galois_input, "argument " + std::to_string(j + 1) + " is not a Galois set",
                  json{{"place", j + 1}, {"set", set_names(fr.frame, args[j])}});
}

PointSet union_image(const SortedRelation& r, std::size_t out_size, const std::vector<SortedSet>& w) {
  PointSet acc(out_size);
  std::vector<PointSet> ms;
  for (const auto& s : w) ms.push_back(s.members);
  for_each_product(ms, [&](const std::vector<std::size_t>& t) { acc |= r.at(t); });
  return acc;
}

// The sort list of R with the entry at place k (1-based) replaced.
std::vector<Sort> with_place(std::vector<Sort> sorts, std::size_t k, Sort s) {
  sorts[k - 1] = s;
  return sorts;
}

}  // namespace

SortedRelation::SortedRelation(std::string n, SortType s, const SortedFrame& f)
    : name(std::move(n)), sort(std::move(s)), index(carrier_sizes(f, sort.inputs)) {
  sections.assign(index.count(), PointSet(f.size(sort.output)));
}

std::size_t SortedRelation::tuple_count() const {
  std::size_t c = 0;
  for (const auto& s : sections) c += s.count();
  return c;
}

std::vector<SortType> FrameWithRelations::tau() const {
  std::vector<SortType> t;
  for (const auto& r : relations) t.push_back(r.sort);
  return t;
}

const SortedRelation& FrameWithRelations::relation(std::string_view n) const {
  for (const auto& r : relations)
    if (r.name == n) return r;
  throw Error(Errc::unknown_element, "no relation named '" + std::string(n) + "'");
}

json point_names(const SortedFrame& f, std::span<const Sort> sorts, std::span<const std::size_t> tuple) {
  json out = json::array();
  for (std::size_t j = 0; j < tuple.size(); ++j) out.push_back(f.name(sorts[j], tuple[j]));
  return out;
}

json set_names(const SortedFrame& f, const SortedSet& s) {
  json out = json::array();
  for_each_member(s.members, [&](std::size_t p) { out.push_back(f.name(s.sort, p)); });
  return out;
}

SortedRelation galois_dual(const FrameWithRelations& fr, const SortedRelation& r) {
  SortedRelation d(r.name + "'", SortType{flip(r.sort.output), r.sort.inputs}, fr.frame);
  for (std::size_t i = 0; i < r.sections.size(); ++i)
    d.sections[i] = galois_map(fr.frame, SortedSet{r.sort.output, r.sections[i]}).members;
  return d;
}

SortedSet section(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k, std::size_t w,
                  std::span<const std::size_t> args) {
  if (k > r.arity())
    throw Error(Errc::index_out_of_range, "section place " + std::to_string(k) + " exceeds arity of " + r.name);
  if (args.size() != r.arity()) throw Error(Errc::index_out_of_range, "wrong number of coordinates for " + r.name);
  for (std::size_t j = 0; j < args.size(); ++j)
    if (j + 1 != k && args[j] >= fr.frame.size(r.sort.inputs[j]))
      throw Error(Errc::index_out_of_range, "coordinate " + std::to_string(j + 1) + " out of range");
  if (k == 0) return {r.sort.output, r.at(args)};
  if (w >= fr.frame.size(r.sort.output)) throw Error(Errc::index_out_of_range, "output point out of range");
  const Sort s = r.sort.inputs[k - 1];
  std::vector<std::size_t> t(args.begin(), args.end());
  PointSet out(fr.frame.size(s));
  for (std::size_t v = 0; v < out.size(); ++v) {
    t[k - 1] = v;
    if (r.holds(w, t)) out.set(v);
  }
  return {s, out};
}

SortedSet image_operator(const FrameWithRelations& fr, const SortedRelation& r, const std::vector<SortedSet>& w) {
  require_sorts(r, w, r.sort.inputs);
  return {r.sort.output, union_image(r, fr.frame.size(r.sort.output), w)};
}

SortedSet closed_image(const FrameWithRelations& fr, const SortedRelation& r, const std::vector<SortedSet>& f) {
  require_sorts(r, f, r.sort.inputs);
  require_galois(fr, f);
  return closure(fr.frame, image_operator(fr, r, f));
}

StableLattices stable_lattices(const SortedFrame& f, const EnumerationOptions& opts) {
  return {enumerate_galois_sets(f, Sort::one, opts), enumerate_galois_sets(f, Sort::dual, opts)};
}

ResidualForms residual_forms(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                             const std::vector<SortedSet>& args, const StableLattices& st) {
  require_place(r, k);
  require_sorts(r, args, with_place(r.sort.inputs, k, r.sort.output));
  require_galois(fr, args);
  const Sort s = r.sort.inputs[k - 1];
  const PointSet& g = args[k - 1].members;
  std::vector<SortedSet> e = args;
  auto fits = [&](const PointSet& candidate) {
    e[k - 1] = SortedSet{s, candidate};
    return image_operator(fr, r, e).members.is_subset_of(g);
  };
  ResidualForms out{fr.frame.empty(s), fr.frame.empty(s), fr.frame.empty(s)};
  for (const auto& gs : st.of(s).sets)
    if (fits(gs.members)) out.galois_union.members |= gs.members;
  for (std::size_t u = 0; u < fr.frame.size(s); ++u)
    if (fits(fr.frame.gamma(s, u))) {
      out.closed_union.members |= fr.frame.gamma(s, u);
      out.points.members.set(u);
    }
  return out;
}

SortedSet residual(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                   const std::vector<SortedSet>& args, const StableLattices& st) {
  return residual_forms(fr, r, k, args, st).galois_union;
}

SortedSet conjugate(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                    const std::vector<SortedSet>& args, const StableLattices& st) {
  require_place(r, k);
  require_sorts(r, args, with_place(r.sort.inputs, k, flip(r.sort.output)));
  require_galois(fr, args);
  const Sort s = flip(r.sort.inputs[k - 1]);
  const PointSet fk_prime = galois_map(fr.frame, args[k - 1]).members;
  std::vector<SortedSet> e = args;
  PointSet acc = full_set(fr.frame.size(s));
  for (const auto& gs : st.of(s).sets) {
    e[k - 1] = galois_map(fr.frame, SortedSet{s, gs.members});
    if (closed_image(fr, r, e).members.is_subset_of(fk_prime)) acc &= gs.members;
  }
  return {s, acc};
}

std::optional<SectionWitness> non_galois_section(const FrameWithRelations& fr, const SortedRelation& r,
                                                 std::optional<std::size_t> only_place) {
  const SortedRelation dual = galois_dual(fr, r);
  const Sort vsort = dual.sort.output;
  for (std::size_t k = 1; k <= r.arity(); ++k) {
    if (only_place && *only_place != k) continue;
    std::vector<std::size_t> radices = carrier_sizes(fr.frame, r.sort.inputs);
    radices[k - 1] = 1;
    const TupleIndexer ctx(radices);
    for (std::size_t v = 0; v < fr.frame.size(vsort); ++v) {
      std::vector<std::size_t> p(r.arity(), 0);
      do {
        SortedSet sec = section(fr, dual, k, v, p);
        if (!is_galois(fr.frame, sec)) return SectionWitness{k, v, p, std::move(sec)};
      } while (ctx.next(p));
    }
  }
  return std::nullopt;
}

SortedRelation build_conjugate_relation(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k) {
  require_place(r, k);
  if (auto bad = non_galois_section(fr, r, k)) {
    const SortedRelation dual = galois_dual(fr, r);
    json args = point_names(fr.frame, r.sort.inputs, bad->args);
    args[bad->place - 1] = "_";
    throw Error(Errc::section_not_galois, "a section of " + r.name + "' at place " + std::to_string(k) +
                                              " is not a Galois set",
                json{{"relation", r.name},
                     {"place", k},
                     {"v", fr.frame.name(dual.sort.output, bad->v)},
                     {"args", args},
                     {"section", set_names(fr.frame, bad->section)}});
  }
  const SortedRelation dual = galois_dual(fr, r);
  SortType st{flip(r.sort.inputs[k - 1]), with_place(r.sort.inputs, k, flip(r.sort.output))};
  SortedRelation s("conj" + std::to_string(k) + "(" + r.name + ")", st, fr.frame);
  std::vector<std::size_t> q(s.arity(), 0);
  do {
    const std::size_t v = q[k - 1];
    s.at(q) = galois_map(fr.frame, section(fr, dual, k, v, q)).members;
  } while (s.index.next(q));
  return s;
}

SortedSet lift_single_sorted(const FrameWithRelations& fr, const SortedRelation& r, const std::vector<SortedSet>& a) {
  require_sorts(r, a, std::vector<Sort>(r.arity(), Sort::one));
  require_galois(fr, a);
  std::vector<SortedSet> args;
  for (std::size_t j = 0; j < a.size(); ++j)
    args.push_back(r.sort.inputs[j] == Sort::dual ? galois_map(fr.frame, a[j]) : a[j]);
  SortedSet out = closed_image(fr, r, args);
  return r.sort.output == Sort::dual ? galois_map(fr.frame, out) : out;
}

namespace {

std::string set_label(const SortedFrame& f, Sort s, const PointSet& m) {
  std::string out = "{";
  bool first = true;
  for_each_member(m, [&](std::size_t p) {
    if (!first) out += ',';
    out += f.name(s, p);
    first = false;
  });
  return out + "}";
}

SetAlgebra build_set_algebra(const FrameWithRelations& fr, std::vector<PointSet> family, std::string name) {
  std::sort(family.begin(), family.end(), canonical_less);
  RawOrder raw;
  for (const auto& m : family) raw.elements.push_back(set_label(fr.frame, Sort::one, m));
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < family.size(); ++b)
      if (a != b && family[a].is_subset_of(family[b])) raw.leq.emplace_back(raw.elements[a], raw.elements[b]);

  SetAlgebra alg;
  alg.nle.name = std::move(name);
  alg.nle.lattice = validate_lattice(raw);
  alg.sets = family;
  std::map<PointSet, Elem> where;
  for (Elem a = 0; a < family.size(); ++a) where.emplace(family[a], a);

  for (const auto& r : fr.relations) {
    auto op = make_operator(alg.nle.lattice, r.name, distribution_type_of(r.sort), [&](std::span<const Elem> args) {
      std::vector<SortedSet> a;
      for (auto e : args) a.push_back(SortedSet{Sort::one, family[e]});
      const SortedSet v = lift_single_sorted(fr, r, a);
      auto it = where.find(v.members);
      if (it == where.end()) {
        json in = json::array();
        for (auto e : args) in.push_back(raw.elements[e]);
        throw Error(Errc::precondition_failed, "lifted " + r.name + " leaves the set family",
                    json{{"relation", r.name}, {"args", in}, {"value", set_label(fr.frame, Sort::one, v.members)}});
      }
      return it->second;
    });
    const auto normality = validate_normal_operator(alg.nle.lattice, op);
    if (normality.normal()) {
      alg.checks.add(pass_check("complex-normality:" + r.name));
    } else {
      const auto& v = normality.violations.front();
      json w{{"place", v.place + 1},
             {"args", element_names(alg.nle.lattice, v.args)},
             {"expected", alg.nle.lattice.names[v.expected]},
             {"actual", alg.nle.lattice.names[v.actual]}};
      if (v.left) w["joined"] = {alg.nle.lattice.names[*v.left], alg.nle.lattice.names[*v.right]};
      alg.checks.add(fail_check("complex-normality:" + r.name, w));
    }
    alg.nle.operators.push_back(std::move(op));
  }
  return alg;
}

}  // namespace

SetAlgebra complex_algebra(const FrameWithRelations& fr, const EnumerationOptions& opts) {
  const Report axioms = check_axioms(fr, AxiomLevel::base, opts);
  if (!axioms.all_passed())
    throw Error(Errc::axiom_violation, "frame violates required axioms", json{{"failed", axioms.failed_ids()}});
  const auto g = enumerate_galois_sets(fr.frame, Sort::one, opts);
  std::vector<PointSet> family;
  for (const auto& s : g.sets) family.push_back(s.members);
  return build_set_algebra(fr, std::move(family), fr.name + "+");
}

SetAlgebra clopen_algebra(const FrameWithRelations& fr, const EnumerationOptions& opts) {
  const auto g = enumerate_galois_sets(fr.frame, Sort::one, opts);
  std::vector<PointSet> family;
  for (const auto& s : g.sets)
    if (s.clopen()) family.push_back(s.members);
  if (family.empty()) throw Error(Errc::precondition_failed, "frame has no clopen stable sets");
  try {
    return build_set_algebra(fr, std::move(family), fr.name + "*");
  } catch (const Error& e) {
    if (e.code() == Errc::not_a_lattice || e.code() == Errc::no_bounds)
      throw Error(Errc::precondition_failed, std::string("clopen sets do not form a lattice: ") + e.what(),
                  e.detail());
    throw;
  }
}

namespace {

bool clopen_point(const SortedFrame& f, Sort s, std::size_t u) {
  const Sort o = flip(s);
  for (std::size_t v = 0; v < f.size(o); ++v)
    if (f.prime_point(o, v) == f.gamma(s, u)) return true;
  return false;
}

std::optional<std::size_t> closed_generator(const SortedFrame& f, Sort s, const PointSet& m) {
  for (std::size_t w = 0; w < f.size(s); ++w)
    if (f.gamma(s, w) == m) return w;
  return std::nullopt;
}

bool is_open_set(const SortedFrame& f, Sort s, const PointSet& m) {
  const Sort o = flip(s);
  for (std::size_t v = 0; v < f.size(o); ++v)
    if (f.prime_point(o, v) == m) return true;
  return false;
}

std::optional<json> fax1(const SortedFrame& f) {
  if (auto w = separation_witness(f))
    return json{{"sort", tag(w->first)},
                {"points", {f.name(w->first, w->second.first), f.name(w->first, w->second.second)}}};
  return std::nullopt;
}

std::optional<json> fax2(const FrameWithRelations& fr, bool star) {
  const SortedFrame& f = fr.frame;
  for (const auto& r : fr.relations) {
    const Sort out = r.sort.output;
    std::vector<std::size_t> u(r.arity(), 0);
    do {
      const PointSet& sec = r.at(u);
      if (!closed_generator(f, out, sec))
        return json{{"relation", r.name},
                    {"args", point_names(f, r.sort.inputs, u)},
                    {"section", set_names(f, SortedSet{out, sec})},
                    {"reason", "section is not a closed element"}};
      if (star) {
        bool all_clopen = true;
        for (std::size_t j = 0; j < u.size() && all_clopen; ++j) all_clopen = clopen_point(f, r.sort.inputs[j], u[j]);
        if (all_clopen && !is_open_set(f, out, sec))
          return json{{"relation", r.name},
                      {"args", point_names(f, r.sort.inputs, u)},
                      {"section", set_names(f, SortedSet{out, sec})},
                      {"reason", "clopen arguments but section is not clopen"}};
      }
    } while (r.index.next(u));
  }
  return std::nullopt;
}

std::optional<json> fax3(const FrameWithRelations& fr) {
  const SortedFrame& f = fr.frame;
  for (const auto& r : fr.relations) {
    std::vector<std::size_t> u(r.arity(), 0);
    do {
      for (std::size_t k = 0; k < r.arity(); ++k) {
        const Sort s = r.sort.inputs[k];
        std::vector<std::size_t> t = u;
        for (std::size_t up = 0; up < f.size(s); ++up) {
          if (up == u[k] || !f.below(s, u[k], up)) continue;
          t[k] = up;
          const PointSet extra = r.at(t) - r.at(u);
          if (extra.any())
            return json{{"relation", r.name},
                        {"place", k + 1},
                        {"args", point_names(f, r.sort.inputs, u)},
                        {"raised_to", f.name(s, up)},
                        {"w", f.name(r.sort.output, extra.find_first())}};
        }
      }
    } while (r.index.next(u));
  }
  return std::nullopt;
}

std::optional<json> fax4(const FrameWithRelations& fr) {
  for (const auto& r : fr.relations) {
    if (auto bad = non_galois_section(fr, r)) {
      json args = point_names(fr.frame, r.sort.inputs, bad->args);
      args[bad->place - 1] = "_";
      return json{{"relation", r.name},
                  {"place", bad->place},
                  {"v", fr.frame.name(flip(r.sort.output), bad->v)},
                  {"args", args},
                  {"section", set_names(fr.frame, bad->section)}};
    }
  }
  return std::nullopt;
}

std::vector<PointSet> clopens_of(const GaloisSetLattice& g) {
  std::vector<PointSet> out;
  for (const auto& s : g.sets)
    if (s.clopen()) out.push_back(s.members);
  return out;
}

std::optional<json> fax5(const SortedFrame& f, const StableLattices& st) {
  for (Sort s : {Sort::one, Sort::dual}) {
    const auto c = clopens_of(st.of(s));
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        const PointSet m = c[a] & c[b];
        auto idx = st.of(s).index_of(m);
        if (!idx || !st.of(s).sets[*idx].clopen())
          return json{{"sort", tag(s)},
                      {"sets", {set_names(f, {s, c[a]}), set_names(f, {s, c[b]})}},
                      {"intersection", set_names(f, {s, m})}};
      }
  }
  return std::nullopt;
}

std::optional<json> fax6(const SortedFrame& f, const StableLattices& st) {
  for (Sort s : {Sort::one, Sort::dual}) {
    const auto c = clopens_of(st.of(s));
    for (std::size_t u = 0; u < f.size(s); ++u) {
      PointSet meet = full_set(f.size(s));
      for (const auto& k : c)
        if (f.gamma(s, u).is_subset_of(k)) meet &= k;
      if (meet != f.gamma(s, u))
        return json{{"sort", tag(s)},
                    {"point", f.name(s, u)},
                    {"closed", set_names(f, {s, f.gamma(s, u)})},
                    {"clopen_meet", set_names(f, {s, meet})}};
    }
    // Every intersection of clopens, including the empty one, must be closed.
    std::set<PointSet> meets{full_set(f.size(s))};
    std::vector<PointSet> frontier{full_set(f.size(s))};
    while (!frontier.empty()) {
      std::vector<PointSet> next;
      for (const auto& m : frontier)
        for (const auto& k : c) {
          PointSet n = m & k;
          if (meets.insert(n).second) next.push_back(std::move(n));
        }
      frontier = std::move(next);
    }
    std::vector<PointSet> ordered(meets.begin(), meets.end());
    std::sort(ordered.begin(), ordered.end(), canonical_less);
    for (const auto& m : ordered)
      if (!closed_generator(f, s, m))
        return json{{"sort", tag(s)}, {"intersection", set_names(f, {s, m})}, {"reason", "not a closed element"}};
  }
  return std::nullopt;
}

std::optional<json> fax7(const SortedFrame& f, const StableLattices& st) {
  for (Sort s : {Sort::one, Sort::dual}) {
    const auto c = clopens_of(st.of(s));
    for (std::size_t u = 0; u < f.size(s); ++u)
      for (std::size_t w = u + 1; w < f.size(s); ++w) {
        const bool split = std::any_of(c.begin(), c.end(), [&](const PointSet& k) { return k[u] != k[w]; });
        if (!split) return json{{"sort", tag(s)}, {"points", {f.name(s, u), f.name(s, w)}}};
      }
  }
  return std::nullopt;
}

}  // namespace

Report check_axioms(const FrameWithRelations& fr, AxiomLevel level, const EnumerationOptions& opts) {
  Report rep;
  const bool star = level == AxiomLevel::star;
  rep.add(timed([&] { return check_from("FAx1", fax1(fr.frame)); }));
  rep.add(timed([&] { return check_from(star ? "FAx2*" : "FAx2", fax2(fr, star)); }));
  rep.add(timed([&] { return check_from("FAx3", fax3(fr)); }));
  rep.add(timed([&] { return check_from("FAx4", fax4(fr)); }));
  if (!star) return rep;
  const StableLattices st = stable_lattices(fr.frame, opts);
  rep.add(timed([&] { return check_from("FAx5", fax5(fr.frame, st)); }));
  rep.add(timed([&] { return check_from("FAx6", fax6(fr.frame, st)); }));
  rep.add(timed([&] {
    return check_from("FAx7", fax7(fr.frame, st),
                      "finite frame: the topology is discrete and compact; checked that clopens separate points");
  }));
  return rep;
}

Check check_distribution(const FrameWithRelations& fr, const SortedRelation& r, std::size_t k,
                         const StableLattices& st, const DistributionOptions& opts) {
  require_place(r, k);
  const std::string id = "distribution:" + r.name + ":" + std::to_string(k);
  const Sort s = r.sort.inputs[k - 1];
  const GaloisSetLattice& lk = st.of(s);
  const std::size_t m = lk.size();

  std::vector<std::vector<std::size_t>> families;
  const bool all = opts.exhaustive || m <= opts.subset_limit;
  std::string note;
  if (all) {
    if (m > 20) throw Error(Errc::scale_exceeded, "exhaustive distribution check over 2^" + std::to_string(m) + " families");
    for (unsigned long long mask = 0; mask < (1ULL << m); ++mask) {
      std::vector<std::size_t> fam;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1ULL) fam.push_back(i);
      families.push_back(std::move(fam));
    }
    note = "all " + std::to_string(families.size()) + " families";
  } else {
    families.push_back({});
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) families.push_back({a, b});
    std::mt19937 rng(opts.seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < opts.samples; ++i) {
      std::vector<std::size_t> fam;
      for (std::size_t a = 0; a < m; ++a)
        if (coin(rng)) fam.push_back(a);
      families.push_back(std::move(fam));
    }
    note = "sampled: pairs plus " + std::to_string(opts.samples) + " random families";
  }

  std::vector<std::size_t> radices;
  for (Sort in : r.sort.inputs) radices.push_back(st.of(in).size());
  radices[k - 1] = 1;
  const TupleIndexer ctx(radices);
  std::vector<std::size_t> c(r.arity(), 0);
  std::vector<SortedSet> args(r.arity());
  do {
    for (std::size_t j = 0; j < r.arity(); ++j)
      if (j + 1 != k) args[j] = SortedSet{r.sort.inputs[j], st.of(r.sort.inputs[j]).sets[c[j]].members};
    std::vector<SortedSet> values;
    for (std::size_t g = 0; g < m; ++g) {
      args[k - 1] = SortedSet{s, lk.sets[g].members};
      values.push_back(closed_image(fr, r, args));
    }
    for (const auto& fam : families) {
      std::size_t joined = lk.bot;
      PointSet acc(fr.frame.size(r.sort.output));
      for (auto g : fam) {
        joined = lk.join(joined, g);
        acc |= values[g].members;
      }
      const SortedSet rhs = closure(fr.frame, SortedSet{r.sort.output, acc});
      if (values[joined] != rhs) {
        json fam_names = json::array();
        for (auto g : fam) fam_names.push_back(set_names(fr.frame, {s, lk.sets[g].members}));
        json ctx_names = json::array();
        for (std::size_t j = 0; j < r.arity(); ++j)
          ctx_names.push_back(j + 1 == k ? json("_") : set_names(fr.frame, args[j]));
        return fail_check(id, json{{"relation", r.name},
                                   {"place", k},
                                   {"args", ctx_names},
                                   {"family", fam_names},
                                   {"image_of_join", set_names(fr.frame, values[joined])},
                                   {"join_of_images", set_names(fr.frame, rhs)}},
                          note);
      }
    }
  } while (ctx.next(c));
  return pass_check(id, note);
}

std::size_t point_image(const FrameWithRelations& fr, const SortedRelation& r, std::span<const std::size_t> u) {
  if (!check_separated(fr.frame)) throw Error(Errc::not_separated, "frame is not separated");
  const Sort out = r.sort.output;
  if (auto w = closed_generator(fr.frame, out, r.at(u))) return *w;
  throw Error(Errc::not_closed, "section of " + r.name + " is not a closed element",
              json{{"relation", r.name}, {"args", point_names(fr.frame, r.sort.inputs, u)}});
}

}  // namespace srf
