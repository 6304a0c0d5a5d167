#include "srf/order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "srf/error.hpp"

namespace srf {

using nlohmann::json;

std::optional<Elem> Lattice::find(std::string_view name) const {
  for (Elem a = 0; a < names.size(); ++a)
    if (names[a] == name) return a;
  return std::nullopt;
}

Elem Lattice::at(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw Error(Errc::unknown_element, "no element named '" + std::string(name) + "'");
}

namespace {

// Greatest element of `candidates` w.r.t. `up`, if any.
std::optional<Elem> greatest(const std::vector<PointSet>& up, const PointSet& candidates) {
  for (auto c = candidates.find_first(); c != PointSet::npos; c = candidates.find_next(c)) {
    bool above_all = true;
    for (auto d = candidates.find_first(); d != PointSet::npos; d = candidates.find_next(d))
      if (!up[d][c]) {
        above_all = false;
        break;
      }
    if (above_all) return c;
  }
  return std::nullopt;
}

std::optional<Elem> least(const std::vector<PointSet>& up, const PointSet& candidates) {
  for (auto c = candidates.find_first(); c != PointSet::npos; c = candidates.find_next(c))
    if ((candidates & ~up[c]).none()) return c;
  return std::nullopt;
}

}  // namespace

Lattice validate_lattice(const RawOrder& raw) {
  const std::size_t n = raw.elements.size();
  if (n == 0) throw Error(Errc::no_bounds, "empty element list has no bounds");

  std::map<std::string, Elem, std::less<>> index;
  for (Elem a = 0; a < n; ++a) {
    if (!index.emplace(raw.elements[a], a).second)
      throw Error(Errc::not_a_partial_order, "duplicate element '" + raw.elements[a] + "'",
                  json{{"element", raw.elements[a]}});
  }
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw Error(Errc::unknown_element, "pair references unknown element '" + s + "'");
    return it->second;
  };

  std::vector<PointSet> up(n, PointSet(n));
  for (Elem a = 0; a < n; ++a) up[a].set(a);
  for (const auto& [lo, hi] : raw.leq) up[lookup(lo)].set(lookup(hi));
  // Warshall
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (up[i][k]) up[i] |= up[k];

  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (up[a][b] && up[b][a])
        throw Error(Errc::not_a_partial_order,
                    "cycle through '" + raw.elements[a] + "' and '" + raw.elements[b] + "'",
                    json{{"cycle", {raw.elements[a], raw.elements[b]}}});

  std::vector<PointSet> down(n, PointSet(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (up[a][b]) down[b].set(a);

  Lattice l;
  l.names = raw.elements;
  l.up = up;
  l.meet_table.resize(n * n);
  l.join_table.resize(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      auto m = greatest(up, down[a] & down[b]);
      auto j = least(up, up[a] & up[b]);
      if (!m || !j)
        throw Error(Errc::not_a_lattice,
                    std::string("pair ('") + raw.elements[a] + "', '" + raw.elements[b] + "') has no " +
                        (!m ? "meet" : "join"),
                    json{{"pair", {raw.elements[a], raw.elements[b]}}, {"missing", !m ? "meet" : "join"}});
      l.meet_table[a * n + b] = *m;
      l.join_table[a * n + b] = *j;
    }
  }
  auto bot = least(up, full_set(n));
  auto top = greatest(up, full_set(n));
  if (!bot || !top) throw Error(Errc::no_bounds, "order has no global bounds");
  l.bot = *bot;
  l.top = *top;
  return l;
}

Lattice opposite(const Lattice& l) {
  const std::size_t n = l.size();
  Lattice o;
  o.names = l.names;
  o.up.assign(n, PointSet(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (l.up[a][b]) o.up[b].set(a);
  o.meet_table = l.join_table;
  o.join_table = l.meet_table;
  o.bot = l.top;
  o.top = l.bot;
  return o;
}

std::string DistributionType::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (j) s += ',';
    s += tag(inputs[j]);
  }
  s += ';';
  s += tag(output);
  s += ')';
  return s;
}

DistributionType flipped(const DistributionType& t) {
  DistributionType f{t.inputs, flip(t.output)};
  for (auto& s : f.inputs) s = flip(s);
  return f;
}

Elem NormalOperator::operator()(std::span<const Elem> args) const {
  return table[indexer().encode(args)];
}

Elem& NormalOperator::at(std::span<const Elem> args) { return table[indexer().encode(args)]; }

std::vector<DistributionType> NLE::similarity_type() const {
  std::vector<DistributionType> tau;
  for (const auto& f : operators) tau.push_back(f.dtype);
  return tau;
}

const NormalOperator& NLE::op(std::string_view op_name) const {
  for (const auto& f : operators)
    if (f.name == op_name) return f;
  throw Error(Errc::unknown_element, "no operator named '" + std::string(op_name) + "'");
}

NormalityReport validate_normal_operator(const Lattice& l, const NormalOperator& f) {
  NormalityReport report;
  const std::size_t n = l.size();
  auto join_in = [&](Sort s, Elem a, Elem b) { return s == Sort::one ? l.join(a, b) : l.meet(a, b); };
  auto bottom_of = [&](Sort s) { return s == Sort::one ? l.bot : l.top; };

  const auto idx = f.indexer();
  std::vector<Elem> args(f.arity(), 0);
  for (std::size_t place = 0; place < f.arity(); ++place) {
    const Sort in = f.dtype.inputs[place];
    const Sort out = f.dtype.output;
    // Enumerate the other coordinates; the hole stays at 0 in `args`.
    std::vector<std::size_t> ctx_radices(f.arity(), n);
    ctx_radices[place] = 1;
    TupleIndexer ctx(ctx_radices);
    std::vector<std::size_t> c(f.arity(), 0);
    do {
      args.assign(c.begin(), c.end());
      args[place] = bottom_of(in);
      const Elem at_bottom = f(args);
      if (at_bottom != bottom_of(out)) {
        report.violations.push_back({place, args, std::nullopt, std::nullopt, bottom_of(out), at_bottom});
      }
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          args[place] = a;
          const Elem fa = f(args);
          args[place] = b;
          const Elem fb = f(args);
          args[place] = join_in(in, a, b);
          const Elem fab = f(args);
          const Elem expected = join_in(out, fa, fb);
          if (fab != expected) report.violations.push_back({place, args, a, b, expected, fab});
        }
      }
    } while (ctx.next(c));
  }
  (void)idx;
  return report;
}

Filter principal_filter(const Lattice& l, Elem a) { return Filter{l.up[a], a}; }

Ideal principal_ideal(const Lattice& l, Elem a) {
  PointSet down(l.size());
  for (Elem b = 0; b < l.size(); ++b)
    if (l.leq(b, a)) down.set(b);
  return Ideal{down, a};
}

std::vector<Filter> filters(const Lattice& l) {
  std::vector<Filter> out;
  for (Elem a = 0; a < l.size(); ++a) out.push_back(principal_filter(l, a));
  return out;
}

std::vector<Ideal> ideals(const Lattice& l) {
  std::vector<Ideal> out;
  for (Elem a = 0; a < l.size(); ++a) out.push_back(principal_ideal(l, a));
  return out;
}

Filter filter_generated(const Lattice& l, const PointSet& s) {
  Elem m = l.top;
  for_each_member(s, [&](std::size_t a) { m = l.meet(m, a); });
  return principal_filter(l, m);
}

Ideal ideal_generated(const Lattice& l, const PointSet& s) {
  Elem j = l.bot;
  for_each_member(s, [&](std::size_t a) { j = l.join(j, a); });
  return principal_ideal(l, j);
}

json element_names(const Lattice& l, std::span<const Elem> tuple) {
  json out = json::array();
  for (auto a : tuple) out.push_back(l.names.at(a));
  return out;
}

std::vector<HomViolation> validate_homomorphism(const LatticeHomomorphism& h) {
  std::vector<HomViolation> out;
  const Lattice& s = h.source.lattice;
  const Lattice& t = h.target.lattice;
  if (h.map.size() != s.size()) {
    out.push_back({"total", json{{"expected", s.size()}, {"got", h.map.size()}}});
    return out;
  }
  for (Elem a = 0; a < s.size(); ++a)
    if (h.map[a] >= t.size()) {
      out.push_back({"total", json{{"element", s.names[a]}}});
      return out;
    }
  if (h.source.similarity_type() != h.target.similarity_type()) {
    out.push_back({"type", json{{"source", h.source.operators.size()}, {"target", h.target.operators.size()}}});
    return out;
  }
  if (h(s.bot) != t.bot) out.push_back({"bot", json{{"image", t.names[h(s.bot)]}}});
  if (h(s.top) != t.top) out.push_back({"top", json{{"image", t.names[h(s.top)]}}});
  for (Elem a = 0; a < s.size(); ++a) {
    for (Elem b = 0; b < s.size(); ++b) {
      if (h(s.meet(a, b)) != t.meet(h(a), h(b)))
        out.push_back({"meet", json{{"args", {s.names[a], s.names[b]}},
                                    {"lhs", t.names[h(s.meet(a, b))]},
                                    {"rhs", t.names[t.meet(h(a), h(b))]}}});
      if (h(s.join(a, b)) != t.join(h(a), h(b)))
        out.push_back({"join", json{{"args", {s.names[a], s.names[b]}},
                                    {"lhs", t.names[h(s.join(a, b))]},
                                    {"rhs", t.names[t.join(h(a), h(b))]}}});
    }
  }
  for (std::size_t k = 0; k < h.source.operators.size(); ++k) {
    const auto& f = h.source.operators[k];
    const auto& g = h.target.operators[k];
    const auto idx = f.indexer();
    std::vector<std::size_t> args(f.arity(), 0);
    std::vector<Elem> image(f.arity());
    do {
      for (std::size_t j = 0; j < args.size(); ++j) image[j] = h(args[j]);
      if (h(f(args)) != g(image))
        out.push_back({"op:" + f.name, json{{"args", element_names(s, args)},
                                            {"lhs", t.names[h(f(args))]},
                                            {"rhs", t.names[g(image)]}}});
    } while (idx.next(args));
  }
  return out;
}

LatticeHomomorphism compose(const LatticeHomomorphism& outer, const LatticeHomomorphism& inner) {
  LatticeHomomorphism h{inner.source, outer.target, {}};
  for (Elem a = 0; a < inner.map.size(); ++a) h.map.push_back(outer(inner(a)));
  return h;
}

std::optional<std::vector<Elem>> find_isomorphism(const NLE& a, const NLE& b) {
  const Lattice& la = a.lattice;
  const Lattice& lb = b.lattice;
  const std::size_t n = la.size();
  if (n != lb.size() || a.similarity_type() != b.similarity_type()) return std::nullopt;

  auto up_count = [](const Lattice& l, Elem e) { return l.up[e].count(); };
  std::vector<Elem> phi(n, n);
  std::vector<bool> used(n, false);

  std::function<bool(Elem)> extend = [&](Elem e) -> bool {
    if (e == n) {
      for (std::size_t k = 0; k < a.operators.size(); ++k) {
        const auto& f = a.operators[k];
        const auto& g = b.operators[k];
        const auto idx = f.indexer();
        std::vector<std::size_t> args(f.arity(), 0);
        std::vector<Elem> image(f.arity());
        do {
          for (std::size_t j = 0; j < args.size(); ++j) image[j] = phi[args[j]];
          if (phi[f(args)] != g(image)) return false;
        } while (idx.next(args));
      }
      return true;
    }
    for (Elem c = 0; c < n; ++c) {
      if (used[c] || up_count(la, e) != up_count(lb, c)) continue;
      bool ok = true;
      for (Elem d = 0; d < e && ok; ++d)
        ok = la.leq(d, e) == lb.leq(phi[d], c) && la.leq(e, d) == lb.leq(c, phi[d]);
      if (!ok) continue;
      phi[e] = c;
      used[c] = true;
      if (extend(e + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (extend(0)) return phi;
  return std::nullopt;
}

}  // namespace srf
