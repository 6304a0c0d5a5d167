#include "srf/polarity.hpp"

#include <algorithm>

#include "srf/error.hpp"

namespace srf {

SortedFrame::SortedFrame(std::vector<std::string> xs, std::vector<std::string> ys, std::vector<PointSet> gal_rows)
    : xs_(std::move(xs)), ys_(std::move(ys)), rows_(std::move(gal_rows)) {
  const std::size_t nx = xs_.size(), ny = ys_.size();
  if (rows_.size() != nx) throw Error(Errc::precondition_failed, "one ⊥ row per X point required");
  for (auto& r : rows_)
    if (r.size() != ny) throw Error(Errc::precondition_failed, "⊥ row width must equal |Y|");
  cols_.assign(ny, PointSet(nx));
  for (std::size_t x = 0; x < nx; ++x)
    for_each_member(rows_[x], [&](std::size_t y) { cols_[y].set(x); });
  up_x_.assign(nx, PointSet(nx));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t z = 0; z < nx; ++z)
      if (rows_[x].is_subset_of(rows_[z])) up_x_[x].set(z);
  up_y_.assign(ny, PointSet(ny));
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t v = 0; v < ny; ++v)
      if (cols_[y].is_subset_of(cols_[v])) up_y_[y].set(v);
}

std::optional<std::size_t> SortedFrame::find(Sort s, std::string_view name) const {
  const auto& ns = names(s);
  auto it = std::find(ns.begin(), ns.end(), name);
  if (it == ns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ns.begin());
}

SortedSet galois_map(const SortedFrame& f, const SortedSet& u) {
  const Sort out = flip(u.sort);
  PointSet r = full_set(f.size(out));
  for_each_member(u.members, [&](std::size_t p) { r &= f.prime_point(u.sort, p); });
  return {out, std::move(r)};
}

SortedSet closure(const SortedFrame& f, const SortedSet& u) { return galois_map(f, galois_map(f, u)); }

bool is_galois(const SortedFrame& f, const SortedSet& u) { return closure(f, u) == u; }

SortedSet complement(const SortedSet& s) { return {s.sort, ~s.members}; }

SortedSet residuated_pair(const SortedFrame& f, const SortedSet& w, Residuated which) {
  const bool from_x = which == Residuated::diamond_xy || which == Residuated::box_xy;
  const Sort expected = from_x ? Sort::one : Sort::dual;
  if (w.sort != expected)
    throw Error(Errc::sort_mismatch, std::string("argument must have sort ") + std::string(tag(expected)));
  const Sort out = flip(expected);
  PointSet r(f.size(out));
  // I-neighbourhood of an output point p within the input carrier.
  auto neighbourhood = [&](std::size_t p) { return ~f.prime_point(out, p); };
  for (std::size_t p = 0; p < f.size(out); ++p) {
    const PointSet n = neighbourhood(p);
    const bool diamond = which == Residuated::diamond_xy || which == Residuated::diamond_yx;
    r[p] = diamond ? n.intersects(w.members) : n.is_subset_of(w.members);
  }
  return {out, std::move(r)};
}

Preorders sort_preorder(const SortedFrame& f) {
  Preorders p;
  for (std::size_t x = 0; x < f.size(Sort::one); ++x) p.one.push_back(f.gamma(Sort::one, x));
  for (std::size_t y = 0; y < f.size(Sort::dual); ++y) p.dual.push_back(f.gamma(Sort::dual, y));
  return p;
}

std::optional<std::pair<Sort, std::pair<std::size_t, std::size_t>>> separation_witness(const SortedFrame& f) {
  for (Sort s : {Sort::one, Sort::dual})
    for (std::size_t u = 0; u < f.size(s); ++u)
      for (std::size_t w = u + 1; w < f.size(s); ++w)
        if (f.below(s, u, w) && f.below(s, w, u)) return std::pair{s, std::pair{u, w}};
  return std::nullopt;
}

bool check_separated(const SortedFrame& f) { return !separation_witness(f); }

SortedSet upper_closure(const SortedFrame& f, Sort s, std::size_t u) { return {s, f.gamma(s, u)}; }

std::string_view GaloisSet::kind() const noexcept {
  if (clopen()) return "clopen";
  if (closed()) return "closed";
  if (open()) return "open";
  return "other";
}

std::optional<std::size_t> GaloisSetLattice::index_of(const PointSet& s) const {
  auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

GaloisSetLattice enumerate_galois_sets(const SortedFrame& f, Sort s, const EnumerationOptions& opts) {
  const std::size_t n = f.size(s);
  const std::size_t pairs = f.size(Sort::one) * f.size(Sort::dual);
  if (pairs > opts.max_pairs)
    throw Error(Errc::scale_exceeded,
                "frame has " + std::to_string(pairs) + " point pairs, cap is " + std::to_string(opts.max_pairs));
  using Method = EnumerationOptions::Method;
  Method method = opts.method;
  if (method == Method::automatic) method = n <= opts.brute_force_limit ? Method::brute_force : Method::lectic;
  if (method == Method::brute_force && n > opts.brute_force_limit)
    throw Error(Errc::scale_exceeded, "brute-force enumeration over 2^" + std::to_string(n) + " subsets refused");

  auto close = [&](const PointSet& m) { return closure(f, SortedSet{s, m}).members; };
  std::vector<PointSet> found;
  if (method == Method::brute_force) {
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
      PointSet m = from_mask(n, mask);
      if (close(m) == m) found.push_back(std::move(m));
    }
  } else {
    found = next_closure_all(n, close);
  }
  std::sort(found.begin(), found.end(), canonical_less);

  GaloisSetLattice g;
  g.sort = s;
  for (std::size_t i = 0; i < found.size(); ++i) {
    GaloisSet gs{found[i], std::nullopt, std::nullopt};
    for (std::size_t u = 0; u < n && !gs.closed_by; ++u)
      if (f.gamma(s, u) == found[i]) gs.closed_by = u;
    for (std::size_t v = 0; v < f.size(flip(s)) && !gs.open_by; ++v)
      if (f.prime_point(flip(s), v) == found[i]) gs.open_by = v;
    g.sets.push_back(std::move(gs));
    g.index.emplace(found[i], i);
  }
  const std::size_t m = g.size();
  g.meet_table.resize(m * m);
  g.join_table.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      g.meet_table[a * m + b] = g.index.at(found[a] & found[b]);
      g.join_table[a * m + b] = g.index.at(close(found[a] | found[b]));
    }
  g.bot = 0;
  g.top = m - 1;
  return g;
}

}  // namespace srf
