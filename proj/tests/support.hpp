#pragma once

// Shared helpers for the test binaries: fixture loading, seeded generators,
// and naive reference implementations that avoid the library's bitset code.

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "srf/canonical.hpp"
#include "srf/io.hpp"
#include "srf/morphism.hpp"
#include "srf/polarity.hpp"
#include "srf/relational.hpp"

namespace srf::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SRF_FIXTURES) / (name + ".json");
}

inline NLE load_nle(const std::string& name) { return parse_nle(fixture(name)); }

inline const std::vector<std::string>& lattice_fixtures() {
  static const std::vector<std::string> names{"c2", "c3", "m3", "n5", "g3"};
  return names;
}

using Bits = std::vector<bool>;

inline Bits to_bits(const PointSet& s) {
  Bits b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b[i] = s[i];
  return b;
}

inline PointSet from_bits(const Bits& b) {
  PointSet s(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) s.set(i);
  return s;
}

inline Bits mask_bits(std::size_t n, unsigned long long mask) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (mask >> i) & 1u;
  return b;
}

inline bool subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline Bits bits_not(Bits a) {
  a.flip();
  return a;
}

// Naive polarity operations, straight from the quantifier definitions.
namespace naive {

inline std::size_t nx(const SortedFrame& f) { return f.size(Sort::one); }
inline std::size_t ny(const SortedFrame& f) { return f.size(Sort::dual); }

// U⊥ = {y : every x in U has x ⊥ y}
inline Bits perp_x(const SortedFrame& f, const Bits& u) {
  Bits out(ny(f), true);
  for (std::size_t y = 0; y < ny(f); ++y)
    for (std::size_t x = 0; x < nx(f); ++x)
      if (u[x] && !f.gal(x, y)) out[y] = false;
  return out;
}

// ⊥V = {x : x ⊥ y for every y in V}
inline Bits perp_y(const SortedFrame& f, const Bits& v) {
  Bits out(nx(f), true);
  for (std::size_t x = 0; x < nx(f); ++x)
    for (std::size_t y = 0; y < ny(f); ++y)
      if (v[y] && !f.gal(x, y)) out[x] = false;
  return out;
}

inline Bits prime(const SortedFrame& f, Sort s, const Bits& w) {
  return s == Sort::one ? perp_x(f, w) : perp_y(f, w);
}

inline Bits close(const SortedFrame& f, Sort s, const Bits& w) { return prime(f, flip(s), prime(f, s, w)); }

// ◇U = {y : ∃x ∈ U, x I y}
inline Bits diamond(const SortedFrame& f, const Bits& u) {
  Bits out(ny(f), false);
  for (std::size_t y = 0; y < ny(f); ++y)
    for (std::size_t x = 0; x < nx(f); ++x)
      if (u[x] && f.rel(x, y)) out[y] = true;
  return out;
}

// □V = {x : ∀y, x I y → y ∈ V}
inline Bits box(const SortedFrame& f, const Bits& v) {
  Bits out(nx(f), true);
  for (std::size_t x = 0; x < nx(f); ++x)
    for (std::size_t y = 0; y < ny(f); ++y)
      if (f.rel(x, y) && !v[y]) out[x] = false;
  return out;
}

// ◆V = {x : ∃y ∈ V, x I y}
inline Bits black_diamond(const SortedFrame& f, const Bits& v) {
  Bits out(nx(f), false);
  for (std::size_t x = 0; x < nx(f); ++x)
    for (std::size_t y = 0; y < ny(f); ++y)
      if (v[y] && f.rel(x, y)) out[x] = true;
  return out;
}

// ■U = {y : ∀x, x I y → x ∈ U}
inline Bits black_box(const SortedFrame& f, const Bits& u) {
  Bits out(ny(f), true);
  for (std::size_t y = 0; y < ny(f); ++y)
    for (std::size_t x = 0; x < nx(f); ++x)
      if (f.rel(x, y) && !u[x]) out[y] = false;
  return out;
}

// u ≼ w iff {u}′ ⊆ {w}′
inline bool below(const SortedFrame& f, Sort s, std::size_t u, std::size_t w) {
  const std::size_t other = s == Sort::one ? ny(f) : nx(f);
  for (std::size_t v = 0; v < other; ++v) {
    const bool gu = s == Sort::one ? f.gal(u, v) : f.gal(v, u);
    const bool gw = s == Sort::one ? f.gal(w, v) : f.gal(v, w);
    if (gu && !gw) return false;
  }
  return true;
}

inline Bits gamma(const SortedFrame& f, Sort s, std::size_t u) {
  Bits out(f.size(s));
  for (std::size_t w = 0; w < f.size(s); ++w) out[w] = below(f, s, u, w);
  return out;
}

inline bool increasing(const SortedFrame& f, Sort s, const Bits& w) {
  for (std::size_t u = 0; u < f.size(s); ++u)
    for (std::size_t v = 0; v < f.size(s); ++v)
      if (w[u] && below(f, s, u, v) && !w[v]) return false;
  return true;
}

// All Galois sets of one sort by scanning every subset.
inline std::vector<Bits> galois_sets(const SortedFrame& f, Sort s) {
  const std::size_t n = f.size(s);
  std::vector<Bits> out;
  for (unsigned long long m = 0; m < (1ull << n); ++m) {
    const Bits w = mask_bits(n, m);
    if (close(f, s, w) == w) out.push_back(w);
  }
  return out;
}

}  // namespace naive

inline SortedSet sset(Sort s, const Bits& b) { return {s, from_bits(b)}; }

// Random polarity with the given carrier sizes; density is the chance of x ⊥ y.
inline SortedFrame random_frame(std::mt19937& rng, std::size_t nx, std::size_t ny, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::vector<std::string> xs, ys;
  for (std::size_t i = 0; i < nx; ++i) xs.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < ny; ++i) ys.push_back("y" + std::to_string(i));
  std::vector<PointSet> rows(nx, PointSet(ny));
  for (auto& r : rows)
    for (std::size_t y = 0; y < ny; ++y)
      if (coin(rng)) r.set(y);
  return SortedFrame(xs, ys, rows);
}

// Random relation of the given sort type; each tuple is present with probability density.
inline SortedRelation random_relation(std::mt19937& rng, const SortedFrame& f, const std::string& name,
                                      SortType sort, double density = 0.3) {
  std::bernoulli_distribution coin(density);
  SortedRelation r(name, std::move(sort), f);
  const std::size_t out = f.size(r.sort.output);
  for (auto& s : r.sections)
    for (std::size_t w = 0; w < out; ++w)
      if (coin(rng)) s.set(w);
  return r;
}

inline std::vector<std::size_t> random_map(std::mt19937& rng, std::size_t from, std::size_t to) {
  std::uniform_int_distribution<std::size_t> d(0, to - 1);
  std::vector<std::size_t> m(from);
  for (auto& v : m) v = d(rng);
  return m;
}

inline FrameWithRelations bare(const SortedFrame& f, const std::string& name = "F") {
  return FrameWithRelations{name, f, {}};
}

inline CanonicalFrame canonical_of(const std::string& fixture_name) { return canonical_frame(load_nle(fixture_name)); }

inline Principal filter_of(const Lattice& l, const std::string& a) { return principal_filter(l, l.at(a)); }
inline Principal ideal_of(const Lattice& l, const std::string& a) { return principal_ideal(l, l.at(a)); }

// Index of the point of a canonical frame named e.g. "↑e".
inline std::size_t point(const SortedFrame& f, Sort s, const std::string& name) {
  const auto i = f.find(s, name);
  if (!i) throw std::runtime_error("no point " + name);
  return *i;
}

}  // namespace srf::test
