#include "srf/io.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "srf/error.hpp"
#include "srf/version.hpp"

namespace srf {

using nlohmann::json;
namespace fs = std::filesystem;

Source read_source(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::semantic_error, "cannot open '" + path.string() + "'", json{{"path", path.string()}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return {path, ss.str()};
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::syntax_error,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON",
                json{{"file", origin}, {"line", line}, {"column", col}});
  }
}

namespace {

[[noreturn]] void semantic(const std::string& where, const std::string& message) {
  throw Error(Errc::semantic_error, where + ": " + message, json{{"path", where}});
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) semantic(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) semantic(where, "missing field '" + key + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) semantic(where, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) semantic(where, "expected an array");
  return v;
}

std::pair<std::string, std::string> as_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) semantic(where, "expected a pair");
  return {as_string(v[0], where + "/0"), as_string(v[1], where + "/1")};
}

Sort as_sort(const json& v, const std::string& where) {
  const auto s = as_string(v, where);
  if (auto t = parse_tag(s)) return *t;
  semantic(where, "sort tag must be \"1\" or \"d\", got \"" + s + "\"");
}

// A nested document is either inline or a path relative to the parent.
std::pair<json, fs::path> resolve(const json& ref, const fs::path& base, const std::string& where) {
  if (ref.is_object()) return {ref, base};
  if (!ref.is_string()) semantic(where, "expected a path or an inline document");
  const fs::path p = base / ref.get<std::string>();
  const Source s = read_source(p);
  return {parse_json(s.text, p.string()), p.parent_path()};
}

std::vector<Sort> sort_list(const json& v, const std::string& where) {
  std::vector<Sort> out;
  const auto& a = as_array(v, where);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_sort(a[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace

NLE nle_from_json(const json& doc, const fs::path&) {
  NLE nle;
  if (!doc.is_object()) semantic("", "expected an object");
  nle.name = doc.contains("name") ? as_string(doc["name"], "/name") : "";
  RawOrder raw;
  const auto& els = as_array(field(doc, "elements", ""), "/elements");
  for (std::size_t i = 0; i < els.size(); ++i) raw.elements.push_back(as_string(els[i], "/elements/" + std::to_string(i)));
  if (doc.contains("leq")) {
    const auto& pairs = as_array(doc["leq"], "/leq");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string where = "/leq/" + std::to_string(i);
      auto pr = as_pair(pairs[i], where);
      for (const auto& e : {pr.first, pr.second})
        if (std::find(raw.elements.begin(), raw.elements.end(), e) == raw.elements.end())
          semantic(where, "unknown element '" + e + "'");
      raw.leq.push_back(std::move(pr));
    }
  }
  nle.lattice = validate_lattice(raw);
  const Lattice& l = nle.lattice;

  if (!doc.contains("operators")) return nle;
  const auto& ops = as_array(doc["operators"], "/operators");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string at = "/operators/" + std::to_string(k);
    NormalOperator op;
    op.name = as_string(field(ops[k], "name", at), at + "/name");
    if (!seen.insert(op.name).second) semantic(at + "/name", "duplicate operator '" + op.name + "'");
    const json& dt = field(ops[k], "dtype", at);
    op.dtype.inputs = sort_list(field(dt, "inputs", at + "/dtype"), at + "/dtype/inputs");
    op.dtype.output = as_sort(field(dt, "output", at + "/dtype"), at + "/dtype/output");
    if (op.dtype.inputs.empty()) semantic(at + "/dtype/inputs", "an operator needs at least one argument");
    op.radix = l.size();
    const auto idx = op.indexer();
    op.table.assign(idx.count(), l.size());
    const auto& rows = as_array(field(ops[k], "table", at), at + "/table");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string rw = at + "/table/" + std::to_string(i);
      const auto& args = as_array(field(rows[i], "args", rw), rw + "/args");
      if (args.size() != op.arity()) semantic(rw + "/args", "expected " + std::to_string(op.arity()) + " arguments");
      std::vector<std::size_t> t;
      for (std::size_t j = 0; j < args.size(); ++j) {
        const auto name = as_string(args[j], rw + "/args/" + std::to_string(j));
        auto e = l.find(name);
        if (!e) semantic(rw + "/args/" + std::to_string(j), "unknown element '" + name + "'");
        t.push_back(*e);
      }
      const auto vname = as_string(field(rows[i], "value", rw), rw + "/value");
      auto v = l.find(vname);
      if (!v) semantic(rw + "/value", "unknown element '" + vname + "'");
      Elem& slot = op.at(t);
      if (slot != l.size() && slot != *v) semantic(rw, "conflicting entry for " + element_names(l, t).dump());
      slot = *v;
    }
    std::vector<std::size_t> t(op.arity(), 0);
    do {
      if (op(t) == l.size())
        throw Error(Errc::semantic_error, at + "/table: missing entry for " + element_names(l, t).dump(),
                    json{{"path", at + "/table"}, {"missing", element_names(l, t)}});
    } while (idx.next(t));
    nle.operators.push_back(std::move(op));
  }
  return nle;
}

FrameWithRelations frame_from_json(const json& doc, const fs::path&) {
  if (!doc.is_object()) semantic("", "expected an object");
  FrameWithRelations fr;
  fr.name = doc.contains("name") ? as_string(doc["name"], "/name") : "";
  std::vector<std::string> xs, ys;
  for (auto [key, out] : {std::pair{"X", &xs}, std::pair{"Y", &ys}}) {
    const auto& a = as_array(field(doc, key, ""), std::string("/") + key);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string where = std::string("/") + key + "/" + std::to_string(i);
      out->push_back(as_string(a[i], where));
      if (!seen.insert(out->back()).second) semantic(where, "duplicate point '" + out->back() + "'");
    }
  }
  auto index_in = [](const std::vector<std::string>& v, const std::string& s) -> std::optional<std::size_t> {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  };
  std::vector<PointSet> rows(xs.size(), PointSet(ys.size()));
  const auto& gal = as_array(field(doc, "gal", ""), "/gal");
  for (std::size_t i = 0; i < gal.size(); ++i) {
    const std::string where = "/gal/" + std::to_string(i);
    const auto [x, y] = as_pair(gal[i], where);
    auto xi = index_in(xs, x);
    auto yi = index_in(ys, y);
    if (!xi) semantic(where + "/0", "unknown X point '" + x + "'");
    if (!yi) semantic(where + "/1", "unknown Y point '" + y + "'");
    rows[*xi].set(*yi);
  }
  fr.frame = SortedFrame(xs, ys, std::move(rows));

  if (!doc.contains("relations")) return fr;
  const auto& rels = as_array(doc["relations"], "/relations");
  for (std::size_t k = 0; k < rels.size(); ++k) {
    const std::string at = "/relations/" + std::to_string(k);
    const auto name = as_string(field(rels[k], "name", at), at + "/name");
    const json& st = field(rels[k], "sort", at);
    SortType sort{as_sort(field(st, "output", at + "/sort"), at + "/sort/output"),
                  sort_list(field(st, "inputs", at + "/sort"), at + "/sort/inputs")};
    if (sort.inputs.empty()) semantic(at + "/sort/inputs", "a relation needs at least one input slot");
    SortedRelation r(name, sort, fr.frame);
    const auto& tuples = as_array(field(rels[k], "tuples", at), at + "/tuples");
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const std::string tw = at + "/tuples/" + std::to_string(i);
      const auto& t = as_array(tuples[i], tw);
      if (t.size() != sort.arity() + 1) semantic(tw, "expected " + std::to_string(sort.arity() + 1) + " points");
      std::vector<std::size_t> coords;
      std::size_t w = 0;
      for (std::size_t j = 0; j < t.size(); ++j) {
        const Sort s = j == 0 ? sort.output : sort.inputs[j - 1];
        const auto pname = as_string(t[j], tw + "/" + std::to_string(j));
        auto pi = index_in(s == Sort::one ? xs : ys, pname);
        if (!pi)
          semantic(tw + "/" + std::to_string(j),
                   "'" + pname + "' is not a point of sort " + std::string(tag(s)));
        if (j == 0)
          w = *pi;
        else
          coords.push_back(*pi);
      }
      r.at(coords).set(w);
    }
    fr.relations.push_back(std::move(r));
  }
  return fr;
}

namespace {

std::vector<std::size_t> point_map(const json& pairs, const SortedFrame& from, const SortedFrame& to, Sort s,
                                   const std::string& where) {
  std::vector<std::size_t> m(from.size(s), std::numeric_limits<std::size_t>::max());
  const auto& a = as_array(pairs, where);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    const auto [u, v] = as_pair(a[i], w);
    auto ui = from.find(s, u);
    auto vi = to.find(s, v);
    if (!ui) semantic(w + "/0", "unknown source point '" + u + "'");
    if (!vi) semantic(w + "/1", "unknown target point '" + v + "'");
    if (m[*ui] != std::numeric_limits<std::size_t>::max() && m[*ui] != *vi)
      semantic(w, "point '" + u + "' mapped twice");
    m[*ui] = *vi;
  }
  for (std::size_t u = 0; u < m.size(); ++u)
    if (m[u] == std::numeric_limits<std::size_t>::max())
      semantic(where, "no image for point '" + from.name(s, u) + "'");
  return m;
}

const json& either(const json& doc, const char* a, const char* b) {
  if (doc.contains(a)) return doc[a];
  return field(doc, b, "");
}

}  // namespace

MorphismDocument morphism_from_json(const json& doc, const fs::path& base) {
  const auto kind = as_string(field(doc, "kind", ""), "/kind");
  if (kind == "lattice-hom") {
    auto [sdoc, sbase] = resolve(field(doc, "source", ""), base, "/source");
    auto [tdoc, tbase] = resolve(field(doc, "target", ""), base, "/target");
    LatticeHomomorphism h{nle_from_json(sdoc, sbase), nle_from_json(tdoc, tbase), {}};
    const Lattice& s = h.source.lattice;
    const Lattice& t = h.target.lattice;
    h.map.assign(s.size(), t.size());
    const auto& pairs = as_array(field(doc, "map", ""), "/map");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string w = "/map/" + std::to_string(i);
      const auto [a, b] = as_pair(pairs[i], w);
      auto ai = s.find(a);
      auto bi = t.find(b);
      if (!ai) semantic(w + "/0", "unknown source element '" + a + "'");
      if (!bi) semantic(w + "/1", "unknown target element '" + b + "'");
      if (h.map[*ai] != t.size() && h.map[*ai] != *bi) semantic(w, "element '" + a + "' mapped twice");
      h.map[*ai] = *bi;
    }
    for (Elem a = 0; a < s.size(); ++a)
      if (h.map[a] == t.size()) semantic("/map", "no image for element '" + s.names[a] + "'");
    return h;
  }
  if (kind == "frame-morphism") {
    const std::string sk = doc.contains("source_frame") ? "/source_frame" : "/source";
    const std::string tk = doc.contains("target_frame") ? "/target_frame" : "/target";
    auto [sdoc, sbase] = resolve(either(doc, "source_frame", "source"), base, sk);
    auto [tdoc, tbase] = resolve(either(doc, "target_frame", "target"), base, tk);
    WeakBoundedMorphism pi{frame_from_json(sdoc, sbase), frame_from_json(tdoc, tbase), {}, {}};
    pi.p = point_map(field(doc, "p", ""), pi.source.frame, pi.target.frame, Sort::one, "/p");
    pi.q = point_map(field(doc, "q", ""), pi.source.frame, pi.target.frame, Sort::dual, "/q");
    return pi;
  }
  semantic("/kind", "kind must be \"lattice-hom\" or \"frame-morphism\"");
}

namespace {

template <class T, class F>
T parse_file(const fs::path& path, F&& from) {
  const Source s = read_source(path);
  const json doc = parse_json(s.text, path.string());
  try {
    return from(doc, path.parent_path());
  } catch (const Error& e) {
    if (e.code() != Errc::semantic_error) throw;
    std::string message = e.what();
    const std::string prefix = std::string(to_string(Errc::semantic_error)) + ": ";
    if (message.starts_with(prefix)) message.erase(0, prefix.size());
    json detail = e.detail();
    if (!detail.contains("file")) detail["file"] = path.string();
    throw Error(Errc::semantic_error, path.string() + ":" + message, detail);
  }
}

}  // namespace

NLE parse_nle(const fs::path& path) {
  return parse_file<NLE>(path, [](const json& d, const fs::path& b) { return nle_from_json(d, b); });
}
FrameWithRelations parse_frame(const fs::path& path) {
  return parse_file<FrameWithRelations>(path, [](const json& d, const fs::path& b) { return frame_from_json(d, b); });
}
MorphismDocument parse_morphism(const fs::path& path) {
  return parse_file<MorphismDocument>(path, [](const json& d, const fs::path& b) { return morphism_from_json(d, b); });
}

json to_json(const NLE& nle) {
  const Lattice& l = nle.lattice;
  json doc;
  doc["name"] = nle.name;
  doc["elements"] = l.names;
  json leq = json::array();
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b) {
      if (a == b || !l.leq(a, b)) continue;
      bool cover = true;
      for (Elem c = 0; c < l.size() && cover; ++c)
        cover = c == a || c == b || !(l.leq(a, c) && l.leq(c, b));
      if (cover) leq.push_back({l.names[a], l.names[b]});
    }
  doc["leq"] = leq;
  json ops = json::array();
  for (const auto& f : nle.operators) {
    json dt{{"inputs", json::array()}, {"output", tag(f.dtype.output)}};
    for (Sort s : f.dtype.inputs) dt["inputs"].push_back(tag(s));
    json table = json::array();
    const auto idx = f.indexer();
    std::vector<std::size_t> t(f.arity(), 0);
    do {
      table.push_back({{"args", element_names(l, t)}, {"value", l.names[f(t)]}});
    } while (idx.next(t));
    ops.push_back({{"name", f.name}, {"dtype", dt}, {"table", table}});
  }
  doc["operators"] = ops;
  return doc;
}

json to_json(const FrameWithRelations& fr, const json& provenance) {
  const SortedFrame& f = fr.frame;
  json doc;
  doc["name"] = fr.name;
  doc["X"] = f.names(Sort::one);
  doc["Y"] = f.names(Sort::dual);
  json gal = json::array();
  for (std::size_t x = 0; x < f.size(Sort::one); ++x)
    for (std::size_t y = 0; y < f.size(Sort::dual); ++y)
      if (f.gal(x, y)) gal.push_back({f.name(Sort::one, x), f.name(Sort::dual, y)});
  doc["gal"] = gal;
  json rels = json::array();
  for (const auto& r : fr.relations) {
    json sort{{"output", tag(r.sort.output)}, {"inputs", json::array()}};
    for (Sort s : r.sort.inputs) sort["inputs"].push_back(tag(s));
    json tuples = json::array();
    std::vector<std::size_t> u(r.arity(), 0);
    do {
      for_each_member(r.at(u), [&](std::size_t w) {
        json t = json::array({f.name(r.sort.output, w)});
        for (auto& n : point_names(f, r.sort.inputs, u)) t.push_back(n);
        tuples.push_back(std::move(t));
      });
    } while (r.index.next(u));
    rels.push_back({{"name", r.name}, {"sort", sort}, {"tuples", tuples}});
  }
  doc["relations"] = rels;
  if (!provenance.is_null()) doc["provenance"] = provenance;
  return doc;
}

json to_json(const LatticeHomomorphism& h) {
  json map = json::array();
  for (Elem a = 0; a < h.map.size(); ++a) map.push_back({h.source.lattice.names[a], h.target.lattice.names[h.map[a]]});
  return {{"kind", "lattice-hom"}, {"source", to_json(h.source)}, {"target", to_json(h.target)}, {"map", map}};
}

json to_json(const WeakBoundedMorphism& pi) {
  json p = json::array(), q = json::array();
  for (std::size_t x = 0; x < pi.p.size(); ++x)
    p.push_back({pi.source.frame.name(Sort::one, x), pi.target.frame.name(Sort::one, pi.p[x])});
  for (std::size_t y = 0; y < pi.q.size(); ++y)
    q.push_back({pi.source.frame.name(Sort::dual, y), pi.target.frame.name(Sort::dual, pi.q[y])});
  return {{"kind", "frame-morphism"},
          {"source_frame", to_json(pi.source)},
          {"target_frame", to_json(pi.target)},
          {"p", p},
          {"q", q}};
}

json provenance_of(const CanonicalFrame& cf) {
  const Lattice& l = cf.nle.lattice;
  json x = json::object(), y = json::object();
  for (std::size_t i = 0; i < cf.filters.size(); ++i)
    x[cf.frame.frame.name(Sort::one, i)] = l.names[cf.filters[i].generator];
  for (std::size_t i = 0; i < cf.ideals.size(); ++i)
    y[cf.frame.frame.name(Sort::dual, i)] = l.names[cf.ideals[i].generator];
  return {{"source", cf.nle.name}, {"principal_filter_of", x}, {"principal_ideal_of", y}};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

json check_to_json(const Check& c) {
  json j{{"id", c.id}, {"status", to_string(c.status)}, {"elapsed_ms", c.elapsed_ms}};
  if (!c.witness.is_null()) j["witness"] = c.witness;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json stable_part(json report) {
  report.erase("timestamp");
  report.erase("report_digest");
  if (report.contains("checks"))
    for (auto& c : report["checks"]) c.erase("elapsed_ms");
  return report;
}

json report_to_json(const std::string& command, const std::map<std::string, std::string>& input_digests,
                    const Report& report, const json& extra) {
  json j;
  j["tool"] = {{"name", "srfkit"}, {"version", std::string(version)}};
  j["command"] = command;
  json inputs = json::array();
  for (const auto& [path, digest] : input_digests) inputs.push_back({{"path", path}, {"sha256", digest}});
  j["inputs"] = inputs;
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_to_json(c));
  j["checks"] = checks;
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& c : report.checks) {
    if (c.status == Status::pass) ++passed;
    if (c.status == Status::fail) ++failed;
    if (c.status == Status::skipped) ++skipped;
  }
  j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}, {"ok", failed == 0}};
  if (extra.is_object())
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  j["timestamp"] = ts.str();
  j["report_digest"] = sha256_hex(stable_part(j).dump());
  return j;
}

std::string report_to_text(const std::string& command, const Report& report) {
  std::ostringstream out;
  out << command << "\n";
  for (const auto& c : report.checks) {
    const char* label = c.status == Status::pass ? "PASS" : c.status == Status::fail ? "FAIL" : "SKIP";
    out << "  " << label << "  " << c.id;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
    if (!c.witness.is_null() && c.status == Status::fail) out << "        witness: " << c.witness.dump() << "\n";
  }
  out << (report.all_passed() ? "all checks passed" : std::to_string(report.failures()) + " check(s) failed") << "\n";
  return out.str();
}

}  // namespace srf
