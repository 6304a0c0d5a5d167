#include "srf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "srf/canonical.hpp"
#include "srf/error.hpp"
#include "srf/io.hpp"
#include "srf/morphism.hpp"
#include "srf/version.hpp"

namespace srf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string format = "text";
  bool exhaustive = false;
  std::size_t max_points = 8;
  std::string input;
  std::string output;
  bool star = false;
};

class Session {
 public:
  Session(const Options& o, std::ostream& out) : opts_(o), out_(out) {}

  json load(const std::string& path) {
    const Source s = read_source(path);
    digests_[path] = sha256_hex(s.text);
    return parse_json(s.text, path);
  }

  int emit(const std::string& command, const Report& report, const json& extra = nullptr) {
    if (opts_.format == "json")
      out_ << report_to_json(command, digests_, report, extra).dump(2) << "\n";
    else
      out_ << report_to_text(command + " " + opts_.input, report);
    return report.all_passed() ? 0 : 1;
  }

  void write(const json& doc) const {
    if (opts_.output.empty()) return;
    std::ofstream f(opts_.output, std::ios::binary);
    if (!f) throw Error(Errc::semantic_error, "cannot write '" + opts_.output + "'");
    f << doc.dump(2) << "\n";
  }

  fs::path base() const { return fs::path(opts_.input).parent_path(); }

  DistributionOptions distribution() const {
    DistributionOptions d;
    d.exhaustive = opts_.exhaustive;
    return d;
  }

  const Options& opts() const { return opts_; }

 private:
  Options opts_;
  std::ostream& out_;
  std::map<std::string, std::string> digests_;
};

void add_distribution(Report& rep, const FrameWithRelations& fr, const DistributionOptions& d) {
  if (fr.relations.empty()) return;
  const StableLattices st = stable_lattices(fr.frame);
  for (const auto& r : fr.relations)
    for (std::size_t k = 1; k <= r.arity(); ++k)
      rep.add(timed([&] { return check_distribution(fr, r, k, st, d); }));
}

Check normality_check(const NLE& nle, const NormalOperator& f) {
  const auto rep = validate_normal_operator(nle.lattice, f);
  const std::string id = "normality:" + f.name;
  if (rep.normal()) return pass_check(id);
  const auto& v = rep.violations.front();
  const Lattice& l = nle.lattice;
  json w{{"place", v.place + 1},
         {"args", element_names(l, v.args)},
         {"expected", l.names[v.expected]},
         {"actual", l.names[v.actual]},
         {"violations", rep.violations.size()}};
  if (v.left)
    w["joined"] = {l.names[*v.left], l.names[*v.right]};
  else
    w["joined"] = "empty join";
  return fail_check(id, w);
}

Check hom_check(const LatticeHomomorphism& h) {
  const auto v = validate_homomorphism(h);
  if (v.empty()) return pass_check("hom");
  return fail_check("hom", json{{"equation", v.front().equation}, {"witness", v.front().witness}, {"violations", v.size()}});
}

bool is_order_error(Errc c) {
  return c == Errc::not_a_partial_order || c == Errc::not_a_lattice || c == Errc::no_bounds;
}

int cmd_validate(Session& s) {
  const json doc = s.load(s.opts().input);
  Report rep;
  NLE nle;
  try {
    nle = nle_from_json(doc, s.base());
  } catch (const Error& e) {
    if (!is_order_error(e.code())) throw;
    rep.add(fail_check("lattice", json{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}}, e.what()));
    return s.emit("validate", rep);
  }
  rep.add(pass_check("lattice", std::to_string(nle.lattice.size()) + " elements"));
  for (const auto& f : nle.operators) rep.add(timed([&] { return normality_check(nle, f); }));
  return s.emit("validate", rep, json{{"type", [&] {
                                         json t = json::array();
                                         for (const auto& d : nle.similarity_type()) t.push_back(d.to_string());
                                         return t;
                                       }()}});
}

int cmd_dualize(Session& s) {
  const NLE nle = nle_from_json(s.load(s.opts().input), s.base());
  const CanonicalFrame cf = canonical_frame(nle);
  Report rep = cf.axioms;
  add_distribution(rep, cf.frame, s.distribution());
  s.write(to_json(cf.frame, provenance_of(cf)));
  return s.emit("dualize", rep,
                json{{"frame", {{"X", cf.frame.frame.size(Sort::one)},
                                {"Y", cf.frame.frame.size(Sort::dual)},
                                {"relations", cf.frame.relations.size()}}}});
}

int cmd_axioms(Session& s) {
  const FrameWithRelations fr = frame_from_json(s.load(s.opts().input), s.base());
  Report rep = check_axioms(fr, s.opts().star ? AxiomLevel::star : AxiomLevel::base);
  add_distribution(rep, fr, s.distribution());
  return s.emit("axioms", rep);
}

int cmd_complex(Session& s) {
  const FrameWithRelations fr = frame_from_json(s.load(s.opts().input), s.base());
  Report rep = check_axioms(fr, AxiomLevel::base);
  if (!rep.all_passed()) return s.emit("complex", rep);
  const SetAlgebra alg = complex_algebra(fr);
  rep.append(alg.checks);
  s.write(to_json(alg.nle));
  return s.emit("complex", rep, json{{"elements", alg.nle.lattice.size()}});
}

int cmd_roundtrip_lattice(Session& s) {
  const NLE nle = nle_from_json(s.load(s.opts().input), s.base());
  const LatticeRoundTrip rt = roundtrip_lattice(nle);
  const Check* iso = rt.checks.find("iso");
  return s.emit("roundtrip-lattice", rt.checks, json{{"iso", iso && iso->status == Status::pass}});
}

int cmd_roundtrip_frame(Session& s) {
  const FrameWithRelations fr = frame_from_json(s.load(s.opts().input), s.base());
  const Report axioms = check_axioms(fr, AxiomLevel::star);
  if (!axioms.all_passed()) {
    Report rep = axioms;
    rep.add(skipped_check("frame-iso", "frame does not satisfy the star axioms"));
    return s.emit("roundtrip-frame", rep, json{{"iso", false}});
  }
  const FrameRoundTrip rt = roundtrip_frame(fr, {}, s.opts().max_points);
  Report rep = axioms;
  rep.append(rt.checks);
  return s.emit("roundtrip-frame", rep, json{{"iso", rt.iso.has_value()}});
}

Report induced_checks(const WeakBoundedMorphism& pi) {
  if (!check_weak_bounded(pi).all_passed()) {
    Report r;
    for (const char* id : {"hom-stable-image", "hom-meets", "hom-joins"})
      r.add(skipped_check(id, "not a weak bounded morphism"));
    return r;
  }
  return induced_hom(pi).checks;
}

int cmd_dual_morphism(Session& s) {
  const auto m = morphism_from_json(s.load(s.opts().input), s.base());
  const auto* h = std::get_if<LatticeHomomorphism>(&m);
  if (!h) throw Error(Errc::semantic_error, "/kind: dual-morphism expects a lattice-hom document");
  Report rep;
  rep.add(hom_check(*h));
  if (!rep.all_passed()) return s.emit("dual-morphism", rep);
  const DualMorphism d = dual_of_homomorphism(*h);
  rep.append(d.checks);
  rep.append(induced_checks(d.pi));
  s.write(to_json(d.pi));
  return s.emit("dual-morphism", rep);
}

int cmd_check_morphism(Session& s) {
  const auto m = morphism_from_json(s.load(s.opts().input), s.base());
  Report rep;
  if (const auto* h = std::get_if<LatticeHomomorphism>(&m)) {
    rep.add(hom_check(*h));
    return s.emit("check-morphism", rep);
  }
  const auto& pi = std::get<WeakBoundedMorphism>(m);
  rep = check_morphism(pi);
  rep.append(induced_checks(pi));
  const std::size_t biggest = std::max(pi.target.frame.size(Sort::one), pi.target.frame.size(Sort::dual));
  if (biggest <= 16) {
    const ChainResult dc = diamond_chain(pi);
    const ChainResult bc = box_chain(pi);
    auto chain = [](const char* id, const ChainResult& c) {
      json w{{"monotone_sets", c.all_monotone_sets}, {"closed_sets", c.all_closed}, {"back_condition", c.back_condition}};
      Check k = c.agree() ? pass_check(id) : fail_check(id, w);
      if (c.agree()) k.note = c.back_condition ? "all three hold" : "all three fail";
      return k;
    };
    rep.add(chain("diamond-chain", dc));
    rep.add(chain("box-chain", bc));
  }
  return s.emit("check-morphism", rep);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dual frames of finite normal lattice expansions, with mechanical checks", "srfkit"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--exhaustive", o.exhaustive, "Forbid sampled distribution checks");
  app.add_option("--max-points", o.max_points, "Per-sort cap for frame isomorphism search");

  struct Entry {
    const char* name;
    const char* help;
    const char* input;
    bool output;
    int (*run)(Session&);
  };
  const Entry entries[] = {
      {"validate", "Check that a document is a lattice with normal operators", "nle", false, cmd_validate},
      {"dualize", "Build the canonical frame and check the star axioms", "nle", true, cmd_dualize},
      {"axioms", "Check frame axioms", "frame", false, cmd_axioms},
      {"complex", "Build the complex algebra of stable sets", "frame", true, cmd_complex},
      {"roundtrip-lattice", "Lattice against the clopens of its canonical frame", "nle", false, cmd_roundtrip_lattice},
      {"roundtrip-frame", "Frame against the canonical frame of its clopens", "frame", false, cmd_roundtrip_frame},
      {"dual-morphism", "Dual frame morphism of a lattice homomorphism", "hom", true, cmd_dual_morphism},
      {"check-morphism", "Check a frame morphism or lattice homomorphism", "morphism", false, cmd_check_morphism},
  };
  std::map<CLI::App*, const Entry*> by_app;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option(e.input, o.input, "Input document")->required();
    if (e.output) sub->add_option("-o,--output", o.output, "Write the constructed document here");
    if (std::string(e.name) == "axioms") sub->add_flag("--star", o.star, "Check the strengthened axiom set");
    by_app[sub] = &e;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Entry* chosen = nullptr;
  for (auto* sub : app.get_subcommands()) chosen = by_app.at(sub);
  Session session(o, out);
  try {
    return chosen->run(session);
  } catch (const Error& e) {
    err << "srfkit " << chosen->name << ": " << e.what() << "\n";
    if (!e.detail().is_null() && !e.detail().empty()) err << "  detail: " << e.detail().dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "srfkit " << chosen->name << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace srf
