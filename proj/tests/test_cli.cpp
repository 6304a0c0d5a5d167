#include <doctest.h>

#include <sstream>

#include "srf/cli.hpp"
#include "support.hpp"

using namespace srf;
using namespace srf::test;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixture(name).string(); }

fs::path scratch() {
  static const fs::path dir = [] {
    std::random_device rd;
    fs::path d = fs::temp_directory_path() / ("srfkit-test-" + std::to_string(rd()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::vector<std::string> failed(const json& report) {
  std::vector<std::string> ids;
  for (const auto& c : report["checks"])
    if (c["status"] == "fail") ids.push_back(c["id"]);
  return ids;
}

}  // namespace

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"frobnicate", fx("c2")}).code == 2);
  CHECK(run({"validate", fx("c2"), "--format", "yaml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const Run missing = run({"validate", fx("no_such_file")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("no_such_file") != std::string::npos);
}

TEST_CASE("validate") {
  CHECK(run({"validate", fx("g3")}).code == 0);
  const Run neg = run({"validate", fx("c2_negation"), "--format", "json"});
  CHECK(neg.code == 1);
  CHECK(failed(neg.report()) == std::vector<std::string>{"normality:neg"});
  const Run nal = run({"validate", fx("not_a_lattice"), "--format", "json"});
  CHECK(nal.code == 1);
  CHECK(failed(nal.report()) == std::vector<std::string>{"lattice"});
}

TEST_CASE("global options go before or after the subcommand") {
  const Run a = run({"--format", "json", "validate", fx("g3")});
  const Run b = run({"validate", fx("g3"), "--format", "json"});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(stable_part(a.report()) == stable_part(b.report()));
}

TEST_CASE("dualize, axioms, complex and the frame round trip") {
  const std::string frame = (scratch() / "g3.frame.json").string();
  const Run d = run({"dualize", fx("g3"), "-o", frame, "--exhaustive", "--format", "json"});
  CHECK(d.code == 0);
  CHECK(d.report()["frame"]["X"] == 3);
  CHECK(d.report()["frame"]["relations"] == 2);
  const FrameWithRelations fr = parse_frame(frame);
  CHECK(fr.frame.size(Sort::dual) == 3);
  CHECK(fr == canonical_of("g3").frame);

  CHECK(run({"axioms", frame, "--star"}).code == 0);
  CHECK(run({"complex", frame}).code == 0);
  const Run rt = run({"roundtrip-frame", frame, "--format", "json"});
  CHECK(rt.code == 0);
  CHECK(rt.report()["iso"] == true);
}

TEST_CASE("broken frame") {
  const Run a = run({"axioms", fx("broken_fax2")});
  CHECK(a.code == 1);
  CHECK(a.out.find("FAIL  FAx2") != std::string::npos);
  CHECK(a.out.find("witness") != std::string::npos);
  const Run j = run({"axioms", fx("broken_fax2"), "--format", "json"});
  CHECK(failed(j.report()) == std::vector<std::string>{"FAx2"});
  const Run rt = run({"roundtrip-frame", fx("broken_fax2"), "--format", "json"});
  CHECK(rt.code == 1);
  CHECK(rt.report()["iso"] == false);
  CHECK(run({"complex", fx("broken_fax2")}).code == 1);
}

TEST_CASE("roundtrip-lattice") {
  for (const auto& name : lattice_fixtures()) {
    const Run r = run({"roundtrip-lattice", fx(name), "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.report()["iso"] == true);
  }
}

TEST_CASE("morphisms") {
  const std::string pi = (scratch() / "pi.json").string();
  CHECK(run({"dual-morphism", fx("hom_c3_c2"), "-o", pi}).code == 0);
  const Run c = run({"check-morphism", pi, "--format", "json"});
  CHECK(c.code == 0);
  CHECK(failed(c.report()).empty());

  const Run bad = run({"check-morphism", fx("broken_max2"), "--format", "json"});
  CHECK(bad.code == 1);
  CHECK(failed(bad.report()) == std::vector<std::string>{"MAx2"});

  CHECK(run({"check-morphism", fx("hom_m3_c2_bad")}).code == 1);
  CHECK(run({"check-morphism", fx("hom_g3_id")}).code == 0);
  CHECK(run({"dual-morphism", fx("hom_m3_c2_bad")}).code == 1);
  // dual-morphism wants a lattice homomorphism
  CHECK(run({"dual-morphism", fx("broken_max2")}).code == 2);
}

TEST_CASE("identical inputs give identical reports") {
  const Run a = run({"dualize", fx("g3"), "--format", "json"});
  const Run b = run({"dualize", fx("g3"), "--format", "json"});
  CHECK(stable_part(a.report()) == stable_part(b.report()));
  CHECK(stable_part(a.report()).dump() == stable_part(b.report()).dump());
  CHECK(a.report()["report_digest"] == b.report()["report_digest"]);
  CHECK(a.report()["inputs"][0]["sha256"] == sha256_hex(read_source(fixture("g3")).text));
}
