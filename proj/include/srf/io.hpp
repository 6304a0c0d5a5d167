#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "srf/morphism.hpp"
#include "srf/order.hpp"
#include "srf/relational.hpp"
#include "srf/report.hpp"

namespace srf {

/// A parsed document together with the bytes it came from.
struct Source {
  std::filesystem::path path;
  std::string text;
};

Source read_source(const std::filesystem::path& path);

/// Parses JSON text. Throws syntax_error with 1-based line and column in the
/// message and detail; the column is where the parser stopped, i.e. the last
/// character of the offending token.
nlohmann::json parse_json(const std::string& text, const std::string& origin = "<input>");

/// Document readers. Nested references (strings) are resolved relative to
/// `base`. Throw semantic_error with a JSON pointer into the document, or the
/// order errors of validate_lattice.
NLE nle_from_json(const nlohmann::json& doc, const std::filesystem::path& base = {});
FrameWithRelations frame_from_json(const nlohmann::json& doc, const std::filesystem::path& base = {});

using MorphismDocument = std::variant<LatticeHomomorphism, WeakBoundedMorphism>;
MorphismDocument morphism_from_json(const nlohmann::json& doc, const std::filesystem::path& base = {});

NLE parse_nle(const std::filesystem::path& path);
FrameWithRelations parse_frame(const std::filesystem::path& path);
MorphismDocument parse_morphism(const std::filesystem::path& path);

nlohmann::json to_json(const NLE& nle);
/// `provenance` is written verbatim when not null.
nlohmann::json to_json(const FrameWithRelations& fr, const nlohmann::json& provenance = nullptr);
nlohmann::json to_json(const LatticeHomomorphism& h);
nlohmann::json to_json(const WeakBoundedMorphism& pi);

/// Point-to-generator map of a canonical frame.
nlohmann::json provenance_of(const CanonicalFrame& cf);

std::string sha256_hex(const std::string& bytes);

nlohmann::json check_to_json(const Check& c);

/// Machine-readable report. "timestamp" and every "elapsed_ms" are volatile;
/// "report_digest" is the SHA-256 of the report with those removed.
nlohmann::json report_to_json(const std::string& command, const std::map<std::string, std::string>& input_digests,
                              const Report& report, const nlohmann::json& extra = nullptr);

/// The report with its volatile fields removed.
nlohmann::json stable_part(nlohmann::json report);

std::string report_to_text(const std::string& command, const Report& report);

}  // namespace srf
