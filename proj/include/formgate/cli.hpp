/**
 * @file cli.hpp
 * @brief Manifest ingestion, report construction and the formgate subcommands.
 *
 * Manifests and reports are JSON with sorted keys and every integer written as
 * a decimal string. A report embeds the canonical form of its manifest under
 * "input"; feeding that echo back reproduces the report byte for byte.
 *
 * Exit codes: 0 success, 2 invalid input, 3 data inconsistency. Gate verdicts
 * never change the exit code.
 */

#pragma once

#include "formgate/manifold.hpp"
#include "formgate/obstruction.hpp"
#include "formgate/rep_ring.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace formgate::cli {

using json = nlohmann::json;

inline constexpr std::int64_t kManifestSchemaVersion = 1;
inline constexpr std::string_view kReportSchemaVersion = "1";

[[nodiscard]] std::string_view tool_version() noexcept;

struct SummandEntry
{
    std::optional<std::string> catalog;      ///< exactly one of catalog / custom
    std::optional<manifold::Summand> custom;
    std::int64_t count = 1;
};

struct LocalSystemEntry
{
    std::string name;
    std::map<std::string, std::string> classes;  ///< instance label or "name#*" -> class name
    std::optional<std::int64_t> c1sq;
};

struct ManifestOptions
{
    std::optional<std::int64_t> rank_cap;
    std::optional<std::int64_t> oracle_radius;
    std::optional<obstruction::LinearInequality> strong_10_8;
};

struct Manifest
{
    std::vector<SummandEntry> summands;
    std::vector<LocalSystemEntry> local_systems;
    ManifestOptions options;
};

/// Schema check only; unknown fields are rejected. Throws InvalidManifest.
[[nodiscard]] Manifest parse_manifest(const json& j);
[[nodiscard]] json to_json(const Manifest& m);

/// Resolves catalog names and validates custom summands.
[[nodiscard]] manifold::ManifoldPresentation build_presentation(const Manifest& m);

/// Builds every local system and checks its invariants before any gate runs.
/// Throws on the first invalid system (AllTrivial, UnknownLocalClass, EulerIdentityViolation, ...).
[[nodiscard]] std::vector<obstruction::NamedChoice> build_choices(const Manifest& m,
                                                                  const manifold::ManifoldPresentation& p);

/// rank_cap: flag > FORMGATE_RANK_CAP > manifest > default.
[[nodiscard]] std::size_t resolve_rank_cap(const std::optional<std::int64_t>& flag,
                                           const std::optional<std::int64_t>& manifest_value);

[[nodiscard]] json build_report(const Manifest& m, std::size_t rank_cap);
[[nodiscard]] std::string render_report_text(const json& report);

/// Reads a Gram matrix file: a JSON array of rows or {"gram": rows}.
[[nodiscard]] lattice::IntMatrix read_gram_file(const std::string& path);

/// "c2^3,c1,c-1" -> lines; empty text -> no lines.
[[nodiscard]] std::vector<rep_ring::Line> parse_line_spec(const std::string& text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace formgate::cli
