#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nestkit/catalog.hpp"
#include "nestkit/group.hpp"
#include "nestkit/theorems.hpp"

namespace nestkit::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "nestkit-report/1";
/// Bumped whenever a change can alter cached verdicts.
inline constexpr const char* kSuiteVersion = "suite-3";

/// Sorted member indices plus the generators they were closed from.
struct SubgroupData {
  std::vector<Elem> members;
  std::vector<Elem> generators;
  friend bool operator==(const SubgroupData&, const SubgroupData&) = default;
};

struct SeriesData {
  std::vector<SubgroupData> terms;
  std::size_t stabilized_at = 0;
  friend bool operator==(const SeriesData&, const SeriesData&) = default;
};

struct RouteData {
  bool value = false;
  std::map<std::string, bool> routes;
  bool lattice_route_skipped = false;
  std::optional<std::vector<SubgroupData>> chain;
  std::map<std::string, bool> identities;
  friend bool operator==(const RouteData&, const RouteData&) = default;
};

struct GroupData {
  std::size_t order = 0;
  std::vector<std::size_t> class_sizes;
  std::vector<std::size_t> abelian_invariants;
  std::string source_kind;
  std::string source_description;
  std::string file_hash;
  /// SHA-1 of the multiplication table.
  std::string table_sha1;
  friend bool operator==(const GroupData&, const GroupData&) = default;
};

struct TableData {
  std::vector<unsigned> degrees;
  bool orthogonality = false;
  friend bool operator==(const TableData&, const TableData&) = default;
};

struct AnalysisReport {
  std::string input;
  GroupData group;
  /// Absent with --no-chartab.
  std::optional<TableData> table;
  std::map<std::string, SubgroupData> invariants;
  std::optional<std::vector<std::size_t>> x_set;
  std::map<std::string, bool> route_agreement;
  std::map<std::string, SeriesData> series;
  std::optional<RouteData> nested, nested_gvz;
  std::vector<TheoremVerdict> theorems;
  std::map<std::string, InvariantValue> observed;
  /// Reasons the analysis failed: route disagreements, false identities,
  /// orthogonality, theorem failures.
  std::vector<std::string> failures;
  std::map<std::string, double> timings_ms;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct AnalyzeOptions {
  bool chartab = true;
  SuiteOptions suite;
};

AnalysisReport analyze_group(const Group& g, const std::string& input, const AnalyzeOptions& options);

/// A recipe when it starts with family:, section8, or file:, otherwise a
/// group file path.
GroupPtr load_input(const std::string& input, std::size_t cap);

json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const json& j);

/// Error payload for exit code 2.
json error_json(const std::exception& e);

std::filesystem::path default_cache_dir();

struct VerifyOptions {
  std::optional<std::string> only;
  bool use_cache = true;
  std::filesystem::path cache_dir;
  std::filesystem::path base_dir;
  std::size_t cap = kMaxOrderCap;
};

struct EntryResult {
  std::string name;
  std::string recipe;
  bool cached = false;
  /// Set when the recipe could not be built.
  std::optional<std::string> input_error;
  std::vector<ExpectationMismatch> mismatches;
  std::optional<AnalysisReport> report;

  bool passed() const { return !input_error && mismatches.empty() && report && report->failures.empty(); }
};

EntryResult verify_entry(const CatalogEntry& entry, const VerifyOptions& options);

/// Runs every entry on up to `jobs` threads; results keep manifest order.
std::vector<EntryResult> verify_catalog(const std::vector<CatalogEntry>& entries, const VerifyOptions& options,
                                        unsigned jobs);

json summary_json(const std::vector<EntryResult>& results, const std::string& manifest, const VerifyOptions& options);

}  // namespace nestkit::cli
