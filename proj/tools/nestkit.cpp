// nestkit command-line front end.
//
//   nestkit analyze <input> [--no-chartab] [--out F] [--cap N]
//   nestkit verify <manifest> [--jobs N] [--only ID] [--no-cache]
//   nestkit catalog list
//   nestkit catalog export [--out F]
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "nestkit/catalog.hpp"
#include "nestkit/error.hpp"
#include "nestkit/theorems.hpp"
#include "report.hpp"

using namespace nestkit;
using namespace nestkit::cli;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

int input_error(const std::exception& e) {
  std::cout << error_json(e).dump(2) << "\n";
  std::cerr << "nestkit: " << e.what() << "\n";
  return kInputError;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::PreconditionViolated, "cannot write " + out);
  f << text;
}

int run_analyze(const std::string& input, bool no_chartab, const std::string& out, std::size_t cap,
                const std::string& only) {
  GroupPtr g;
  AnalyzeOptions opts;
  opts.chartab = !no_chartab;
  try {
    if (cap == 0 || cap > kMaxOrderCap) throw Error(ErrorKind::PreconditionViolated, "--cap must be in 1.." + std::to_string(kMaxOrderCap));
    if (!only.empty()) {
      if (!is_theorem_id(only)) throw Error(ErrorKind::PreconditionViolated, "unknown theorem id " + only);
      opts.suite.only = only;
    }
    g = load_input(input, cap);
  } catch (const Error& e) {
    return input_error(e);
  }
  AnalysisReport r = analyze_group(*g, input, opts);
  emit(to_json(r).dump(2) + "\n", out);
  for (const auto& f : r.failures) std::cerr << "FAIL " << f << "\n";
  return r.failures.empty() ? kOk : kFailed;
}

int run_verify(const std::string& manifest, unsigned jobs, const std::string& only, bool no_cache, std::size_t cap,
               const std::string& out) {
  std::vector<CatalogEntry> entries;
  VerifyOptions opts;
  try {
    if (!only.empty()) {
      if (!is_theorem_id(only)) throw Error(ErrorKind::PreconditionViolated, "unknown theorem id " + only);
      opts.only = only;
    }
    entries = load_catalog(manifest);
  } catch (const Error& e) {
    return input_error(e);
  }
  opts.use_cache = !no_cache;
  opts.cache_dir = default_cache_dir();
  opts.base_dir = std::filesystem::path(manifest).parent_path();
  opts.cap = cap;
  auto results = verify_catalog(entries, opts, jobs);
  json summary = summary_json(results, manifest, opts);
  emit(summary.dump(2) + "\n", out);

  bool bad_input = false;
  for (const auto& r : results) {
    if (r.input_error) {
      bad_input = true;
      std::cerr << r.name << ": cannot build '" << r.recipe << "': " << *r.input_error << "\n";
    }
    for (const auto& m : r.mismatches)
      std::cerr << r.name << ": " << m.invariant << " expected " << to_string(m.expected) << " (" << m.provenance
                << "), observed " << to_string(m.observed) << "\n";
    if (r.report)
      for (const auto& f : r.report->failures) std::cerr << r.name << ": " << f << "\n";
  }
  std::cerr << summary["groups"].get<std::size_t>() << " groups, " << summary["failures"].get<std::size_t>()
            << " failures\n";
  if (bad_input) return kInputError;
  return summary["failures"].get<std::size_t>() == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested groups and the K, U, delta and epsilon series"};
  app.require_subcommand(1);

  std::string input, out, only, manifest;
  bool no_chartab = false, no_cache = false;
  std::size_t cap = kDefaultOrderCap;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* analyze = app.add_subcommand("analyze", "Analyze one group");
  analyze->add_option("input", input, "Group file or recipe such as family:dihedral:4")->required();
  analyze->add_flag("--no-chartab", no_chartab, "Character-free routes only");
  analyze->add_option("--out", out, "Write the report here instead of stdout");
  analyze->add_option("--cap", cap, "Order cap")->capture_default_str();
  analyze->add_option("--only", only, "Run a single theorem check");

  std::size_t verify_cap = kMaxOrderCap;
  auto* verify = app.add_subcommand("verify", "Verify every group in a catalog manifest");
  verify->add_option("manifest", manifest, "Catalog manifest (JSON)")->required();
  verify->add_option("--jobs", jobs, "Parallel groups")->check(CLI::PositiveNumber);
  verify->add_option("--only", only, "Run a single theorem check");
  verify->add_flag("--no-cache", no_cache, "Ignore and do not write the report cache");
  verify->add_option("--cap", verify_cap, "Order cap")->capture_default_str();
  verify->add_option("--out", out, "Write the summary here instead of stdout");

  auto* catalog = app.add_subcommand("catalog", "The built-in default catalog");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "Names and recipes");
  auto* exp = catalog->add_subcommand("export", "Write the default catalog as a manifest");
  exp->add_option("--out", out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return run_analyze(input, no_chartab, out, cap, only);
    if (*verify) return run_verify(manifest, jobs, only, no_cache, verify_cap, out);
    auto entries = default_catalog();
    if (catalog->got_subcommand("list")) {
      for (const auto& e : entries) std::cout << e.name << "\t" << e.recipe << "\n";
      return kOk;
    }
    emit(catalog_to_json(entries), out);
    return kOk;
  } catch (const Error& e) {
    return input_error(e);
  }
}
