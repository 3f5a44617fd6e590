#include "report.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "nestkit/chartab.hpp"
#include "nestkit/constructions.hpp"
#include "nestkit/error.hpp"
#include "nestkit/invariants.hpp"
#include "nestkit/isomorphism.hpp"
#include "nestkit/series.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

SubgroupData data(const Subgroup& s) {
  return {{s.members().begin(), s.members().end()}, {s.generators().begin(), s.generators().end()}};
}

SeriesData data(const SeriesReport& s) {
  SeriesData d;
  for (const auto& t : s.terms) d.terms.push_back(data(t));
  d.stabilized_at = s.stabilized_at;
  return d;
}

RouteData data(const RouteVerdict& v) {
  RouteData d{v.value, v.routes, v.lattice_route_skipped, std::nullopt, v.identities};
  if (v.chain) {
    d.chain.emplace();
    for (const auto& t : v.chain->terms) d.chain->push_back(data(t));
  }
  return d;
}

GroupData fingerprint(const Group& g) {
  GroupData d;
  d.order = g.order();
  for (const auto& c : g.classes().classes) d.class_sizes.push_back(c.size());
  d.abelian_invariants = abelian_invariants(g);
  d.source_kind = g.source().kind;
  d.source_description = g.source().description;
  d.file_hash = g.source().file_hash;
  auto tab = g.table();
  std::string bytes;
  bytes.reserve(tab.size() * 2);
  for (Elem x : tab) {
    bytes.push_back(static_cast<char>(x & 0xff));
    bytes.push_back(static_cast<char>(x >> 8));
  }
  d.table_sha1 = sha1_hex(bytes);
  return d;
}

bool is_error(const Error& e) { return e.kind() == ErrorKind::RouteDisagreement || e.kind() == ErrorKind::Internal; }

json value_json(const InvariantValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::uint64_t>(v);
}

InvariantValue value_from(const json& j) {
  if (j.is_boolean()) return j.get<bool>();
  return j.get<std::uint64_t>();
}

json sub_json(const SubgroupData& s) { return json{{"order", s.members.size()}, {"members", s.members}, {"generators", s.generators}}; }
SubgroupData sub_from(const json& j) { return {j.at("members").get<std::vector<Elem>>(), j.at("generators").get<std::vector<Elem>>()}; }

json subs_json(const std::vector<SubgroupData>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(sub_json(s));
  return a;
}
std::vector<SubgroupData> subs_from(const json& j) {
  std::vector<SubgroupData> out;
  for (const auto& x : j) out.push_back(sub_from(x));
  return out;
}

json route_json(const RouteData& r) {
  json j{{"value", r.value}, {"routes", r.routes}, {"lattice_route_skipped", r.lattice_route_skipped}};
  j["chain"] = r.chain ? subs_json(*r.chain) : json(nullptr);
  j["identities"] = r.identities;
  return j;
}
RouteData route_from(const json& j) {
  RouteData r;
  r.value = j.at("value");
  r.routes = j.at("routes").get<std::map<std::string, bool>>();
  r.lattice_route_skipped = j.at("lattice_route_skipped");
  if (!j.at("chain").is_null()) r.chain = subs_from(j.at("chain"));
  r.identities = j.at("identities").get<std::map<std::string, bool>>();
  return r;
}

std::string file_key(const GroupData& g, const AnalyzeOptions& o) {
  json k{{"group", {{"order", g.order},
                    {"class_sizes", g.class_sizes},
                    {"abelian_invariants", g.abelian_invariants},
                    {"source", g.source_description},
                    {"file_hash", g.file_hash},
                    {"table_sha1", g.table_sha1}}},
         {"suite", kSuiteVersion},
         {"chartab", o.chartab},
         {"only", o.suite.only ? *o.suite.only : ""}};
  return sha1_hex(k.dump());
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ostringstream tmpname;
  tmpname << path.filename().string() << ".tmp." << ::getpid() << "." << std::this_thread::get_id();
  auto tmp = path.parent_path() / tmpname.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<AnalysisReport> read_cached(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    return report_from_json(json::parse(in));
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

}  // namespace

AnalysisReport analyze_group(const Group& g, const std::string& input, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.input = input;
  r.group = fingerprint(g);
  auto t0 = Clock::now();
  std::optional<CharacterTable> table;
  if (options.chartab) {
    table.emplace(character_table(g));
    r.timings_ms["chartab"] = ms_since(t0);
    TableData td;
    for (const auto& row : table->rows()) td.degrees.push_back(row.degree);
    td.orthogonality = check_orthogonality(*table).ok();
    if (!td.orthogonality) r.failures.push_back("character table fails orthogonality");
    r.table = td;
  }
  const CharacterTable* t = table ? &*table : nullptr;

  t0 = Clock::now();
  InvariantBundle b = compute_invariants(g, t);
  r.invariants = {{"K", data(b.K)},   {"U", data(b.U)},       {"Z", data(b.Z)},   {"G'", data(b.Gprime)},
                  {"Z2", data(b.Z2)}, {"Z_K", data(b.ZK)},     {"Z_U", data(b.ZU)}, {"V", data(v_rel(b.Gprime))}};
  if (t) r.x_set = b.X_set;
  r.route_agreement = b.route_agreement;
  for (const auto& [k, ok] : b.route_agreement)
    if (!ok) r.failures.push_back("route disagreement " + k);
  r.timings_ms["invariants"] = ms_since(t0);

  t0 = Clock::now();
  try {
    SeriesBundle s = all_series(g, t);
    r.series = {{"K", data(s.k)}, {"U", data(s.u)}, {"delta", data(s.delta)}, {"epsilon", data(s.epsilon)}};
    const std::size_t limit = options.suite.lattice_limit;
    r.nested = data(is_nested(g, t, &s, limit));
    r.nested_gvz = data(is_nested_gvz(g, t, &s, limit));
    for (const RouteData* v : {&*r.nested, &*r.nested_gvz})
      for (const auto& [k, ok] : v->identities)
        if (!ok) r.failures.push_back("identity " + k + " fails");
  } catch (const Error& e) {
    if (!is_error(e)) throw;
    r.failures.push_back(std::string(to_string(e.kind())) + ": " + e.what());
  }
  r.timings_ms["series"] = ms_since(t0);

  t0 = Clock::now();
  try {
    r.theorems = verify_theorem_suite(g, t, options.suite);
    if (const TheoremVerdict* f = first_failure(r.theorems)) r.failures.push_back(f->theorem_id + ": " + f->witness);
  } catch (const Error& e) {
    if (!is_error(e)) throw;
    r.failures.push_back(std::string(to_string(e.kind())) + ": " + e.what());
  }
  r.timings_ms["theorems"] = ms_since(t0);

  try {
    r.observed = observe_invariants(g, t, invariant_names());
  } catch (const Error& e) {
    if (!is_error(e)) throw;
    r.failures.push_back(std::string(to_string(e.kind())) + ": " + e.what());
  }
  return r;
}

GroupPtr load_input(const std::string& input, std::size_t cap) {
  for (const char* prefix : {"family:", "section8:", "section8x:", "file:"})
    if (input.rfind(prefix, 0) == 0) return build_recipe(input, cap);
  return parse_group_file(input, cap);
}

json to_json(const AnalysisReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["input"] = r.input;
  j["group"] = {{"order", r.group.order},
                {"class_sizes", r.group.class_sizes},
                {"abelian_invariants", r.group.abelian_invariants},
                {"source", {{"kind", r.group.source_kind}, {"description", r.group.source_description}, {"file_hash", r.group.file_hash}}},
                {"table_sha1", r.group.table_sha1}};
  j["character_table"] = r.table ? json{{"degrees", r.table->degrees}, {"orthogonality", r.table->orthogonality}} : json(nullptr);
  json inv;
  for (const auto& [k, s] : r.invariants) inv[k] = sub_json(s);
  j["invariants"] = inv;
  j["x_set"] = r.x_set ? json(*r.x_set) : json(nullptr);
  j["route_agreement"] = r.route_agreement;
  json ser = json::object();
  for (const auto& [k, s] : r.series) ser[k] = {{"terms", subs_json(s.terms)}, {"stabilized_at", s.stabilized_at}};
  j["series"] = ser;
  j["nested"] = r.nested ? route_json(*r.nested) : json(nullptr);
  j["nested_gvz"] = r.nested_gvz ? route_json(*r.nested_gvz) : json(nullptr);
  json th = json::array();
  for (const auto& v : r.theorems)
    th.push_back({{"id", v.theorem_id},
                  {"applicable", v.applicable},
                  {"holds", v.holds},
                  {"skipped", v.skipped},
                  {"exploratory", v.exploratory},
                  {"witness", v.witness}});
  j["theorems"] = th;
  json obs = json::object();
  for (const auto& [k, v] : r.observed) obs[k] = value_json(v);
  j["observed"] = obs;
  j["failures"] = r.failures;
  j["timings_ms"] = r.timings_ms;
  return j;
}

AnalysisReport report_from_json(const json& j) {
  if (j.at("schema") != kReportSchema) throw ParseError(0, 0, "report schema is not " + std::string(kReportSchema));
  AnalysisReport r;
  r.input = j.at("input");
  const auto& g = j.at("group");
  r.group.order = g.at("order");
  r.group.class_sizes = g.at("class_sizes").get<std::vector<std::size_t>>();
  r.group.abelian_invariants = g.at("abelian_invariants").get<std::vector<std::size_t>>();
  r.group.source_kind = g.at("source").at("kind");
  r.group.source_description = g.at("source").at("description");
  r.group.file_hash = g.at("source").at("file_hash");
  r.group.table_sha1 = g.at("table_sha1");
  if (const auto& ct = j.at("character_table"); !ct.is_null())
    r.table = TableData{ct.at("degrees").get<std::vector<unsigned>>(), ct.at("orthogonality")};
  for (const auto& [k, s] : j.at("invariants").items()) r.invariants[k] = sub_from(s);
  if (!j.at("x_set").is_null()) r.x_set = j.at("x_set").get<std::vector<std::size_t>>();
  r.route_agreement = j.at("route_agreement").get<std::map<std::string, bool>>();
  for (const auto& [k, s] : j.at("series").items()) r.series[k] = {subs_from(s.at("terms")), s.at("stabilized_at")};
  if (!j.at("nested").is_null()) r.nested = route_from(j.at("nested"));
  if (!j.at("nested_gvz").is_null()) r.nested_gvz = route_from(j.at("nested_gvz"));
  for (const auto& v : j.at("theorems"))
    r.theorems.push_back({v.at("id"), v.at("applicable"), v.at("holds"), v.at("skipped"), v.at("exploratory"), v.at("witness")});
  for (const auto& [k, v] : j.at("observed").items()) r.observed[k] = value_from(v);
  r.failures = j.at("failures").get<std::vector<std::string>>();
  r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
  return r;
}

json error_json(const std::exception& e) {
  json err{{"kind", "Error"}, {"message", e.what()}};
  if (const auto* ne = dynamic_cast<const Error*>(&e)) err["kind"] = std::string(to_string(ne->kind()));
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    err["column"] = pe->column();
  }
  return json{{"schema", kReportSchema}, {"error", err}};
}

std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("NESTKIT_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "nestkit";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "nestkit";
  return std::filesystem::temp_directory_path() / "nestkit-cache";
}

EntryResult verify_entry(const CatalogEntry& entry, const VerifyOptions& options) {
  EntryResult res;
  res.name = entry.name;
  res.recipe = entry.recipe;
  GroupPtr g;
  try {
    g = build_recipe(entry.recipe, options.cap, options.base_dir);
  } catch (const std::exception& e) {
    res.input_error = e.what();
    return res;
  }
  AnalyzeOptions ao;
  ao.suite.only = options.only;
  std::filesystem::path file;
  if (options.use_cache) {
    file = options.cache_dir / (file_key(fingerprint(*g), ao) + ".json");
    if (auto cached = read_cached(file)) {
      res.report = std::move(cached);
      res.report->input = entry.recipe;
      res.cached = true;
    }
  }
  if (!res.report) {
    res.report = analyze_group(*g, entry.recipe, ao);
    if (options.use_cache) write_atomic(file, to_json(*res.report).dump() + "\n");
  }
  for (const auto& [k, x] : entry.expected) {
    auto it = res.report->observed.find(k);
    if (it != res.report->observed.end() && !(it->second == x.value))
      res.mismatches.push_back({k, x.value, it->second, x.provenance});
  }
  return res;
}

std::vector<EntryResult> verify_catalog(const std::vector<CatalogEntry>& entries, const VerifyOptions& options,
                                        unsigned jobs) {
  std::vector<EntryResult> out(entries.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      try {
        out[i] = verify_entry(entries[i], options);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

json summary_json(const std::vector<EntryResult>& results, const std::string& manifest, const VerifyOptions& options) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = "verify";
  j["manifest"] = manifest;
  j["suite_version"] = kSuiteVersion;
  j["only"] = options.only ? json(*options.only) : json(nullptr);
  std::size_t failed = 0;
  json rows = json::array();
  json first = nullptr;
  for (const auto& r : results) {
    json row{{"name", r.name}, {"recipe", r.recipe}, {"passed", r.passed()}, {"cached", r.cached}};
    if (r.input_error) row["input_error"] = *r.input_error;
    if (r.report) {
      row["order"] = r.report->group.order;
      row["failures"] = r.report->failures;
    }
    json mm = json::array();
    for (const auto& m : r.mismatches)
      mm.push_back({{"invariant", m.invariant},
                    {"expected", value_json(m.expected)},
                    {"observed", value_json(m.observed)},
                    {"provenance", m.provenance}});
    row["mismatches"] = mm;
    if (!r.passed()) {
      ++failed;
      if (first.is_null()) {
        first = {{"name", r.name}, {"recipe", r.recipe}, {"mismatches", mm}};
        if (r.report) first["failures"] = r.report->failures;
        if (r.input_error) first["input_error"] = *r.input_error;
      }
    }
    rows.push_back(row);
  }
  j["groups"] = results.size();
  j["failures"] = failed;
  j["first_counterexample"] = first;
  j["results"] = rows;
  return j;
}

}  // namespace nestkit::cli
