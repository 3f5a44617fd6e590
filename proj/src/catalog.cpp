#include "nestkit/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "nestkit/build.hpp"
#include "nestkit/constructions.hpp"
#include "nestkit/error.hpp"
#include "nestkit/invariants.hpp"
#include "nestkit/isomorphism.hpp"
#include "nestkit/series.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

using json = nlohmann::ordered_json;

std::string to_string(const InvariantValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::to_string(std::get<std::uint64_t>(v));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t i = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, i == std::string_view::npos ? std::string_view::npos : i - start)));
    if (i == std::string_view::npos) return out;
    start = i + 1;
  }
}

unsigned to_unsigned(const std::string& s, std::string_view recipe) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
    throw Error(ErrorKind::UnknownFamily, "bad number '" + s + "' in recipe '" + std::string(recipe) + "'");
  return static_cast<unsigned>(std::stoul(s));
}

GroupPtr build_atom(std::string_view atom, std::size_t cap, const std::filesystem::path& base_dir) {
  if (atom.substr(0, 5) == "file:") {
    std::filesystem::path p(std::string(atom.substr(5)));
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return parse_group_file(p, cap);
  }
  auto parts = split(atom, ':');
  const std::string& kind = parts[0];
  if (kind == "family" && parts.size() >= 2)
    return standard_family(parts[1], std::vector<std::string>(parts.begin() + 2, parts.end()), cap);
  if ((kind == "section8" || kind == "section8x") && parts.size() == 3)
    return section8_heisenberg(to_unsigned(parts[1], atom), to_unsigned(parts[2], atom), kind == "section8x", cap).group;
  throw Error(ErrorKind::UnknownFamily, "unrecognised recipe '" + std::string(atom) + "'");
}

}  // namespace

GroupPtr build_recipe(std::string_view recipe, std::size_t cap, const std::filesystem::path& base_dir) {
  GroupPtr out;
  for (const auto& atom : split(recipe, '*')) {
    if (atom.empty()) throw Error(ErrorKind::UnknownFamily, "empty factor in recipe '" + std::string(recipe) + "'");
    GroupPtr g = build_atom(atom, cap, base_dir);
    out = out ? direct_product(out, g, cap) : g;
  }
  return out;
}

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = {"order",  "abelian",    "|Z|",        "|G'|",
                                                 "|K|",    "|U|",        "|V|",        "nested",
                                                 "nested_gvz", "semi_extraspecial", "U<Z", "Z_U=Z",
                                                 "Z(chi)>Z for all chi"};
  return names;
}

std::map<std::string, InvariantValue> observe_invariants(const Group& g, const CharacterTable* t,
                                                         const std::vector<std::string>& names) {
  std::optional<Subgroup> z, u;
  std::optional<SeriesBundle> series;
  auto Z = [&]() -> const Subgroup& { return z ? *z : z.emplace(center(g)); };
  auto U = [&]() -> const Subgroup& { return u ? *u : u.emplace(u_subgroup(g, t)); };
  auto S = [&]() -> const SeriesBundle* { return series ? &*series : &series.emplace(all_series(g, t)); };
  std::map<std::string, InvariantValue> out;
  for (const auto& n : names) {
    std::uint64_t (*size)(const Subgroup&) = [](const Subgroup& s) { return static_cast<std::uint64_t>(s.order()); };
    if (n == "order") out[n] = static_cast<std::uint64_t>(g.order());
    else if (n == "abelian") out[n] = g.is_abelian();
    else if (n == "|Z|") out[n] = size(Z());
    else if (n == "|G'|") out[n] = size(derived_subgroup(g));
    else if (n == "|K|") out[n] = size(k_subgroup(g));
    else if (n == "|U|") out[n] = size(U());
    else if (n == "|V|") out[n] = size(v_rel(derived_subgroup(g)));
    else if (n == "nested") out[n] = is_nested(g, t, S()).value;
    else if (n == "nested_gvz") out[n] = is_nested_gvz(g, t, S()).value;
    else if (n == "semi_extraspecial") out[n] = is_semi_extraspecial(g);
    else if (n == "U<Z") out[n] = U() < Z();
    else if (n == "Z_U=Z") out[n] = z_over(U()) == Z();
    else if (n == "Z(chi)>Z for all chi") {
      if (!t) continue;
      bool all = true;
      for (std::size_t i = 0; i < t->size() && all; ++i) all = Z() < t->center(i);
      out[n] = all;
    } else {
      throw Error(ErrorKind::PreconditionViolated, "unknown invariant '" + n + "'");
    }
  }
  return out;
}

std::vector<ExpectationMismatch> check_expectations(const CatalogEntry& e, const Group& g, const CharacterTable* t) {
  std::vector<std::string> names;
  for (const auto& [n, x] : e.expected) names.push_back(n);
  auto seen = observe_invariants(g, t, names);
  std::vector<ExpectationMismatch> out;
  for (const auto& [n, x] : e.expected) {
    auto it = seen.find(n);
    if (it == seen.end()) continue;
    if (!(it->second == x.value)) out.push_back({n, x.value, it->second, x.provenance});
  }
  return out;
}

namespace {

using Exp = std::vector<std::pair<std::string, Expectation>>;

Expectation paper(InvariantValue v) { return {v, "paper"}; }
Expectation derived(InvariantValue v) { return {v, "derived"}; }
Expectation trivial(InvariantValue v) { return {v, "trivial"}; }
InvariantValue n(std::uint64_t v) { return v; }

CatalogEntry entry(std::string name, std::string recipe, std::uint64_t order, Exp more = {}) {
  CatalogEntry e{std::move(name), std::move(recipe), {}};
  e.expected["order"] = trivial(order);
  for (auto& [k, v] : more) e.expected[k] = std::move(v);
  return e;
}

std::vector<CatalogEntry> named_entries() {
  std::vector<CatalogEntry> out;
  auto nest = [](bool nested, bool gvz) {
    return Exp{{"nested", derived(nested)}, {"nested_gvz", derived(gvz)}};
  };
  auto plus = [](Exp a, const Exp& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  out.push_back(entry("S3", "family:symmetric:3", 6,
                      plus({{"|K|", derived(n(3))}, {"|U|", derived(n(1))}}, nest(true, false))));
  out.push_back(entry("D8", "family:dihedral:4", 8, plus({{"|K|", derived(n(2))}, {"|U|", derived(n(2))}}, nest(true, true))));
  out.push_back(entry("Q8", "family:quaternion:8", 8, plus({{"|K|", derived(n(2))}, {"|U|", derived(n(2))}}, nest(true, true))));
  out.push_back(entry("A4", "family:alternating:4", 12));
  out.push_back(entry("S4", "family:symmetric:4", 24));
  out.push_back(entry("SL(2,3)", "family:sl2:3", 24));
  out.push_back(entry("GL(2,3)", "family:gl2:3", 48));
  // quasi-simple: K = G
  out.push_back(entry("A5", "family:alternating:5", 60, {{"|K|", paper(n(60))}, {"nested", derived(true)}}));
  out.push_back(entry("SL(2,5)", "family:sl2:5", 120, {{"|K|", paper(n(120))}}));
  out.push_back(entry("PSL(2,7)", "family:psl2:7", 168, {{"|K|", paper(n(168))}}));
  out.push_back(entry("A6", "family:alternating:6", 360, {{"|K|", paper(n(360))}}));
  out.push_back(entry("PSL(2,11)", "family:psl2:11", 660, {{"|K|", paper(n(660))}}));
  out.push_back(entry("S5", "family:symmetric:5", 120));
  out.push_back(entry("C3 wr C3", "family:wreath:3", 81,
                      {{"|K|", paper(n(3))},
                       {"|Z|", paper(n(3))},
                       {"|U|", paper(n(1))},
                       {"nested", paper(true)},
                       {"nested_gvz", derived(false)}}));
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    Exp e = {{"semi_extraspecial", paper(true)},
             {"|Z|", paper(n(q))},
             {"|G'|", paper(n(q))},
             {"|U|", paper(n(q))},
             {"|V|", paper(n(q))}};
    out.push_back(entry("Heisenberg(" + std::to_string(q) + ")", "family:heisenberg:" + std::to_string(q),
                        std::uint64_t(q) * q * q, plus(e, nest(true, true))));
  }
  struct Es {
    unsigned p, n;
    const char* type;
  };
  for (Es es : {Es{2, 2, "plus"}, Es{2, 2, "minus"}, Es{2, 3, "plus"}, Es{2, 3, "minus"}, Es{3, 1, "minus"},
                Es{3, 2, "plus"}, Es{3, 2, "minus"}, Es{5, 1, "plus"}, Es{5, 1, "minus"}, Es{7, 1, "minus"}}) {
    std::uint64_t order = es.p;
    for (unsigned i = 0; i < 2 * es.n; ++i) order *= es.p;
    std::string tag = std::to_string(es.p) + "^(1+" + std::to_string(2 * es.n) + ")" + (es.type[0] == 'p' ? "+" : "-");
    out.push_back(entry("extraspecial " + tag,
                        "family:extraspecial:" + std::to_string(es.p) + ":" + std::to_string(es.n) + ":" + es.type, order,
                        {{"semi_extraspecial", paper(true)}, {"|Z|", trivial(n(es.p))}, {"|U|", paper(n(es.p))}}));
  }
  // maximal class 2-groups
  for (unsigned order : {16u, 32u, 64u, 128u}) {
    std::string o = std::to_string(order);
    out.push_back(entry("D" + o, "family:dihedral:" + std::to_string(order / 2), order, {{"nested", paper(true)}}));
    out.push_back(entry("Q" + o, "family:quaternion:" + o, order, {{"nested", paper(true)}}));
    out.push_back(entry("SD" + o, "family:semidihedral:" + o, order, {{"nested", paper(true)}}));
  }
  out.push_back(entry("D8 x D8", "family:dihedral:4 * family:dihedral:4", 64,
                      {{"|U|", paper(n(1))}, {"nested", derived(false)}, {"nested_gvz", derived(false)}}));
  out.push_back(entry("D8 x Q8", "family:dihedral:4 * family:quaternion:8", 64,
                      {{"|U|", paper(n(1))}, {"nested", derived(false)}, {"nested_gvz", derived(false)}}));
  out.push_back(entry("Q8 x Q8", "family:quaternion:8 * family:quaternion:8", 64, {{"|U|", paper(n(1))}}));
  out.push_back(entry("S3 x S3", "family:symmetric:3 * family:symmetric:3", 36, {{"|U|", paper(n(1))}}));
  out.push_back(entry("D8 x C4", "family:dihedral:4 * family:cyclic:4", 32));
  out.push_back(entry("Heisenberg(3) x C4", "family:heisenberg:3 * family:cyclic:4", 108));
  out.push_back(entry("Heisenberg(3) x C3 x C3", "family:heisenberg:3 * family:cyclic:3 * family:cyclic:3", 243));
  out.push_back(entry("A5 x C2", "family:alternating:5 * family:cyclic:2", 120));
  out.push_back(entry("S4 x C2", "family:symmetric:4 * family:cyclic:2", 48));
  out.push_back(entry("Heisenberg(3) x Heisenberg(3)", "section8:3:0", 729, {{"|U|", trivial(n(1))}}));
  out.push_back(entry("section8 Heisenberg(4), l=1", "section8:4:1", 2048,
                      {{"|U|", paper(n(2))}, {"|Z|", derived(n(8))}, {"U<Z", paper(true)}}));
  out.push_back(entry("section8 Heisenberg(4), l=1, extended", "section8x:4:1", 2048,
                      {{"|U|", paper(n(2))}, {"|Z|", derived(n(8))}, {"U<Z", paper(true)}, {"Z_U=Z", paper(true)}}));
  return out;
}

struct Atom {
  std::string recipe;
  GroupPtr group;
};

std::vector<Atom> small_atoms(std::size_t limit) {
  std::vector<std::string> r;
  for (unsigned k = 2; k <= limit; ++k) r.push_back("family:cyclic:" + std::to_string(k));
  for (unsigned k = 3; 2 * k <= limit; ++k) r.push_back("family:dihedral:" + std::to_string(k));
  for (unsigned k = 2; 4 * k <= limit; ++k) r.push_back("family:dicyclic:" + std::to_string(k));
  for (unsigned k = 16; k <= limit; k *= 2) r.push_back("family:semidihedral:" + std::to_string(k));
  for (const char* s : {"family:symmetric:3", "family:symmetric:4", "family:alternating:4", "family:alternating:5",
                        "family:sl2:3", "family:gl2:3", "family:heisenberg:3", "family:extraspecial:3:1:minus",
                        "family:extraspecial:2:2:plus", "family:extraspecial:2:2:minus"})
    r.push_back(s);
  std::vector<Atom> out;
  for (auto& s : r) {
    GroupPtr g = build_recipe(s);
    if (g->order() <= limit) out.push_back({s, g});
  }
  return out;
}

}  // namespace

std::vector<CatalogEntry> default_catalog() {
  constexpr std::size_t kSmall = 63;
  std::vector<CatalogEntry> out = named_entries();
  std::vector<GroupPtr> seen;
  for (const auto& e : out) {
    GroupPtr g = build_recipe(e.recipe);
    if (g->order() <= kSmall) seen.push_back(g);
  }
  std::vector<Atom> atoms = small_atoms(kSmall);
  std::vector<Atom> candidates;
  std::vector<std::size_t> picked;
  std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t from, std::size_t order) {
    for (std::size_t i = from; i < atoms.size(); ++i) {
      if (order * atoms[i].group->order() > kSmall) continue;
      picked.push_back(i);
      std::string recipe;
      GroupPtr g;
      for (std::size_t j : picked) {
        recipe += (recipe.empty() ? "" : " * ") + atoms[j].recipe;
        g = g ? direct_product(g, atoms[j].group) : atoms[j].group;
      }
      candidates.push_back({recipe, g});
      grow(i, order * atoms[i].group->order());
      picked.pop_back();
    }
  };
  grow(0, 1);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Atom& a, const Atom& b) { return a.group->order() < b.group->order(); });
  std::map<std::string, std::vector<GroupPtr>> by_key;
  for (const auto& g : seen) by_key[structure_key(*g)].push_back(g);
  for (auto& c : candidates) {
    auto& bucket = by_key[structure_key(*c.group)];
    bool dup = std::any_of(bucket.begin(), bucket.end(), [&](const GroupPtr& h) { return are_isomorphic(*c.group, *h); });
    if (dup) continue;
    bucket.push_back(c.group);
    out.push_back(entry(c.group->source().description, c.recipe, c.group->order(),
                        {{"abelian", trivial(c.group->is_abelian())}}));
  }
  return out;
}

std::string catalog_to_json(const std::vector<CatalogEntry>& entries) {
  json doc;
  doc["schema"] = "nestkit-catalog/1";
  json arr = json::array();
  for (const auto& e : entries) {
    json j;
    j["name"] = e.name;
    j["recipe"] = e.recipe;
    json ex = json::object();
    for (const auto& [k, v] : e.expected) {
      json x;
      if (const bool* b = std::get_if<bool>(&v.value)) x["value"] = *b;
      else x["value"] = std::get<std::uint64_t>(v.value);
      x["provenance"] = v.provenance;
      ex[k] = x;
    }
    j["expected"] = ex;
    arr.push_back(j);
  }
  doc["entries"] = arr;
  return doc.dump(2) + "\n";
}

namespace {

std::vector<CatalogEntry> entries_from(const json& doc) {
  auto bad = [](const std::string& what) -> ParseError { return ParseError(1, 1, "manifest: " + what); };
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != "nestkit-catalog/1")
    throw bad("schema must be nestkit-catalog/1");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw bad("missing entries array");
  std::vector<CatalogEntry> out;
  for (const auto& j : doc["entries"]) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string() || !j.contains("recipe") || !j["recipe"].is_string())
      throw bad("every entry needs string name and recipe");
    CatalogEntry e{j["name"], j["recipe"], {}};
    if (j.contains("expected")) {
      if (!j["expected"].is_object()) throw bad(e.name + ": expected must be an object");
      for (const auto& [k, x] : j["expected"].items()) {
        if (std::find(invariant_names().begin(), invariant_names().end(), k) == invariant_names().end())
          throw bad(e.name + ": unknown invariant '" + k + "'");
        if (!x.is_object() || !x.contains("value")) throw bad(e.name + ": " + k + " has no value");
        Expectation ex;
        const auto& v = x["value"];
        if (v.is_boolean()) ex.value = v.get<bool>();
        else if (v.is_number_unsigned()) ex.value = v.get<std::uint64_t>();
        else throw bad(e.name + ": " + k + " must be a boolean or a non-negative integer");
        ex.provenance = x.value("provenance", "");
        e.expected[k] = ex;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<CatalogEntry> catalog_from_json(std::string_view text) {
  try {
    return entries_from(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.byte, e.what());
  } catch (const json::exception& e) {
    throw ParseError(1, 1, std::string("manifest: ") + e.what());
  }
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return catalog_from_json(ss.str());
}

}  // namespace nestkit
