#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "nestkit/catalog.hpp"
#include "nestkit/chartab.hpp"
#include "nestkit/error.hpp"
#include "nestkit/isomorphism.hpp"
#include "oracles.hpp"

using namespace nestkit;

namespace {

const std::vector<CatalogEntry>& catalog() {
  static const auto c = default_catalog();
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("recipes") {
  CHECK(build_recipe("family:dihedral:4")->order() == 8);
  CHECK(build_recipe("family:cyclic:2 * family:symmetric:3 * family:cyclic:3")->order() == 36);
  CHECK(build_recipe("section8:3:0")->order() == 729);
  auto sg = build_recipe("file:smallgroup_32_27.txt", kDefaultOrderCap, NESTKIT_DATA_DIR);
  CHECK(sg->order() == 32);
  CHECK(sg->source().kind == "file");
  CHECK_THROWS_AS(build_recipe("dihedral:4"), Error);
  CHECK_THROWS_AS(build_recipe("family:dihedral:4 * "), Error);
  CHECK_THROWS_AS(build_recipe("section8:4:x"), Error);
  CHECK_THROWS_AS(build_recipe("family:heisenberg:9 * family:heisenberg:9"), Error);
}

TEST_CASE("default catalog shape") {
  const auto& c = catalog();
  CHECK(c.size() == 257);
  std::map<std::string, int> names;
  for (const auto& e : c) ++names[e.name];
  for (const auto& [n, k] : names) CHECK_MESSAGE(k == 1, n);
  for (const char* want : {"S3", "A5", "D8", "Q8", "C3 wr C3", "Heisenberg(4)", "D8 x D8", "D8 x Q8",
                           "section8 Heisenberg(4), l=1", "section8 Heisenberg(4), l=1, extended"})
    CHECK_MESSAGE(names.count(want), want);
  // unnamed products of family members, by order
  std::map<std::size_t, int> small;
  for (const auto& e : c)
    if (e.expected.count("abelian")) ++small[std::get<std::uint64_t>(e.expected.at("order").value)];
  CHECK(small[16] == 7);  // D16, Q16 and SD16 are named
  CHECK(small[60] == 10);
  CHECK(default_catalog().size() == c.size());
}

TEST_CASE("small catalog groups are pairwise non-isomorphic") {
  std::map<std::size_t, std::vector<GroupPtr>> by_order;
  for (const auto& e : catalog()) {
    if (std::get<std::uint64_t>(e.expected.at("order").value) > 63) continue;
    if (e.name == "Heisenberg(2)") continue;  // the same group as D8, kept under both names
    by_order[std::get<std::uint64_t>(e.expected.at("order").value)].push_back(build_recipe(e.recipe));
  }
  for (const auto& [order, gs] : by_order)
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j)
        if (order <= 8) CHECK_FALSE(oracle::isomorphic_brute(*gs[i], *gs[j]));
        else CHECK_FALSE(are_isomorphic(*gs[i], *gs[j]));
}

TEST_CASE("derived expectations agree with brute force") {
  int checked = 0;
  for (const auto& e : catalog()) {
    GroupPtr g = build_recipe(e.recipe);
    if (g->order() > 64) continue;
    for (const auto& [inv, x] : e.expected) {
      if (x.provenance != "derived" && x.provenance != "paper") continue;
      std::uint64_t want = 0;
      if (inv == "|K|") want = oracle::k_brute(*g).size();
      else if (inv == "|U|") want = oracle::u_brute(*g, oracle::center(*g)).size();
      else if (inv == "|Z|") want = oracle::center(*g).size();
      else continue;
      INFO(e.name << " " << inv);
      CHECK(std::get<std::uint64_t>(x.value) == want);
      ++checked;
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("expectations") {
  const auto& c = catalog();
  for (const auto& e : c) {
    GroupPtr g = build_recipe(e.recipe);
    if (g->order() > 256) continue;
    CharacterTable t = character_table(*g);
    INFO(e.name);
    CHECK(check_expectations(e, *g, &t).empty());
  }
  CatalogEntry s3 = c.front();
  REQUIRE(s3.name == "S3");
  s3.expected["|K|"].value = std::uint64_t{6};
  GroupPtr g = build_recipe(s3.recipe);
  auto mm = check_expectations(s3, *g, nullptr);
  REQUIRE(mm.size() == 1);
  CHECK(mm[0].invariant == "|K|");
  CHECK(to_string(mm[0].observed) == "3");
  CHECK_THROWS_AS(observe_invariants(*g, nullptr, {"no such"}), Error);
}

TEST_CASE("manifest round trip") {
  const auto& c = catalog();
  std::string text = catalog_to_json(c);
  auto back = catalog_from_json(text);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back[i].name == c[i].name);
    CHECK(back[i].recipe == c[i].recipe);
    REQUIRE(back[i].expected.size() == c[i].expected.size());
    for (const auto& [k, v] : c[i].expected) {
      CHECK(back[i].expected.at(k).value == v.value);
      CHECK(back[i].expected.at(k).provenance == v.provenance);
    }
  }
  CHECK(catalog_to_json(back) == text);
  CHECK(slurp(std::string(NESTKIT_DATA_DIR) + "/default_catalog.json") == text);
}

TEST_CASE("manifest errors") {
  CHECK_THROWS_AS(catalog_from_json("{"), ParseError);
  CHECK_THROWS_AS(catalog_from_json(R"({"schema": "other", "entries": []})"), ParseError);
  CHECK_THROWS_AS(catalog_from_json(R"({"schema": "nestkit-catalog/1", "entries": [{"name": "x"}]})"), ParseError);
  CHECK_THROWS_AS(catalog_from_json(
                      R"({"schema": "nestkit-catalog/1", "entries": [{"name": "x", "recipe": "family:cyclic:2", "expected": {"|Q|": {"value": 1}}}]})"),
                  ParseError);
  auto ok = catalog_from_json(
      R"({"schema": "nestkit-catalog/1", "entries": [{"name": "x", "recipe": "family:cyclic:2", "expected": {"abelian": {"value": true}}}]})");
  REQUIRE(ok.size() == 1);
  CHECK(std::get<bool>(ok[0].expected.at("abelian").value));
}
