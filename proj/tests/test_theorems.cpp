#include <set>

#include "doctest.h"
#include "nestkit/chartab.hpp"
#include "nestkit/constructions.hpp"
#include "nestkit/error.hpp"
#include "nestkit/theorems.hpp"
#include "oracles.hpp"

using namespace nestkit;

namespace {

const TheoremVerdict* find(const std::vector<TheoremVerdict>& vs, const std::string& id) {
  for (const auto& v : vs)
    if (v.theorem_id == id) return &v;
  return nullptr;
}

std::vector<GroupPtr> sample() {
  return {oracle::s3(),
          oracle::d8(),
          oracle::q8(),
          oracle::a4(),
          oracle::a5(),
          cyclic(6),
          heisenberg(3),
          heisenberg(4),
          symmetric(4),
          wreath_cpcp(3),
          extraspecial(3, 1, ExtraspecialType::Minus),
          extraspecial(2, 2, ExtraspecialType::Plus),
          semidihedral(16),
          dihedral(16),
          quaternion(32),
          dicyclic(6),
          sl2(3),
          gl2(3),
          direct_product(oracle::d8(), cyclic(2)),
          direct_product(oracle::d8(), oracle::d8()),
          direct_product(oracle::s3(), cyclic(3)),
          elementary_abelian(2, 4)};
}

}  // namespace

TEST_CASE("theorem ids") {
  const auto& ids = theorem_ids();
  CHECK(ids.size() > 80);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  CHECK(is_theorem_id("Thm-kappa-series"));
  CHECK(is_theorem_id("Thm-epsilon-series"));
  CHECK_FALSE(is_theorem_id("no-such-id"));
}

TEST_CASE("suite has no failures on the sample") {
  for (const auto& g : sample()) {
    CharacterTable t = character_table(*g);
    auto vs = verify_theorem_suite(*g, &t);
    INFO(g->order());
    const TheoremVerdict* f = first_failure(vs);
    CHECK_MESSAGE(f == nullptr, (f ? f->theorem_id + ": " + f->witness : std::string()));
    CHECK(vs.size() == theorem_ids().size());
    for (const auto& v : vs) {
      CHECK_FALSE(v.skipped);
      if (!v.applicable) CHECK_FALSE(v.holds);
    }
  }
}

TEST_CASE("S3, D8 and C6") {
  auto s3 = oracle::s3();
  CharacterTable ts3 = character_table(*s3);
  auto vs = verify_theorem_suite(*s3, &ts3);
  REQUIRE(find(vs, "Lem-nested-K"));
  CHECK(find(vs, "Lem-K-eq-G")->applicable);
  CHECK(find(vs, "Lem-K-eq-G")->holds);
  CHECK_FALSE(find(vs, "Conv-abelian")->applicable);
  CHECK_FALSE(find(vs, "Lem-factor-exp-1")->applicable);

  auto d8 = oracle::d8();
  CharacterTable td8 = character_table(*d8);
  vs = verify_theorem_suite(*d8, &td8);
  for (const char* id : {"Thm-kappa-series", "Thm-delta-series", "Thm-epsilon-series", "Thm-nested-gvz-U",
                         "Thm-last-sect4", "Thm-nested-gvz-3", "Lem-VZ"}) {
    INFO(id);
    CHECK(find(vs, id)->applicable);
    CHECK(find(vs, id)->holds);
  }
  CHECK_FALSE(find(vs, "Thm-nested-gvz-3")->witness.empty());

  auto c6 = cyclic(6);
  CharacterTable tc6 = character_table(*c6);
  vs = verify_theorem_suite(*c6, &tc6);
  CHECK(find(vs, "Conv-abelian")->applicable);
  CHECK(find(vs, "Conv-abelian")->holds);
  CHECK_FALSE(find(vs, "Lem-VZ")->applicable);
}

TEST_CASE("converse of the witness equivalence fails on maximal class 2-groups") {
  for (const auto& g : {dihedral(16), semidihedral(16), wreath_cpcp(3)}) {
    INFO(g->order());
    CharacterTable t = character_table(*g);
    auto vs = verify_theorem_suite(*g, &t);
    const auto* v = find(vs, "Thm-nested-gvz-3-2-implies-1");
    REQUIRE(v);
    CHECK(v->exploratory);
    CHECK(v->applicable);
    CHECK_FALSE(v->holds);
    CHECK(find(vs, "Thm-nested-gvz-3")->holds);
    CHECK(first_failure(vs) == nullptr);
  }
}

TEST_CASE("only filter") {
  auto d8 = oracle::d8();
  CharacterTable t = character_table(*d8);
  SuiteOptions o;
  o.only = "Lem-U-le-K";
  auto vs = verify_theorem_suite(*d8, &t, o);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].theorem_id == "Lem-U-le-K");
  CHECK(vs[0].holds);
  o.only = "bogus";
  CHECK_THROWS_AS(verify_theorem_suite(*d8, &t, o), Error);
}

TEST_CASE("without a table or lattice") {
  auto d8 = oracle::d8();
  auto vs = verify_theorem_suite(*d8, nullptr);
  CHECK(first_failure(vs) == nullptr);
  CHECK(find(vs, "Lem-irr-sets")->skipped);
  CHECK(find(vs, "Lem-U-le-K")->holds);

  auto e = elementary_abelian(2, 4);
  CharacterTable t = character_table(*e);
  SuiteOptions o;
  o.lattice_limit = 8;
  vs = verify_theorem_suite(*e, &t, o);
  CHECK(first_failure(vs) == nullptr);
  bool any_skipped = false;
  for (const auto& v : vs) any_skipped = any_skipped || v.skipped;
  CHECK(any_skipped);
}
