#include <algorithm>

#include "doctest.h"
#include "nestkit/chartab.hpp"
#include "nestkit/cyclotomic.hpp"
#include "nestkit/subgroups.hpp"
#include "oracles.hpp"

using namespace nestkit;

namespace {

std::int64_t int_value(const CyclotomicInt& v) {
  std::int64_t x = 0;
  REQUIRE(v.is_integer(&x));
  return x;
}

std::size_t find_degree(const CharacterTable& t, unsigned d) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.row(i).degree == d) return i;
  FAIL("no character of degree " << d);
  return 0;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  auto z3 = CyclotomicInt::root(3, 1);
  auto one = CyclotomicInt(3, 1);
  CHECK((one + z3 + z3 * z3).is_zero());
  CHECK((z3 * z3 * z3) == one);
  CHECK(z3.conj() == z3 * z3);
  auto i4 = CyclotomicInt::root(4, 1);
  CHECK((i4 * i4) == CyclotomicInt(4, -1));
  CHECK((i4 * i4.conj()) == CyclotomicInt(4, 1));
  auto z12 = CyclotomicInt::root(12, 1);
  auto p = z12;
  for (int k = 1; k < 12; ++k) p = p * z12;
  CHECK(p == CyclotomicInt(12, 1));
  // sum of all primitive 12th roots is the Moebius value mu(12) = 0
  CyclotomicInt s(12);
  for (int k : {1, 5, 7, 11}) s += CyclotomicInt::root(12, k);
  CHECK(s.is_zero());
  CHECK(std::abs(CyclotomicInt::root(8, 1).to_complex().real() - std::sqrt(0.5)) < 1e-12);
  CHECK(CyclotomicInt(2, -1) == CyclotomicInt::root(2, 1));
  CHECK(CyclotomicInt::root(1, 5) == CyclotomicInt(1, 1));
  CHECK(CyclotomicInt::root(5, 2).galois(3) == CyclotomicInt::root(5, 6));
}

TEST_CASE("Dixon prime") {
  CHECK(dixon_prime(6, 6) == 7);
  CHECK(dixon_prime(8, 4) == 13);
  CHECK(dixon_prime(60, 30) == 31);
}

TEST_CASE("C2 table") {
  auto c2 = oracle::cyclic(2);
  auto t = character_table(*c2);
  REQUIRE(t.size() == 2);
  CHECK(int_value(t.row(0).values[1]) == 1);
  CHECK(int_value(t.row(1).values[1]) == -1);
}

TEST_CASE("S3 table") {
  auto s3 = oracle::s3();
  auto t = character_table(*s3);
  REQUIRE(t.size() == 3);
  CHECK(t.row(0).degree == 1);
  CHECK(t.row(1).degree == 1);
  CHECK(t.row(2).degree == 2);
  // class order: identity, 3-cycles, transpositions
  CHECK(t.classes().classes[1].size() == 2);
  CHECK(int_value(t.row(2).values[1]) == -1);
  CHECK(int_value(t.row(2).values[2]) == 0);
  CHECK(int_value(t.row(1).values[2]) == -1);
  CHECK(kernel_of(t, 1).order() == 3);
  CHECK(kernel_of(t, 0).is_whole());
  CHECK(center_of(t, 2).is_trivial());
  CHECK(vanishing_off_char(t, 2).order() == 3);
  CHECK(!is_gvz(t));
  auto [nested, chain] = is_nested_direct(t);
  CHECK(nested);
  REQUIRE(chain->terms.size() == 2);
  CHECK(chain->terms[1].is_trivial());
  Subgroup a3 = derived_subgroup(*s3);
  CHECK(irr_over(t, a3) == std::vector<std::size_t>{2});
  CHECK(irr_over(t, trivial_subgroup(*s3)).empty());
  CHECK(irr_over(t, whole_group(*s3)).size() == 2);
  CHECK(!is_fully_ramified(t, 2, trivial_subgroup(*s3)));
  CHECK(is_fully_ramified(t, 1, whole_group(*s3)));
  CHECK(is_fully_ramified(t, 0, whole_group(*s3)));
}

TEST_CASE("D8 table") {
  auto d8 = oracle::d8();
  auto t = character_table(*d8);
  REQUIRE(t.size() == 5);
  for (std::size_t i = 0; i < 4; ++i) CHECK(t.row(i).degree == 1);
  std::size_t chi = find_degree(t, 2);
  Subgroup z = center(*d8);
  for (std::size_t c = 0; c < 5; ++c) {
    bool central = z.contains(t.classes().representatives[c]);
    if (!central) CHECK(t.row(chi).values[c].is_zero());
  }
  CHECK(kernel_of(t, chi).is_trivial());
  CHECK(center_of(t, chi) == z);
  CHECK(vanishing_off_char(t, chi) == z);
  CHECK(is_gvz(t));
  CHECK(is_vz(t));
  CHECK(is_fully_ramified(t, chi, z));
  auto [nested, chain] = is_nested_direct(t);
  CHECK(nested);
  REQUIRE(chain->terms.size() == 2);
  CHECK(chain->terms[1] == z);
  for (std::size_t i = 0; i < 4; ++i) CHECK(center_of(t, i).is_whole());
}

TEST_CASE("orthogonality on assorted groups") {
  std::vector<GroupPtr> groups{oracle::s3(), oracle::d8(), oracle::q8(), oracle::a4(), oracle::a5(),
                               oracle::cyclic(12), oracle::cyclic(15),
                               direct_product(oracle::d8(), oracle::d8()),
                               direct_product(oracle::s3(), oracle::cyclic(5))};
  for (const auto& g : groups) {
    auto t = character_table(*g);
    auto rep = check_orthogonality(t);
    CHECK(rep.ok());
    for (std::size_t i = 0; i < t.size(); ++i) {
      // kernel from values equals {g : chi(g) = chi(1)} computed independently
      const auto& ch = t.row(i);
      CyclotomicInt deg(t.exponent(), ch.degree);
      for (std::size_t c = 0; c < t.classes().size(); ++c)
        CHECK(kernel_of(t, i).contains(t.classes().representatives[c]) == (ch.values[c] == deg));
      CHECK(center_of(t, i) == center_from_values(t, i));
      CHECK(is_normal(kernel_of(t, i)));
    }
  }
}

TEST_CASE("Z(chi) via cyclic subgroups") {
  for (auto g : {oracle::d8(), oracle::a4(), oracle::q8()}) {
    auto t = character_table(*g);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t x = 0; x < g->order(); ++x) {
        Elem one[] = {static_cast<Elem>(x)};
        Subgroup h = subgroup_closure(*g, one);
        bool in_ker = bracket(h, whole_group(*g)) <= t.kernel(i);
        CHECK(in_ker == (h <= center_of(t, i)));
      }
  }
}

TEST_CASE("D8 x D8 is not nested") {
  auto dd = direct_product(oracle::d8(), oracle::d8());
  auto t = character_table(*dd);
  CHECK(!is_nested_direct(t).first);
}

TEST_CASE("extraspecial predicates") {
  CHECK(is_semi_extraspecial(*oracle::d8()));
  CHECK(is_semi_extraspecial(*oracle::q8()));
  CHECK(!is_semi_extraspecial(*direct_product(oracle::d8(), oracle::cyclic(2))));
  CHECK(!is_semi_extraspecial(*oracle::s3()));
}
