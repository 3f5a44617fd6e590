#include <algorithm>

#include "doctest.h"
#include "nestkit/build.hpp"
#include "nestkit/constructions.hpp"
#include "nestkit/error.hpp"
#include "nestkit/isomorphism.hpp"
#include "nestkit/quotient.hpp"
#include "nestkit/subgroups.hpp"
#include "oracles.hpp"

using namespace nestkit;

namespace {

std::vector<Elem> as_list(const Subgroup& h) { return {h.members().begin(), h.members().end()}; }

Elem find_label(const Group& g, const std::string& s) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (g.label(static_cast<Elem>(i)) == s) return static_cast<Elem>(i);
  FAIL("no element labelled " << s);
  return 0;
}

void check_subgroup_axioms(const Subgroup& h) {
  const Group& g = h.group();
  CHECK(h.contains(0));
  for (Elem a : h.members()) {
    CHECK(h.contains(g.inv(a)));
    for (Elem b : h.members()) REQUIRE(h.contains(g.mul(a, b)));
  }
}

}  // namespace

TEST_CASE("build_group enumerates permutation groups") {
  auto s3 = oracle::s3();
  CHECK(s3->order() == 6);
  CHECK(s3->label(0) == "()");
  CHECK(check_group_axioms(*s3));
  auto triv = build_group(PermGenerators{3, {}});
  CHECK(triv->order() == 1);
  auto d8 = oracle::d8();
  CHECK(d8->order() == 8);
  CHECK(!d8->is_abelian());
  CHECK(d8->exponent() == 4);
}

TEST_CASE("build_group validates input") {
  CHECK_THROWS_AS(build_group(PermGenerators{3, {{0, 0, 1}}}), Error);
  CHECK_THROWS_AS(build_group(MatrixGenerators{3, 2, {{1, 1, 1, 1}}}), Error);
  PermGenerators s7{7, {oracle::perm(7, {{1, 2, 3, 4, 5, 6, 7}}), oracle::perm(7, {{1, 2}})}};
  CHECK(build_group(s7, 6000)->order() == 5040);
  try {
    build_group(s7);
    FAIL("expected cap failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderCapExceeded);
  }
}

TEST_CASE("matrix and table input") {
  // Heisenberg group over F_3.
  auto h = build_group(MatrixGenerators{3, 3, {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 1}}});
  CHECK(h->order() == 27);
  CHECK(h->exponent() == 3);
  CayleyTable c3{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  CHECK(build_group(c3)->order() == 3);
  CayleyTable bad{{{0, 1, 2}, {1, 0, 2}, {2, 1, 0}}};
  CHECK_THROWS_AS(build_group(bad), Error);
}

TEST_CASE("direct products") {
  auto c2 = oracle::cyclic(2), c3 = oracle::cyclic(3);
  auto c6 = direct_product(c2, c3);
  CHECK(c6->order() == 6);
  CHECK(c6->is_abelian());
  CHECK(c6->exponent() == 6);
  auto d8 = oracle::d8();
  auto dd = direct_product(d8, d8);
  CHECK(dd->order() == 64);
  CHECK(!dd->is_abelian());
  CHECK(dd->source().factors.size() == 2);
  auto d8c3 = direct_product(d8, c3);
  CHECK(center(*d8c3).order() == 6);
  CHECK(as_list(center(*d8c3)) == oracle::center(*d8c3));
}

TEST_CASE("conjugacy classes") {
  auto s3 = oracle::s3();
  const auto& cc = s3->classes();
  std::vector<std::size_t> sizes;
  for (const auto& c : cc.classes) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  auto d8 = oracle::d8();
  sizes.clear();
  for (const auto& c : d8->classes().classes) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2});
  for (auto g : {s3, d8, oracle::a4(), oracle::a5(), oracle::q8()}) {
    auto brute = oracle::classes(*g);
    CHECK(brute.size() == g->classes().size());
    for (std::size_t c = 0; c < g->classes().size(); ++c) {
      const auto& cls = g->classes().classes[c];
      CHECK(cls.size() * centralizer(*g, g->classes().representatives[c]).order() == g->order());
      CHECK(std::find(brute.begin(), brute.end(), cls) != brute.end());
    }
  }
  auto c5 = oracle::cyclic(5);
  CHECK(c5->classes().size() == 5);
}

TEST_CASE("closures and brackets on S3 and D8") {
  auto s3 = oracle::s3();
  Elem t1 = find_label(*s3, "(1 2)"), t2 = find_label(*s3, "(2 3)"), c = find_label(*s3, "(1 2 3)");
  CHECK(subgroup_closure(*s3, std::vector<Elem>{}).is_trivial());
  CHECK(subgroup_closure(*s3, std::vector<Elem>{t1, t2}).is_whole());
  Elem one_c[] = {c};
  Subgroup a3 = normal_closure(*s3, one_c);
  CHECK(a3.order() == 3);
  Elem one_t[] = {t1};
  CHECK(normal_closure(*s3, one_t).is_whole());
  CHECK(center(*s3).is_trivial());
  // gamma sets
  ElemSet gc = gamma_set(*s3, c);
  CHECK(gc.count() == 2);
  CHECK(gamma_set(*s3, t1).count() == 3);
  for (Elem x : {t1, c}) {
    std::vector<Elem> got;
    ElemSet s = gamma_set(*s3, x);
    for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) got.push_back(static_cast<Elem>(i));
    CHECK(got == oracle::commutator_set(*s3, x));
  }
  CHECK(bracket(c, whole_group(*s3)) == a3);
  CHECK(z_over(a3).is_whole());
  CHECK(z_over(trivial_subgroup(*s3)) == center(*s3));
  CHECK(z_over(derived_subgroup(*s3)).is_whole());
  CHECK_THROWS_AS(z_over(subgroup_closure(*s3, one_t)), Error);

  auto d8 = oracle::d8();
  Elem r = find_label(*d8, "(1 2 3 4)");
  CHECK(subgroup_closure(*d8, std::vector<Elem>{r}).order() == 4);
  Subgroup z = center(*d8);
  CHECK(z.order() == 2);
  Elem zz[] = {z.members()[1]};
  CHECK(normal_closure(*d8, zz) == z);
  CHECK(derived_subgroup(*d8) == z);
  CHECK(centralizer(*d8, 0).is_whole());
  CHECK(derived_subgroup(*oracle::cyclic(6)).is_trivial());
}

TEST_CASE("central series") {
  auto c4 = oracle::cyclic(4);
  auto ucs = upper_central_series(*c4);
  REQUIRE(ucs.terms.size() == 2);
  CHECK(ucs.terms[0].is_trivial());
  CHECK(ucs.terms[1].is_whole());
  auto s3 = upper_central_series(*oracle::s3());
  REQUIRE(s3.terms.size() == 2);
  CHECK(s3.terms[1].is_trivial());
  CHECK(s3.stabilized_at == 0);
  CHECK(!is_nilpotent(*oracle::s3()));
  auto d8 = upper_central_series(*oracle::d8());
  REQUIRE(d8.terms.size() == 3);
  CHECK(d8.terms[1].order() == 2);
  CHECK(d8.terms[2].is_whole());
  auto lcs = lower_central_series(*oracle::d8());
  REQUIRE(lcs.terms.size() == 3);
  CHECK(lcs.terms[1].order() == 2);
  CHECK(lcs.terms[2].is_trivial());
}

TEST_CASE("quotients") {
  auto s3 = oracle::s3();
  Subgroup a3 = derived_subgroup(*s3);
  QuotientMap q = quotient(*s3, a3);
  CHECK(q.target->order() == 2);
  QuotientMap id = quotient(*s3, trivial_subgroup(*s3));
  CHECK(id.target->order() == 6);
  auto d8 = oracle::d8();
  QuotientMap qz = quotient(*d8, center(*d8));
  CHECK(qz.target->order() == 4);
  CHECK(qz.target->is_abelian());
  CHECK(qz.target->exponent() == 2);
  for (const QuotientMap* m : {&q, &id, &qz})
    for (std::size_t x = 0; x < m->source->order(); ++x)
      for (std::size_t y = 0; y < m->source->order(); ++y)
        CHECK(m->project(m->source->mul(static_cast<Elem>(x), static_cast<Elem>(y))) ==
              m->target->mul(m->project(static_cast<Elem>(x)), m->project(static_cast<Elem>(y))));
  CHECK(qz.preimage(trivial_subgroup(*qz.target)) == center(*d8));
  Elem t[] = {oracle::s3()->generators()[1]};
  CHECK_THROWS_AS(quotient(*s3, subgroup_closure(*s3, std::span<const Elem>(t))), Error);
}

TEST_CASE("normal subgroups agree with a brute-force subgroup scan") {
  CHECK(normal_subgroups(*oracle::cyclic(5)).size() == 2);
  CHECK(normal_subgroups(*oracle::s3()).size() == 3);
  CHECK(normal_subgroups(*oracle::d8()).size() == 6);
  std::vector<GroupPtr> groups{oracle::s3(), oracle::d8(), oracle::q8(), oracle::a4(), oracle::cyclic(12),
                               direct_product(oracle::s3(), oracle::cyclic(2)),
                               direct_product(oracle::d8(), oracle::cyclic(2)),
                               direct_product(oracle::q8(), oracle::cyclic(2)),
                               direct_product(oracle::cyclic(2), direct_product(oracle::cyclic(2), oracle::cyclic(2)))};
  for (const auto& g : groups) {
    auto ours = normal_subgroups(*g);
    auto brute = oracle::normal_subgroups(*g);
    REQUIRE(ours.size() == brute.size());
    for (const auto& n : ours) {
      CHECK(brute.count(as_list(n)) == 1);
      check_subgroup_axioms(n);
    }
    // Z_{N cap M} = Z_N cap Z_M
    for (const auto& n : ours)
      for (const auto& m : ours) CHECK(z_over(intersect(n, m)) == intersect(z_over(n), z_over(m)));
  }
}

TEST_CASE("lattice limit") {
  auto e = direct_product(oracle::cyclic(2), direct_product(oracle::cyclic(2), direct_product(oracle::cyclic(2), oracle::cyclic(2))));
  CHECK(normal_subgroups(*e).size() == 67);
  CHECK_THROWS_AS(normal_subgroups(*e, 40), Error);
}

TEST_CASE("quasi-simple detection") {
  CHECK(is_quasi_simple(*oracle::a5()));
  CHECK(!is_quasi_simple(*oracle::s3()));
  CHECK(!is_quasi_simple(*oracle::cyclic(7)));
  // SL(2,5) is quasi-simple
  auto sl25 = build_group(MatrixGenerators{5, 2, {{1, 1, 0, 1}, {0, 4, 1, 0}}});
  CHECK(sl25->order() == 120);
  CHECK(is_quasi_simple(*sl25));
}

TEST_CASE("sections and primes") {
  CHECK(prime_power_base(27) == 3u);
  CHECK(!prime_power_base(12));
  CHECK(!prime_power_base(1));
  CHECK(prime_divisors(60) == std::vector<unsigned>{2, 3, 5});
  auto d8 = oracle::d8();
  Subgroup whole = whole_group(*d8);
  CHECK(is_elementary_abelian_section(whole, center(*d8), 2));
  CHECK(!is_elementary_abelian_section(whole, trivial_subgroup(*d8), 2));
  CHECK(section_exponent(whole, trivial_subgroup(*d8)) == 4);
  CHECK(section_exponent(whole, center(*d8)) == 2);
}

TEST_CASE("isomorphism") {
  std::vector<GroupPtr> eight = {oracle::d8(), oracle::q8(), oracle::cyclic(8), direct_product(oracle::cyclic(2), oracle::cyclic(4)),
                                 heisenberg(2), wreath_cpcp(2), extraspecial(2, 1, ExtraspecialType::Minus),
                                 elementary_abelian(2, 3)};
  for (const auto& a : eight)
    for (const auto& b : eight) CHECK(are_isomorphic(*a, *b) == oracle::isomorphic_brute(*a, *b));
  CHECK(are_isomorphic(*direct_product(oracle::s3(), oracle::cyclic(2)), *dihedral(6)));
  CHECK(are_isomorphic(*direct_product(oracle::cyclic(2), oracle::cyclic(3)), *oracle::cyclic(6)));
  CHECK_FALSE(are_isomorphic(*direct_product(oracle::a4(), oracle::cyclic(2)), *sl2(3)));
  CHECK_FALSE(are_isomorphic(*extraspecial(3, 1, ExtraspecialType::Plus), *extraspecial(3, 1, ExtraspecialType::Minus)));
  CHECK(are_isomorphic(*heisenberg(3), *extraspecial(3, 1, ExtraspecialType::Plus)));
  CHECK_FALSE(are_isomorphic(*direct_product(oracle::d8(), oracle::cyclic(2)), *direct_product(oracle::q8(), oracle::cyclic(2))));
}

TEST_CASE("abelian invariants") {
  using V = std::vector<std::size_t>;
  CHECK(abelian_invariants(*symmetric(4)) == V{2});
  CHECK(abelian_invariants(*oracle::a5()).empty());
  CHECK(abelian_invariants(*oracle::d8()) == V{2, 2});
  CHECK(abelian_invariants(*abelian({12, 8})) == V{3, 4, 8});
  CHECK(abelian_invariants(*oracle::a4()) == V{3});
}
