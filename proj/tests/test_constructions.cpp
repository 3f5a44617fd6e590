#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "nestkit/chartab.hpp"
#include "nestkit/constructions.hpp"
#include "nestkit/error.hpp"
#include "nestkit/invariants.hpp"
#include "nestkit/quotient.hpp"
#include "oracles.hpp"

using namespace nestkit;

namespace {

std::size_t count_order(const Group& g, unsigned k) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < g.order(); ++i) c += g.elem_order(static_cast<Elem>(i)) == k;
  return c;
}

std::vector<std::size_t> class_sizes(const Group& g) {
  std::vector<std::size_t> out;
  for (const auto& c : g.classes().classes) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Internal;
}

// UL/L < U(G/L)
bool qm_image_lt(const QuotientMap& q, const Subgroup& u) { return q.image(u) < u_subgroup(*q.target); }

}  // namespace

TEST_CASE("small families") {
  CHECK(cyclic(7)->order() == 7);
  CHECK(cyclic(1)->order() == 1);
  CHECK(elementary_abelian(2, 3)->order() == 8);
  CHECK(elementary_abelian(2, 3)->exponent() == 2);
  auto ab = abelian({2, 4});
  CHECK(ab->order() == 8);
  CHECK(ab->exponent() == 4);
  CHECK(ab->is_abelian());

  auto d8 = dihedral(4);
  CHECK(d8->order() == 8);
  CHECK(count_order(*d8, 2) == 5);
  CHECK(center(*d8).order() == 2);
  CHECK(class_sizes(*d8) == class_sizes(*oracle::d8()));

  auto q8 = quaternion(8);
  CHECK(q8->order() == 8);
  CHECK(count_order(*q8, 2) == 1);
  CHECK(class_sizes(*q8) == class_sizes(*oracle::q8()));
  auto q16 = quaternion(16);
  CHECK(count_order(*q16, 2) == 1);
  CHECK(q16->exponent() == 8);

  auto dic3 = dicyclic(3);
  CHECK(dic3->order() == 12);
  CHECK(count_order(*dic3, 2) == 1);

  auto sd16 = semidihedral(16);
  CHECK(sd16->order() == 16);
  CHECK(count_order(*sd16, 2) == 5);
  CHECK(center(*sd16).order() == 2);

  CHECK(symmetric(4)->order() == 24);
  CHECK(symmetric(2)->order() == 2);
  CHECK(alternating(4)->order() == 12);
  auto a5 = alternating(5);
  CHECK(a5->order() == 60);
  CHECK(class_sizes(*a5) == std::vector<std::size_t>{1, 12, 12, 15, 20});
  CHECK(alternating(6)->order() == 360);
}

TEST_CASE("extraspecial groups") {
  auto q8 = extraspecial(2, 1, ExtraspecialType::Minus);
  CHECK(q8->order() == 8);
  CHECK(count_order(*q8, 2) == 1);
  auto d8 = extraspecial(2, 1, ExtraspecialType::Plus);
  CHECK(count_order(*d8, 2) == 5);
  for (auto type : {ExtraspecialType::Plus, ExtraspecialType::Minus}) {
    auto e32 = extraspecial(2, 2, type);
    CHECK(e32->order() == 32);
    CHECK(is_extraspecial(*e32));
    auto e27 = extraspecial(3, 1, type);
    CHECK(e27->order() == 27);
    CHECK(is_extraspecial(*e27));
    CHECK(e27->exponent() == (type == ExtraspecialType::Plus ? 3u : 9u));
  }
  // D8 o D8 has 19 involutions, Q8 o D8 has 11.
  CHECK(count_order(*extraspecial(2, 2, ExtraspecialType::Plus), 2) == 19);
  CHECK(count_order(*extraspecial(2, 2, ExtraspecialType::Minus), 2) == 11);
  auto e243 = extraspecial(3, 2, ExtraspecialType::Minus);
  CHECK(e243->order() == 243);
  CHECK(is_extraspecial(*e243));
  CHECK(e243->exponent() == 9);
}

TEST_CASE("heisenberg groups") {
  auto h2 = heisenberg(2);
  CHECK(h2->order() == 8);
  CHECK(h2->exponent() == 4);
  CHECK(center(*h2).order() == 2);
  CHECK(count_order(*h2, 2) == 5);

  auto h3 = heisenberg(3);
  CHECK(h3->order() == 27);
  CHECK(h3->exponent() == 3);
  auto t3 = character_table(*h3);
  Subgroup u = u_subgroup(*h3, &t3);
  CHECK(u == center(*h3));
  CHECK(u == derived_subgroup(*h3));
  CHECK(v_rel(derived_subgroup(*h3)) == u);

  for (unsigned q : {4u, 5u, 7u, 8u, 9u}) {
    CAPTURE(q);
    auto h = heisenberg(q);
    CHECK(h->order() == q * q * q);
    CHECK(center(*h).order() == q);
    CHECK(derived_subgroup(*h).order() == q);
    CHECK(is_semi_extraspecial(*h));
    CHECK(u_subgroup(*h) == center(*h));
    CHECK(v_rel(derived_subgroup(*h)) == center(*h));
  }
  CHECK(kind_of([] { heisenberg(6); }) == ErrorKind::UnsupportedField);
  CHECK(kind_of([] { heisenberg(16); }) == ErrorKind::UnsupportedField);
  CHECK(kind_of([] { heisenberg(11, 1000); }) == ErrorKind::OrderCapExceeded);
}

TEST_CASE("wreath products and linear groups") {
  auto w2 = wreath_cpcp(2);
  CHECK(w2->order() == 8);
  CHECK(class_sizes(*w2) == class_sizes(*oracle::d8()));
  auto w3 = wreath_cpcp(3);
  CHECK(w3->order() == 81);
  CHECK(center(*w3).order() == 3);
  CHECK(k_subgroup(*w3) == center(*w3));
  CHECK(u_subgroup(*w3).is_trivial());
  CHECK(kind_of([] { wreath_cpcp(5); }) == ErrorKind::OrderCapExceeded);

  CHECK(sl2(3)->order() == 24);
  CHECK(sl2(5)->order() == 120);
  CHECK(gl2(3)->order() == 48);
  CHECK(gl2(5)->order() == 480);
  auto p7 = psl2(7);
  CHECK(p7->order() == 168);
  CHECK(minimal_noncentral_normals(*p7).front().is_whole());
  CHECK(psl2(5)->order() == 60);
}

TEST_CASE("standard_family") {
  CHECK(standard_family("dihedral", {"4"})->order() == 8);
  CHECK(standard_family("alternating", {"5"})->order() == 60);
  auto q = standard_family("extraspecial", {"2", "1", "minus"});
  CHECK(count_order(*q, 2) == 1);
  CHECK(standard_family("abelian", {"2", "2", "3"})->order() == 12);
  CHECK(kind_of([] { standard_family("klein", {}); }) == ErrorKind::UnknownFamily);
  CHECK(kind_of([] { standard_family("dihedral", {"x"}); }) == ErrorKind::UnknownFamily);
  CHECK(kind_of([] { standard_family("dihedral", {}); }) == ErrorKind::UnknownFamily);
  CHECK(kind_of([] { standard_family("extraspecial", {"2", "1", "odd"}); }) == ErrorKind::UnknownFamily);
}

TEST_CASE("central quotient construction") {
  Section8Group s = section8_heisenberg(4, 1, false);
  const Group& g = *s.group;
  CHECK(g.order() == 2048);
  CHECK(s.p == 2);
  CHECK(s.expected_u_order == 2);
  Subgroup z = center(g);
  CHECK(z.order() == 8);
  Subgroup u = u_subgroup(g);
  CHECK(u.order() == 2);
  CHECK(u < z);
  CHECK(std::vector<Elem>(z.members().begin(), z.members().end()) == s.central_members);
  CHECK(std::vector<Elem>(u.members().begin(), u.members().end()) == s.m_members);

  Section8Group e = section8_heisenberg(4, 1, true);
  const Group& ge = *e.group;
  Subgroup ue = u_subgroup(ge);
  CHECK(ge.order() == 2048);
  CHECK(ue.order() == 2);
  CHECK(z_over(ue) == center(ge));
  Subgroup l = subgroup_closure(ge, e.l_members);
  CHECK(l.order() == 2);
  CHECK(!(l <= subgroup_closure(ge, e.m_members)));
  QuotientMap ql = quotient(ge, l);
  CHECK(qm_image_lt(ql, ue));

  Section8Group d = section8_heisenberg(4, 0, false);
  CHECK(d.group->order() == 4096);
  CHECK(u_subgroup(*d.group).is_trivial());

  auto h = heisenberg(4);
  Subgroup uh = u_subgroup(*h);
  Elem x = uh.members()[1];
  Elem nc = 0;
  for (std::size_t i = 0; i < h->order(); ++i)
    if (!uh.contains(static_cast<Elem>(i))) nc = static_cast<Elem>(i);
  CHECK(kind_of([&] { section8_quotient(h, h, {nc}, {x}); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { section8_quotient(h, h, {x}, {x, x}); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([&] { section8_quotient(h, h, {x}, {x}, std::make_pair(x, x)); }) == ErrorKind::HypothesisViolated);
  // p^l must stay below |Z(H)|.
  CHECK(kind_of([] { section8_heisenberg(4, 2, false); }) == ErrorKind::HypothesisViolated);
  auto h3 = heisenberg(3);
  CHECK(kind_of([&] { section8_quotient(h, h3, {x}, {x}); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("group file parser") {
  auto s3 = parse_group_text("# symmetric group\nperm 3\n(1 2 3)\n(1 2)\n");
  CHECK(s3->order() == 6);
  CHECK(!s3->source().file_hash.empty());
  CHECK(s3->source().kind == "file");
  auto s3b = parse_group_text("perm 3\n(1,2,3), (1,2)  # same group\n");
  CHECK(s3b->order() == 6);

  auto h = parse_group_text("matmod 3 3\n1 1 0 0 1 0 0 0 1\n1 0 0 0 1 1 0 0 1\n");
  CHECK(h->order() == 27);
  CHECK(h->exponent() == 3);

  auto c3 = parse_group_text("table 3\n0 1 2\n1 2 0\n2 0 1\n");
  CHECK(c3->order() == 3);
  CHECK(c3->is_abelian());

  auto position = [](std::string_view text) {
    try {
      parse_group_text(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    FAIL("no parse error");
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  CHECK(position("perm 3\n(1 2\n") == std::make_pair(std::size_t{2}, std::size_t{1}));
  CHECK(position("perm 3\n(1 4)\n") == std::make_pair(std::size_t{2}, std::size_t{4}));
  CHECK(position("perm 3\n(1 2 1)\n") == std::make_pair(std::size_t{2}, std::size_t{6}));
  CHECK(position("\n\nbogus 3\n") == std::make_pair(std::size_t{3}, std::size_t{1}));
  CHECK(position("matmod 3 2\n1 1 0\n").first == 2);
  CHECK(position("matmod 3 2\n1 5 0 1\n") == std::make_pair(std::size_t{2}, std::size_t{3}));
  CHECK(position("table 2\n0 1\n").first == 2);
  CHECK(position("").first >= 1);
  CHECK(kind_of([] { parse_group_text("table 2\n0 1\n0 1\n"); }) == ErrorKind::InvalidTable);
  CHECK(kind_of([] { parse_group_text("perm 9\n(1 2 3 4 5 6 7 8 9)\n(1 2)\n", 1000); }) ==
        ErrorKind::OrderCapExceeded);

  auto path = std::filesystem::temp_directory_path() / "nestkit_parse_test.txt";
  {
    std::ofstream out(path);
    out << "perm 4\n(1 2 3 4)\n(1 3)\n";
  }
  auto d8 = parse_group_file(path);
  CHECK(d8->order() == 8);
  CHECK(d8->source().file_hash == sha1_hex("perm 4\n(1 2 3 4)\n(1 3)\n"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(parse_group_file(path), ParseError);
}

TEST_CASE("sha1") {
  CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
}
