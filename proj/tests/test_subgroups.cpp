#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "sublat/indexed.hpp"
#include "sublat/oracle.hpp"
#include "sublat/subgroups.hpp"

using namespace sublat;
using sublat::test::group;
using sublat::test::load;
using sublat::test::perm;

namespace
{

const SubgroupClass &class_containing(const PermGroup &g, const std::vector<SubgroupClass> &classes,
                                      const PermGroup &u)
{
  const auto &index = g.element_index();
  ElementSet target = indexed::elements_of(index, u);
  for (const auto &c : classes)
    for (const auto &m : class_members(index, c))
      if (m == target)
        return c;
  throw std::logic_error("subgroup not found among classes");
}

std::multiset<std::uint64_t> orders_of(const std::vector<BitSet> &family)
{
  std::multiset<std::uint64_t> out;
  for (const auto &s : family)
    out.insert(s.count());
  return out;
}

} // namespace

TEST_CASE("zuppo counts")
{
  auto s3 = load("s3");
  auto z = compute_zuppos(s3);
  REQUIRE(z.size() == 4);
  CHECK(std::count_if(z.begin(), z.end(), [](const Zuppo &x) { return x.order == 2; }) == 3);
  CHECK(z.back().order == 3);
  CHECK(compute_zuppos(load("c6")).size() == 2);
  CHECK(compute_zuppos(load("trivial")).empty());
}

TEST_CASE("zuppos are sorted, deduplicated and use minimal generators")
{
  for (const auto &name : test::corpus()) {
    auto g = load(name);
    const auto &index = g.element_index();
    auto z = compute_zuppos(g);
    std::set<BitSet> distinct;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto &x = z[i];
      CHECK(x.order > 1);
      CHECK(x.order == p_part(x.order, x.prime));
      CHECK(x.elements.count() == x.order);
      CHECK(index.order(x.generator_id) == x.order);
      x.elements.for_each([&](indexed::Id e) {
        if (index.order(e) == x.order)
          CHECK(e >= x.generator_id);
      });
      distinct.insert(x.elements);
      if (i > 0) {
        bool sorted = z[i - 1].order < x.order ||
                      (z[i - 1].order == x.order && z[i - 1].generator_id < x.generator_id);
        CHECK(sorted);
      }
    }
    CHECK(distinct.size() == z.size());
  }
}

TEST_CASE("signature examples")
{
  auto s3 = load("s3");
  auto z = compute_zuppos(s3);
  CHECK(signature(s3, PermGroup::trivial(3), z).bits.none());
  CHECK(signature(s3, s3, z).bits.count() == z.size());
  auto c3 = signature(s3, group(3, {"(1,2,3)"}), z);
  CHECK(c3.bits.count() == 1);
  CHECK(c3.bits.test(3));
  CHECK_THROWS_AS(signature(s3, group(4, {"(1,2,3,4)"}), z), InputError);

  auto t12 = signature(s3, group(3, {"(1,2)"}), z);
  CHECK(conjugate_signature(s3, t12, Permutation(3), z) == t12);
  CHECK(conjugate_signature(s3, t12, perm(3, "(1,3)"), z) == signature(s3, group(3, {"(2,3)"}), z));
  auto all = signature(s3, s3, z);
  CHECK(conjugate_signature(s3, all, perm(3, "(1,2,3)"), z) == all);
  auto a4 = load("a4");
  auto za4 = compute_zuppos(a4);
  CHECK_THROWS_AS(conjugate_signature(a4, signature(a4, a4, za4), perm(4, "(1,2)"), za4), InputError);
}

TEST_CASE("perfect subgroups")
{
  auto s4 = find_perfect_subgroups(load("s4"));
  REQUIRE(s4.size() == 1);
  CHECK(s4[0].order() == 1);

  auto a5 = find_perfect_subgroups(load("a5"));
  REQUIRE(a5.size() == 2);
  CHECK(a5[0].order() == 1);
  CHECK(a5[1].order() == 60);

  auto s5 = find_perfect_subgroups(load("s5"));
  REQUIRE(s5.size() == 2);
  CHECK(s5[1].order() == 60);
}

TEST_CASE("cyclic extension step examples")
{
  auto c5 = load("c5");
  auto c5_classes = lattice_cyclic_extension(c5);
  auto ext = cyclic_extension_step(c5, c5_classes.front(), {});
  REQUIRE(ext.size() == 1);
  CHECK(ext[0].order() == 5);

  auto s4 = load("s4");
  auto classes = lattice_cyclic_extension(s4);
  auto v4 = group(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto from_v4 = cyclic_extension_step(s4, class_containing(s4, classes, v4), {});
  std::set<std::uint64_t> orders;
  for (const auto &u : from_v4) {
    orders.insert(u.order());
    CHECK(is_subgroup(u, v4));
  }
  CHECK(orders.contains(8));
  CHECK(orders.contains(12));

  auto s3 = load("s3");
  auto s3_classes = lattice_cyclic_extension(s3);
  auto from_c3 = cyclic_extension_step(s3, class_containing(s3, s3_classes, group(3, {"(1,2,3)"})), {});
  REQUIRE(from_c3.size() == 1);
  CHECK(same_group(from_c3[0], s3));
}

TEST_CASE("extension step multiplies the order by the zuppo prime")
{
  for (const auto &name : {"s4", "d12", "sl23", "a5", "s3s3"}) {
    auto g = load(name);
    for (const auto &c : lattice_cyclic_extension(g))
      for (const auto &v : cyclic_extension_step(g, c, {})) {
        auto q = v.order() / c.order;
        CHECK(v.order() % c.order == 0);
        CHECK(is_prime(q));
        CHECK(is_subgroup(v, c.representative));
      }
  }
}

TEST_CASE("lattice counts")
{
  auto s4 = load("s4");
  auto all = lattice_cyclic_extension(s4);
  CHECK(all.size() == 11);
  CHECK(total_subgroups(all) == 30);

  LatticeFilter small;
  small.max_order = 4;
  auto low = lattice_cyclic_extension(s4, small);
  CHECK(low.size() == 7);
  CHECK(total_subgroups(low) == 21);

  auto a5 = lattice_cyclic_extension(load("a5"));
  CHECK(a5.size() == 9);
  CHECK(total_subgroups(a5) == 59);
}

TEST_CASE("frozen class and subgroup counts")
{
  // Independently computed by brute-force join closure.
  const std::map<std::string, std::pair<std::size_t, std::uint64_t>> expected = {
      {"trivial", {1, 1}}, {"c2", {2, 2}},      {"c6", {4, 4}},     {"s3", {4, 6}},
      {"d8", {8, 10}},     {"q8", {6, 6}},      {"c2c2c2", {16, 16}}, {"a4", {5, 10}},
      {"d12", {10, 16}},   {"c3c4", {6, 8}},    {"sl23", {7, 15}},  {"s4", {11, 30}},
      {"f20", {6, 14}},    {"v4", {5, 5}},      {"c4", {3, 3}},     {"a5", {9, 59}},
      {"s3s3", {22, 60}},  {"s5", {19, 156}}};
  for (const auto &[name, counts] : expected) {
    CAPTURE(name);
    auto classes = lattice_cyclic_extension(load(name));
    CHECK(classes.size() == counts.first);
    CHECK(total_subgroups(classes) == counts.second);
  }
}

TEST_CASE("class records are consistent")
{
  for (const auto &name : test::corpus()) {
    CAPTURE(name);
    auto g = load(name);
    const auto &index = g.element_index();
    auto classes = lattice_cyclic_extension(g);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto &c = classes[i];
      CHECK(c.order == c.representative.order());
      CHECK(c.length == c.transversal.size());
      CHECK(c.length * c.normalizer.order() == g.order());
      CHECK(same_group(c.normalizer, normalizer(g, c.representative)));
      auto members = class_members(index, c);
      std::set<BitSet> distinct(members.begin(), members.end());
      CHECK(distinct.size() == members.size());
      CHECK(members.front() == c.representative_elements);
      if (i > 0) {
        const auto &prev = classes[i - 1];
        bool ordered = prev.order < c.order ||
                       (prev.order == c.order && lex_compare(prev.signature.bits, c.signature.bits) < 0);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("oracle examples")
{
  CHECK(oracle_all_subgroups(load("c6")).size() == 4);
  CHECK(oracle_all_subgroups(load("s3")).size() == 6);
  auto q8 = load("q8");
  auto subs = oracle_all_subgroups(q8);
  CHECK(subs.size() == 6);
  for (const auto &u : subs)
    CHECK(is_normal(q8, u));
  CHECK_THROWS_AS(oracle_all_subgroups(load("psl2_13")), CapacityError);
  CHECK_THROWS_AS(oracle_all_subgroups(load("s4"), 23), CapacityError);
  CHECK(oracle_all_subgroups(load("s4"), 24).size() == 30);
}

TEST_CASE("completeness and class equation against the oracle")
{
  for (const auto &name : test::corpus()) {
    CAPTURE(name);
    auto g = load(name);
    auto lat = oracle_lattice(g);
    auto classes = lattice_cyclic_extension(g);
    auto family = test::expanded_family(g, classes, lat);
    CHECK(family == lat.subgroups);
    CHECK(orders_of(family) == orders_of(lat.subgroups));
    CHECK(total_subgroups(classes) == lat.subgroups.size());
    CHECK(classes.size() == oracle_class_count(lat));
  }
}

TEST_CASE("signature soundness and conjugation compatibility")
{
  test::Rng rng(7);
  for (const auto &name : test::corpus()) {
    CAPTURE(name);
    auto g = load(name);
    const auto &index = g.element_index();
    ZuppoTable zt(index);
    auto lat = oracle_lattice(g);
    std::set<BitSet> sigs;
    std::vector<ElementSet> engine_sets;
    for (const auto &s : lat.subgroups) {
      ElementSet e(index.size());
      s.for_each([&](std::uint32_t i) { e.set(index.rank(lat.elements[i])); });
      engine_sets.push_back(e);
      sigs.insert(zt.signature(e).bits);
      CHECK(zt.elements(zt.signature(e)) == e);
    }
    CHECK(sigs.size() == lat.subgroups.size());
    for (int trial = 0; trial < 20; ++trial) {
      const auto &u = engine_sets[rng.below(engine_sets.size())];
      auto x = static_cast<indexed::Id>(rng.below(index.size()));
      CHECK(zt.conjugate(zt.signature(u), x) == zt.signature(indexed::conjugate(index, u, x)));
    }
  }
}

TEST_CASE("max-order filter matches the filtered oracle")
{
  for (const auto &name : {"s4", "d12", "sl23", "a5"}) {
    auto g = load(name);
    auto lat = oracle_lattice(g);
    for (std::uint64_t m : {1, 2, 4, 6, 12}) {
      CAPTURE(name);
      CAPTURE(m);
      LatticeFilter f;
      f.max_order = m;
      auto family = test::expanded_family(g, lattice_cyclic_extension(g, f), lat);
      std::vector<BitSet> expected;
      for (const auto &s : lat.subgroups)
        if (s.count() <= m)
          expected.push_back(s);
      CHECK(family == expected);
    }
  }
}

TEST_CASE("predicate filters match the oracle")
{
  auto g = load("s4");
  const auto &index = g.element_index();
  auto lat = oracle_lattice(g);
  for (const std::string pred : {"abelian", "cyclic", "nilpotent", "solvable", "p-group:2"}) {
    CAPTURE(pred);
    LatticeFilter f;
    f.predicate_id = pred;
    auto family = test::expanded_family(g, lattice_cyclic_extension(g, f), lat);
    std::vector<BitSet> expected;
    std::size_t abelian = 0;
    for (const auto &s : lat.subgroups) {
      ElementSet e(index.size());
      s.for_each([&](std::uint32_t i) { e.set(index.rank(lat.elements[i])); });
      if (f.admits(index, e))
        expected.push_back(s);
      if (pred == "abelian") {
        bool comm = true;
        e.for_each([&](indexed::Id a) {
          e.for_each([&](indexed::Id b) {
            if (index.mul(a, b) != index.mul(b, a))
              comm = false;
          });
        });
        abelian += comm;
      }
    }
    CHECK(family == expected);
    if (pred == "abelian")
      CHECK(expected.size() == abelian);
  }
  LatticeFilter d;
  d.order_divides = 6;
  for (const auto &s : test::expanded_family(g, lattice_cyclic_extension(g, d), lat))
    CHECK(6 % s.count() == 0);
}

TEST_CASE("filter validation")
{
  auto s4 = load("s4");
  for (const std::string bad : {"nonabelian", "perfect", "non-solvable", "transitive", "bogus",
                                "p-group:4", "p-group:"}) {
    LatticeFilter f;
    f.predicate_id = bad;
    CHECK_THROWS_AS(lattice_cyclic_extension(s4, f), InputError);
  }
  LatticeFilter zero;
  zero.max_order = 0;
  CHECK_THROWS_AS(zero.validate(), InputError);
}

TEST_CASE("conjugacy of subgroups")
{
  auto s4 = load("s4");
  auto v4 = group(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto x = is_conjugate_subgroups(s4, v4, v4);
  REQUIRE(x.has_value());
  auto a = group(4, {"(1,2)"});
  auto b = group(4, {"(3,4)"});
  auto y = is_conjugate_subgroups(s4, a, b);
  REQUIRE(y.has_value());
  CHECK(same_group(PermGroup(4, {a.generators()[0] ^ *y}), b));
  CHECK_FALSE(is_conjugate_subgroups(s4, v4, group(4, {"(1,2)", "(3,4)"})).has_value());
  CHECK_THROWS_AS(is_conjugate_subgroups(load("a4"), a, a), InputError);
}

TEST_CASE("sylow subgroups")
{
  auto s4 = load("s4");
  CHECK(sylow_subgroup(s4, 3).order() == 3);
  auto p2 = sylow_subgroup(s4, 2);
  CHECK(p2.order() == 8);
  CHECK_FALSE(is_normal(s4, p2));
  CHECK(sylow_subgroup(load("c5"), 3).order() == 1);
  CHECK_THROWS_AS(sylow_subgroup(s4, 4), InputError);
  for (const auto &name : test::corpus()) {
    auto g = load(name);
    for (std::uint32_t p : {2, 3, 5}) {
      CAPTURE(name);
      CAPTURE(p);
      auto s = sylow_subgroup(g, p);
      CHECK(s.order() == p_part(g.order(), p));
      CHECK(is_subgroup(g, s));
    }
  }
}
