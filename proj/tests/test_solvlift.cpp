#include <set>

#include "doctest.h"
#include "support.hpp"
#include "sublat/indexed.hpp"
#include "sublat/solvlift.hpp"

using namespace sublat;
using sublat::test::group;
using sublat::test::load;
using sublat::test::perm;

namespace
{

std::vector<std::uint64_t> factor_orders(const ElementaryAbelianSeries &s)
{
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + 1 < s.terms.size(); ++i)
    out.push_back(s.terms[i].order() / s.terms[i + 1].order());
  return out;
}

const std::vector<std::string> solvable_corpus = {"c6",  "s3",  "d8",   "q8", "c2c2c2", "a4",
                                                  "d12", "c3c4", "sl23", "s4", "f20",    "s3s3"};

} // namespace

TEST_CASE("series examples")
{
  auto c4 = elementary_abelian_series(load("c4"));
  CHECK(factor_orders(c4) == std::vector<std::uint64_t>{2, 2});

  auto s4 = elementary_abelian_series(load("s4"));
  CHECK(factor_orders(s4) == std::vector<std::uint64_t>{2, 3, 4});
  CHECK(s4.ranks == std::vector<std::size_t>{1, 1, 2});
  CHECK(s4.terms[1].order() == 12);

  auto sl = elementary_abelian_series(load("sl23"));
  CHECK(factor_orders(sl) == std::vector<std::uint64_t>{3, 4, 2});
  CHECK(sl.primes == std::vector<std::uint32_t>{3, 2, 2});
  CHECK(sl.ranks == std::vector<std::size_t>{1, 2, 1});

  CHECK(elementary_abelian_series(load("trivial")).terms.size() == 1);
  CHECK_THROWS_AS(elementary_abelian_series(load("a5")), InputError);
  CHECK_THROWS_AS(elementary_abelian_series(load("s5")), InputError);
}

TEST_CASE("series terms are normal with elementary abelian factors")
{
  for (const auto &name : solvable_corpus) {
    CAPTURE(name);
    auto g = load(name);
    auto s = elementary_abelian_series(g);
    CHECK(s.terms.front().order() == g.order());
    CHECK(s.terms.back().order() == 1);
    for (std::size_t i = 0; i + 1 < s.terms.size(); ++i) {
      CHECK(is_normal(g, s.terms[i]));
      CHECK(is_subgroup(s.terms[i], s.terms[i + 1]));
      // Check the factor through its module: a trivial action of the
      // factor on itself means abelian, and rank matches the order.
      auto mod = layer_module(s.terms[i], s.terms[i], s.terms[i + 1]);
      CHECK(mod.prime == s.primes[i]);
      CHECK(mod.rank == s.ranks[i]);
      std::uint64_t q = 1;
      for (std::size_t k = 0; k < mod.rank; ++k)
        q *= mod.prime;
      CHECK(q == s.terms[i].order() / s.terms[i + 1].order());
      for (const auto &x : s.terms[i].generators())
        CHECK(s.terms[i + 1].contains(x.pow(s.primes[i])));
    }
  }
}

TEST_CASE("layer module examples")
{
  auto s4 = load("s4");
  auto v4 = group(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto one = PermGroup::trivial(4);
  auto mod = layer_module(s4, v4, one);
  CHECK(mod.prime == 2);
  CHECK(mod.rank == 2);
  // The matrices generate GL(2,2), of order 6.
  std::set<GFMatrix> span{GFMatrix{{1, 0}, {0, 1}}};
  std::vector<GFMatrix> queue(span.begin(), span.end());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto &m : mod.action) {
      auto y = gf_multiply(queue[k], m, 2);
      if (span.insert(y).second)
        queue.push_back(y);
    }
  CHECK(span.size() == 6);
  CHECK(submodules(mod).size() == 2);

  // V_4 acting on itself is trivial.
  auto triv = layer_module(v4, v4, one);
  for (const auto &m : triv.action)
    CHECK(m == GFMatrix{{1, 0}, {0, 1}});
  CHECK(submodules(triv).size() == 5);

  auto d8 = group(4, {"(1,2,3,4)", "(1,3)"});
  auto dmod = layer_module(d8, v4, one);
  auto subs = submodules(dmod);
  CHECK(subs.size() == 3);
  CHECK(subs[1].dimension() == 1);

  CHECK_THROWS_AS(layer_module(s4, group(4, {"(1,2)"}), one), InputError);
  CHECK_THROWS_AS(layer_module(s4, s4, one), InputError);
  CHECK(submodules(layer_module(s4, v4, v4)).size() == 1);
}

TEST_CASE("representation property")
{
  test::Rng rng(11);
  for (const auto &name : {"s4", "sl23", "c2c2c2", "s3s3"}) {
    auto g = load(name);
    auto s = elementary_abelian_series(g);
    const auto &index = g.element_index();
    for (std::size_t i = 0; i + 1 < s.terms.size(); ++i) {
      auto mod = layer_module(g, s.terms[i], s.terms[i + 1]);
      for (std::size_t x = 0; x < mod.acting.size(); ++x)
        for (std::size_t y = 0; y < mod.acting.size(); ++y) {
          // coordinates of b^(xy) equal coords(b) * M(x) * M(y)
          auto prod = gf_multiply(mod.action[x], mod.action[y], mod.prime);
          for (std::size_t k = 0; k < mod.rank; ++k) {
            auto image = mod.basis[k] ^ (mod.acting[x] * mod.acting[y]);
            CHECK(layer_coordinates(g, s.terms[i], s.terms[i + 1], mod, image) == prod[k]);
          }
        }
      // random elements of N: coordinates are additive
      for (int t = 0; t < 5; ++t) {
        auto u = index.unrank(rng.below(index.size()));
        auto v = index.unrank(rng.below(index.size()));
        if (!s.terms[i].contains(u) || !s.terms[i].contains(v))
          continue;
        auto cu = layer_coordinates(g, s.terms[i], s.terms[i + 1], mod, u);
        auto cv = layer_coordinates(g, s.terms[i], s.terms[i + 1], mod, v);
        auto cuv = layer_coordinates(g, s.terms[i], s.terms[i + 1], mod, u * v);
        for (std::size_t k = 0; k < mod.rank; ++k)
          CHECK(cuv[k] == (cu[k] + cv[k]) % mod.prime);
      }
    }
  }
}

TEST_CASE("submodule counts and closure")
{
  LayerModule zero;
  zero.prime = 2;
  CHECK(submodules(zero).size() == 1);

  // Trivial action: all subspaces, counted by Gaussian binomials.
  for (auto [p, r, count] : std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>>{
           {2, 2, 5}, {3, 2, 6}, {2, 3, 16}, {5, 1, 2}}) {
    LayerModule m;
    m.prime = p;
    m.rank = r;
    GFMatrix id(r, GFVector(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      id[i][i] = 1;
    m.action = {id};
    CHECK(submodules(m).size() == count);
  }

  for (const auto &name : {"s4", "d8", "sl23"}) {
    auto g = load(name);
    auto series = elementary_abelian_series(g);
    for (std::size_t i = 0; i + 1 < series.terms.size(); ++i) {
      auto mod = layer_module(g, series.terms[i], series.terms[i + 1]);
      for (const auto &sub : submodules(mod))
        for (const auto &row : sub.rows)
          for (const auto &mat : mod.action) {
            GFVector image(mod.rank, 0);
            for (std::size_t a = 0; a < mod.rank; ++a)
              for (std::size_t b = 0; b < mod.rank; ++b)
                image[b] = (image[b] + row[a] * mat[a][b]) % mod.prime;
            auto rows = sub.rows;
            rows.push_back(image);
            CHECK(row_reduce(rows, mod.prime) == sub);
          }
    }
  }
}

TEST_CASE("complement examples")
{
  auto s4 = load("s4");
  auto v4 = group(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto one = PermGroup::trivial(4);

  auto same = complements_in_layer(s4, v4, v4);
  REQUIRE(same.size() == 1);
  CHECK(same_group(same[0], s4));

  auto c = complements_in_layer(s4, v4, one);
  REQUIRE(c.size() == 1);
  CHECK(c[0].order() == 6);
  CHECK(c[0].chain().levels().size() == 2);  // a point stabilizer, so S_3
  std::size_t fixed = 0;
  for (Point x = 1; x <= 4; ++x) {
    bool all = true;
    for (const auto &g : c[0].generators())
      all = all && g(x) == x;
    fixed += all;
  }
  CHECK(fixed == 1);

  auto v = load("v4");
  auto first = group(4, {"(1,2)(3,4)"});
  CHECK(complements_in_layer(v, first, one).size() == 2);

  CHECK_THROWS_AS(complements_in_layer(s4, v4, first), InputError);
}

TEST_CASE("complement contract")
{
  for (const auto &name : {"s4", "d8", "sl23", "c2c2c2", "d12"}) {
    CAPTURE(name);
    auto g = load(name);
    const auto &index = g.element_index();
    auto series = elementary_abelian_series(g);
    for (std::size_t i = 0; i + 1 < series.terms.size(); ++i) {
      const auto &n = series.terms[i];
      const auto &m = series.terms[i + 1];
      auto mod = layer_module(g, n, m);
      auto ns = indexed::elements_of(index, n);
      for (const auto &sub : submodules(mod)) {
        std::vector<Permutation> gens = m.generators();
        for (const auto &row : sub.rows) {
          Permutation x(g.degree());
          for (std::size_t k = 0; k < mod.rank; ++k)
            x = x * mod.basis[k].pow(row[k]);
          gens.push_back(x);
        }
        PermGroup b(g.degree(), gens);
        auto bs = indexed::elements_of(index, b);
        auto comps = complements_in_layer(g, n, b);
        for (std::size_t x = 0; x < comps.size(); ++x) {
          auto s = indexed::elements_of(index, comps[x]);
          auto meet = s;
          meet &= ns;
          CHECK(meet == bs);
          CHECK(s.count() * n.order() / b.order() == g.order());
          for (std::size_t y = 0; y < x; ++y) {
            auto other = indexed::elements_of(index, comps[y]);
            auto ngens = indexed::ranks(index, n.generators());
            CHECK_FALSE(indexed::conjugator(index, s, other, ngens).has_value());
          }
        }
      }
    }
  }
}

TEST_CASE("solvable lifting examples")
{
  auto s4 = subgroups_solvable(load("s4"));
  CHECK(s4.size() == 11);
  CHECK(total_subgroups(s4) == 30);
  auto sl = subgroups_solvable(load("sl23"));
  CHECK(sl.size() == 7);
  CHECK(total_subgroups(sl) == 15);
  auto d8 = subgroups_solvable(load("d8"));
  CHECK(d8.size() == 8);
  CHECK(total_subgroups(d8) == 10);
  CHECK(subgroups_solvable(load("trivial")).size() == 1);
  CHECK_THROWS_AS(subgroups_solvable(load("a5")), InputError);
}

TEST_CASE("solvable lifting agrees with the cyclic extension")
{
  for (const auto &name : solvable_corpus) {
    CAPTURE(name);
    auto g = load(name);
    auto a = subgroups_solvable(g);
    auto b = lattice_cyclic_extension(g);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].order == b[i].order);
      CHECK(a[i].length == b[i].length);
      CHECK(a[i].representative_elements == b[i].representative_elements);
      CHECK(a[i].transversal_ids == b[i].transversal_ids);
    }
  }
}

TEST_CASE("solvable lifting respects filters")
{
  auto g = load("s4");
  for (std::uint64_t m : {1, 2, 3, 4, 8, 12}) {
    LatticeFilter f;
    f.max_order = m;
    auto a = subgroups_solvable(g, f);
    auto b = lattice_cyclic_extension(g, f);
    CHECK(a.size() == b.size());
    CHECK(total_subgroups(a) == total_subgroups(b));
  }
  for (const std::string pred : {"abelian", "cyclic", "nilpotent", "p-group:2", "p-group:3"}) {
    CAPTURE(pred);
    LatticeFilter f;
    f.predicate_id = pred;
    for (const auto &name : {"s4", "sl23", "d12"}) {
      auto h = load(name);
      auto a = subgroups_solvable(h, f);
      auto b = lattice_cyclic_extension(h, f);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].representative_elements == b[i].representative_elements);
    }
  }
}

TEST_CASE("lifted classes agree with the conjugacy test")
{
  for (const auto &name : {"d8", "a4", "d12", "sl23", "s4", "f20"}) {
    CAPTURE(name);
    auto g = load(name);
    auto classes = subgroups_solvable(g);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (classes[i].order == classes[j].order)
          CHECK_FALSE(is_conjugate_subgroups(g, classes[i].representative,
                                             classes[j].representative)
                          .has_value());
      for (const auto &t : classes[i].transversal) {
        std::vector<Permutation> gens;
        for (const auto &x : classes[i].representative.generators())
          gens.push_back(x ^ t);
        PermGroup member(g.degree(), gens);
        CHECK(is_conjugate_subgroups(g, classes[i].representative, member).has_value());
      }
    }
  }
}
