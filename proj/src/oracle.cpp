#include "sublat/oracle.hpp"

#include <algorithm>
#include <unordered_set>

namespace sublat
{

std::vector<Permutation> oracle_elements(const PermGroup &group, std::size_t guard)
{
  Permutation id(group.degree());
  std::vector<Permutation> elems{id};
  std::unordered_set<Permutation> seen{id};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto &g : group.generators()) {
      Permutation y = elems[k] * g;
      if (seen.insert(y).second) {
        elems.push_back(std::move(y));
        if (elems.size() > guard)
          throw CapacityError("oracle guard of " + std::to_string(guard) + " elements exceeded");
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::size_t OracleLattice::find(const Permutation &p) const
{
  auto it = std::lower_bound(elements.begin(), elements.end(), p);
  if (it == elements.end() || *it != p)
    return elements.size();
  return static_cast<std::size_t>(it - elements.begin());
}

BitSet OracleLattice::set_of(const std::vector<Permutation> &perms) const
{
  BitSet s(elements.size());
  for (const auto &p : perms) {
    auto i = find(p);
    if (i == elements.size())
      throw InputError("permutation outside the oracle's group");
    s.set(i);
  }
  return s;
}

namespace
{

struct Table
{
  std::size_t n = 0;
  std::vector<std::uint32_t> mul;
  std::uint32_t identity = 0;

  BitSet close(std::vector<std::uint32_t> gens) const
  {
    BitSet s(n);
    s.set(identity);
    std::vector<std::uint32_t> queue{identity};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (auto g : gens) {
        auto y = mul[queue[k] * n + g];
        if (!s.test(y)) {
          s.set(y);
          queue.push_back(y);
        }
      }
    return s;
  }
};

} // namespace

OracleLattice oracle_lattice(const PermGroup &group, std::size_t guard)
{
  OracleLattice lat;
  lat.elements = oracle_elements(group, guard);
  Table t;
  t.n = lat.elements.size();
  t.identity = static_cast<std::uint32_t>(lat.find(Permutation(group.degree())));
  t.mul.resize(t.n * t.n);
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b)
      t.mul[a * t.n + b] = static_cast<std::uint32_t>(lat.find(lat.elements[a] * lat.elements[b]));

  std::vector<BitSet> subs;
  std::vector<std::vector<std::uint32_t>> gens;
  std::unordered_set<BitSet, BitSetHash> known;
  for (std::uint32_t x = 0; x < t.n; ++x) {
    BitSet c = t.close({x});
    if (known.insert(c).second) {
      subs.push_back(c);
      gens.push_back({x});
    }
  }
  // Every subgroup is the join of its cyclic subgroups, so closing the
  // family under pairwise joins reaches all of them.
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (subs[i].is_subset_of(subs[j]) || subs[j].is_subset_of(subs[i]))
        continue;
      std::vector<std::uint32_t> g = gens[i];
      for (auto y : gens[j])
        if (!subs[i].test(y))
          g.push_back(y);
      BitSet join = t.close(g);
      if (known.insert(join).second) {
        subs.push_back(std::move(join));
        gens.push_back(std::move(g));
      }
    }
  }
  std::sort(subs.begin(), subs.end(), [](const BitSet &a, const BitSet &b) {
    if (a.count() != b.count())
      return a.count() < b.count();
    return lex_compare(a, b) < 0;
  });
  lat.subgroups = std::move(subs);
  return lat;
}

std::vector<PermGroup> oracle_all_subgroups(const PermGroup &group, std::size_t guard)
{
  OracleLattice lat = oracle_lattice(group, guard);
  std::vector<PermGroup> out;
  for (const auto &s : lat.subgroups) {
    std::vector<Permutation> elems;
    s.for_each([&](std::uint32_t i) {
      if (!lat.elements[i].is_identity())
        elems.push_back(lat.elements[i]);
    });
    out.emplace_back(group.degree(), std::move(elems));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> oracle_covering_pairs(const OracleLattice &lattice)
{
  const auto &subs = lattice.subgroups;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 0; v < subs.size(); ++v) {
    std::vector<std::size_t> below;
    for (std::size_t u = 0; u < subs.size(); ++u)
      if (u != v && subs[u].count() < subs[v].count() && subs[u].is_subset_of(subs[v]))
        below.push_back(u);
    for (auto u : below) {
      bool covered = true;
      for (auto w : below)
        if (w != u && subs[u].count() < subs[w].count() && subs[u].is_subset_of(subs[w])) {
          covered = false;
          break;
        }
      if (covered)
        pairs.emplace_back(u, v);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::size_t oracle_class_count(const OracleLattice &lattice)
{
  std::unordered_set<BitSet, BitSetHash> seen;
  std::size_t classes = 0;
  std::vector<Permutation> inverses;
  for (const auto &e : lattice.elements)
    inverses.push_back(e.inverse());
  for (const auto &s : lattice.subgroups) {
    if (seen.contains(s))
      continue;
    ++classes;
    for (std::size_t x = 0; x < lattice.elements.size(); ++x) {
      BitSet c(lattice.elements.size());
      s.for_each([&](std::uint32_t i) {
        c.set(lattice.find(inverses[x] * lattice.elements[i] * lattice.elements[x]));
      });
      seen.insert(std::move(c));
    }
  }
  return classes;
}

} // namespace sublat
