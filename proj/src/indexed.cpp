#include "sublat/indexed.hpp"

#include <unordered_map>

namespace sublat::indexed
{

std::vector<Id> ranks(const ElementIndex &index, std::span<const Permutation> perms)
{
  std::vector<Id> out;
  out.reserve(perms.size());
  for (const auto &p : perms)
    out.push_back(index.rank(p));
  return out;
}

ElementSet closure(const ElementIndex &index, std::span<const Id> generators)
{
  ElementSet set = index.singleton_identity();
  std::vector<Id> gens;
  for (auto g : generators)
    extend_closure(index, set, gens, g);
  return set;
}

void extend_closure(const ElementIndex &index, ElementSet &set, std::vector<Id> &generators,
                    Id g)
{
  if (set.test(g))
    return;
  // The result is a union of right cosets H*r of the old group H; it is
  // closed once every r*s (s a generator) lands in a known coset.
  std::vector<Id> old = set.members();
  generators.push_back(g);
  std::vector<Id> reps{0};
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (std::size_t si = 0; si < generators.size(); ++si) {
      Id y = index.mul(reps[k], generators[si]);
      if (set.test(y))
        continue;
      reps.push_back(y);
      for (auto h : old)
        set.set(index.mul(h, y));
    }
  }
}

std::vector<Id> generating_set(const ElementIndex &index, const ElementSet &sub)
{
  std::vector<Id> gens;
  ElementSet span = index.singleton_identity();
  sub.for_each([&](Id x) {
    if (!span.test(x))
      extend_closure(index, span, gens, x);
  });
  return gens;
}

ElementSet conjugate(const ElementIndex &index, const ElementSet &set, Id x)
{
  if (x == 0)
    return set;
  ElementSet out(set.universe());
  Id xi = index.inv(x);
  set.for_each([&](Id a) { out.set(index.mul(index.mul(xi, a), x)); });
  return out;
}

ElementSet normal_closure(const ElementIndex &index, std::span<const Id> seeds,
                          std::span<const Id> by)
{
  std::vector<Id> gens;
  ElementSet set = index.singleton_identity();
  for (auto s : seeds)
    extend_closure(index, set, gens, s);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Id c = gens[k];
    for (auto h : by) {
      Id y = index.conj(c, h);
      if (!set.test(y))
        extend_closure(index, set, gens, y);
    }
  }
  return set;
}

ElementSet derived_subgroup(const ElementIndex &index, std::span<const Id> generators)
{
  std::vector<Id> commutators;
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      Id a = generators[i], b = generators[j];
      Id c = index.mul(index.mul(index.inv(a), index.inv(b)), index.mul(a, b));
      if (c != 0)
        commutators.push_back(c);
    }
  return normal_closure(index, commutators, generators);
}

std::vector<ElementSet> derived_series(const ElementIndex &index, std::span<const Id> generators)
{
  std::vector<ElementSet> series{closure(index, generators)};
  std::vector<Id> gens(generators.begin(), generators.end());
  while (true) {
    ElementSet next = derived_subgroup(index, gens);
    if (next == series.back())
      break;
    series.push_back(next);
    gens = generating_set(index, next);
  }
  return series;
}

ElementSet perfect_core(const ElementIndex &index, std::span<const Id> generators)
{
  return derived_series(index, generators).back();
}

bool normalizes(const ElementIndex &index, const ElementSet &sub,
                std::span<const Id> sub_generators, Id x)
{
  for (auto s : sub_generators)
    if (!sub.test(index.conj(s, x)))
      return false;
  return true;
}

bool is_normal_in(const ElementIndex &index, const ElementSet &sub,
                  std::span<const Id> sub_generators, std::span<const Id> group_generators)
{
  for (auto x : group_generators)
    if (!normalizes(index, sub, sub_generators, x))
      return false;
  return true;
}

SubgroupOrbit conjugation_orbit(const ElementIndex &index, const ElementSet &sub,
                                std::span<const Id> group_generators)
{
  SubgroupOrbit orbit;
  std::unordered_map<ElementSet, std::size_t, BitSetHash> seen;
  orbit.members.push_back(sub);
  orbit.transversal.push_back(0);
  seen.emplace(sub, 0);
  for (std::size_t k = 0; k < orbit.members.size(); ++k) {
    for (auto s : group_generators) {
      ElementSet image = conjugate(index, orbit.members[k], s);
      if (seen.contains(image))
        continue;
      seen.emplace(image, orbit.members.size());
      orbit.members.push_back(std::move(image));
      orbit.transversal.push_back(index.mul(orbit.transversal[k], s));
    }
  }
  return orbit;
}

ElementSet normalizer(const ElementIndex &index, const ElementSet &sub,
                      std::span<const Id> group_generators, std::size_t group_order)
{
  std::unordered_map<ElementSet, std::size_t, BitSetHash> where;
  SubgroupOrbit orbit;
  orbit.members.push_back(sub);
  orbit.transversal.push_back(0);
  where.emplace(sub, 0);
  std::vector<std::pair<std::size_t, Id>> pending;  // (orbit index, generator) closing a loop
  for (std::size_t k = 0; k < orbit.members.size(); ++k) {
    for (auto s : group_generators) {
      ElementSet image = conjugate(index, orbit.members[k], s);
      auto it = where.find(image);
      if (it == where.end()) {
        where.emplace(image, orbit.members.size());
        orbit.members.push_back(std::move(image));
        orbit.transversal.push_back(index.mul(orbit.transversal[k], s));
      } else {
        pending.emplace_back(k, s);
      }
    }
  }

  std::size_t target = group_order / orbit.members.size();
  ElementSet result = sub;
  std::vector<Id> gens = generating_set(index, sub);
  for (auto [k, s] : pending) {
    if (result.count() == target)
      break;
    Id t = index.mul(orbit.transversal[k], s);
    ElementSet image = conjugate(index, orbit.members[k], s);
    Id back = orbit.transversal[where.at(image)];
    Id schreier = index.mul(t, index.inv(back));
    extend_closure(index, result, gens, schreier);
  }
  return result;
}

ElementSet centralizer(const ElementIndex &index, const ElementSet &group, Id g)
{
  ElementSet out(index.size());
  group.for_each([&](Id x) {
    if (index.mul(g, x) == index.mul(x, g))
      out.set(x);
  });
  return out;
}

std::vector<Id> right_coset_representatives(const ElementIndex &index, const ElementSet &group,
                                            const ElementSet &sub)
{
  std::vector<bool> covered(index.size(), false);
  std::vector<Id> subs = sub.members();
  std::vector<Id> reps;
  group.for_each([&](Id x) {
    if (covered[x])
      return;
    reps.push_back(x);
    for (auto s : subs)
      covered[index.mul(s, x)] = true;
  });
  return reps;
}

std::optional<Id> conjugator(const ElementIndex &index, const ElementSet &sub,
                             const ElementSet &other, std::span<const Id> group_generators)
{
  if (sub.count() != other.count())
    return std::nullopt;
  auto orbit = conjugation_orbit(index, sub, group_generators);
  for (std::size_t k = 0; k < orbit.members.size(); ++k)
    if (orbit.members[k] == other)
      return orbit.transversal[k];
  return std::nullopt;
}

PermGroup to_group(const ElementIndex &index, std::span<const Id> generators)
{
  std::vector<Permutation> perms;
  for (auto g : generators)
    perms.push_back(index.unrank(g));
  return PermGroup(index.degree(), std::move(perms));
}

ElementSet elements_of(const ElementIndex &index, const PermGroup &sub)
{
  if (sub.degree() != index.degree())
    throw InputError("degree mismatch between group and subgroup");
  std::vector<Id> gens;
  for (const auto &g : sub.generators()) {
    auto r = index.try_rank(g);
    if (!r)
      throw InputError("generator " + g.to_cycle_string() + " is not in the ambient group");
    gens.push_back(*r);
  }
  return closure(index, gens);
}

} // namespace sublat::indexed
