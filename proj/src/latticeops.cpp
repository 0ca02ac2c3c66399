#include "sublat/latticeops.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_set>

#include "sublat/indexed.hpp"

namespace sublat
{

using indexed::Id;

std::vector<std::pair<std::size_t, std::size_t>>
covering_pairs(const std::vector<ElementSet> &subgroups)
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> maximal;
  for (std::size_t v = 0; v < subgroups.size(); ++v) {
    const auto &big = subgroups[v];
    const std::size_t order = big.count();
    maximal.clear();
    // Larger subgroups come first, so anything strictly between U and V has
    // been seen before U.
    for (std::size_t u = v; u-- > 0;) {
      const auto &small = subgroups[u];
      std::size_t k = small.count();
      if (k >= order || order % k != 0 || !small.is_subset_of(big))
        continue;
      bool covered = std::none_of(maximal.begin(), maximal.end(),
                                  [&](std::size_t m) { return small.is_subset_of(subgroups[m]); });
      if (covered) {
        maximal.push_back(u);
        pairs.emplace_back(u, v);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace
{

void check_complete(const std::vector<ElementSet> &members,
                    const std::vector<std::pair<std::size_t, std::size_t>> &pairs)
{
  std::vector<char> has_cover(members.size(), 0);
  for (auto [u, v] : pairs)
    has_cover[u] = 1;
  for (std::size_t u = 0; u + 1 < members.size(); ++u)
    if (!has_cover[u])
      throw InputError("incomplete class list: subgroup without an upper cover");

  // A complete list is closed under intersection.
  std::unordered_set<ElementSet, BitSetHash> present(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      ElementSet meet = members[i];
      meet &= members[j];
      if (!present.contains(meet))
        throw InputError("incomplete class list: intersection of two subgroups is missing");
    }
}

void require_complete(const SubgroupLattice &lattice)
{
  if (!lattice.complete)
    throw InputError("operation needs the complete subgroup lattice");
}

} // namespace

SubgroupLattice maximality_edges(const PermGroup &group, std::vector<SubgroupClass> classes,
                                 std::size_t member_bound, bool complete)
{
  const auto &index = group.element_index();
  if (complete && (classes.empty() || classes.back().order != index.size()))
    throw InputError("class list does not end with the whole group");

  SubgroupLattice lat;
  lat.group = group;
  lat.complete = complete;
  lat.classes = std::move(classes);
  std::vector<std::uint32_t> class_of, member_of;
  for (std::uint32_t c = 0; c < lat.classes.size(); ++c) {
    const auto &cls = lat.classes[c];
    lat.normal.push_back(cls.length == 1);
    lat.member_offset.push_back(lat.members.size());
    std::uint32_t j = 0;
    for (auto &m : class_members(index, cls)) {
      lat.members.push_back(std::move(m));
      class_of.push_back(c);
      member_of.push_back(j++);
    }
  }

  auto pairs = covering_pairs(lat.members);
  if (complete)
    check_complete(lat.members, pairs);

  lat.class_level = lat.members.size() > member_bound;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
  for (auto [u, v] : pairs) {
    if (!lat.class_level)
      lat.edges.push_back(MemberEdge{class_of[u], member_of[u], class_of[v], member_of[v]});
    if (member_of[v] == 0)
      ++counts[{class_of[u], class_of[v]}];
  }
  std::sort(lat.edges.begin(), lat.edges.end());
  for (auto [key, n] : counts)
    lat.class_edges.push_back(ClassEdge{key.first, key.second, n});
  return lat;
}

SubgroupLattice subgroup_lattice(const PermGroup &group, std::size_t member_bound)
{
  return maximality_edges(group, lattice_cyclic_extension(group), member_bound);
}

std::vector<SubgroupClass> maximal_subgroup_classes(const SubgroupLattice &lattice)
{
  require_complete(lattice);
  std::vector<SubgroupClass> out;
  auto top = static_cast<std::uint32_t>(lattice.classes.size() - 1);
  for (const auto &e : lattice.class_edges)
    if (e.upper == top)
      out.push_back(lattice.classes[e.lower]);
  return out;
}

std::vector<SubgroupClass> maximal_subgroup_classes(const PermGroup &group)
{
  return maximal_subgroup_classes(subgroup_lattice(group));
}

std::vector<std::size_t> class_depths(const SubgroupLattice &lattice)
{
  require_complete(lattice);
  const std::size_t n = lattice.classes.size();
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::uint32_t>> below(n);
  for (const auto &e : lattice.class_edges)
    below[e.upper].push_back(e.lower);
  std::vector<std::size_t> depth(n, unreached);
  std::deque<std::size_t> queue{n - 1};
  depth[n - 1] = 0;
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (auto l : below[c])
      if (depth[l] == unreached) {
        depth[l] = depth[c] + 1;
        queue.push_back(l);
      }
  }
  return depth;
}

std::vector<std::size_t> low_layer_indices(const SubgroupLattice &lattice, int k,
                                           std::optional<std::uint64_t> index_bound)
{
  if (k < 0)
    throw InputError("k must be non-negative");
  const std::uint64_t order = lattice.group.order();
  auto depth = class_depths(lattice);
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < lattice.classes.size(); ++c) {
    bool wanted = k == 0 ? depth[c] == 0 : depth[c] >= 1 && depth[c] <= static_cast<std::size_t>(k);
    if (!wanted)
      continue;
    if (index_bound && order / lattice.classes[c].order > *index_bound)
      continue;
    out.push_back(c);
  }
  return out;
}

std::vector<SubgroupClass> low_layer_subgroups(const SubgroupLattice &lattice, int k,
                                               std::optional<std::uint64_t> index_bound)
{
  std::vector<SubgroupClass> out;
  for (auto c : low_layer_indices(lattice, k, index_bound))
    out.push_back(lattice.classes[c]);
  return out;
}

std::vector<SubgroupClass> low_layer_subgroups(const PermGroup &group, int k,
                                               std::optional<std::uint64_t> index_bound)
{
  if (k < 0)
    throw InputError("k must be non-negative");
  return low_layer_subgroups(subgroup_lattice(group), k, index_bound);
}

std::vector<PermGroup> intermediate_subgroups(const SubgroupLattice &lattice, const PermGroup &sub)
{
  require_complete(lattice);
  const auto &index = lattice.group.element_index();
  if (sub.degree() != lattice.group.degree())
    throw InputError("subgroup degree differs from the group");
  ElementSet u = indexed::elements_of(index, sub);

  // Overgroups of U, by increasing order; the last one is G.
  std::vector<std::size_t> over;
  for (std::size_t i = 0; i < lattice.members.size(); ++i)
    if (lattice.members[i].count() > u.count() && u.is_subset_of(lattice.members[i]))
      over.push_back(i);
  if (over.empty())
    return {};

  // Descend from G through maximal subgroups that still contain U.
  std::vector<char> found(lattice.members.size(), 0);
  std::vector<std::size_t> frontier{over.back()};
  found[over.back()] = 1;
  for (std::size_t f = 0; f < frontier.size(); ++f) {
    const auto &w = lattice.members[frontier[f]];
    std::vector<std::size_t> maximal;
    for (auto it = over.rbegin(); it != over.rend(); ++it) {
      const auto &m = lattice.members[*it];
      if (m.count() >= w.count() || !m.is_subset_of(w))
        continue;
      bool inside = std::any_of(maximal.begin(), maximal.end(), [&](std::size_t x) {
        return m.is_subset_of(lattice.members[x]);
      });
      if (inside)
        continue;
      maximal.push_back(*it);
      if (!found[*it]) {
        found[*it] = 1;
        frontier.push_back(*it);
      }
    }
  }

  std::vector<const ElementSet *> result;
  for (std::size_t i = 1; i < frontier.size(); ++i)
    result.push_back(&lattice.members[frontier[i]]);
  std::sort(result.begin(), result.end(), [](const ElementSet *a, const ElementSet *b) {
    if (a->count() != b->count())
      return a->count() < b->count();
    return *a < *b;
  });
  std::vector<PermGroup> out;
  for (auto s : result)
    out.push_back(indexed::to_group(index, indexed::generating_set(index, *s)));
  return out;
}

std::vector<PermGroup> intermediate_subgroups(const PermGroup &group, const PermGroup &sub)
{
  if (sub.degree() != group.degree() || !is_subgroup(group, sub))
    throw InputError("not a subgroup of the group");
  return intermediate_subgroups(subgroup_lattice(group), sub);
}

namespace
{

bool strictly_between(const ElementSet &u, const ElementSet &w, const ElementSet &v)
{
  return u.count() < w.count() && w.count() < v.count() && u.is_subset_of(w) && w.is_subset_of(v);
}

bool is_cover(const std::vector<ElementSet> &all, const ElementSet &u, const ElementSet &v)
{
  if (u.count() >= v.count() || !u.is_subset_of(v))
    return false;
  return std::none_of(all.begin(), all.end(),
                      [&](const ElementSet &w) { return strictly_between(u, w, v); });
}

} // namespace

bool verify_lattice(const SubgroupLattice &lattice)
{
  const std::uint64_t order = lattice.group.order();
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < lattice.classes.size(); ++c) {
    const auto &cls = lattice.classes[c];
    if (cls.length * cls.normalizer.order() != order || cls.length != cls.transversal.size())
      return false;
    if (lattice.normal[c] != (cls.length == 1))
      return false;
    total += cls.length;
  }
  if (total != lattice.members.size())
    return false;
  std::unordered_set<ElementSet, BitSetHash> distinct(lattice.members.begin(), lattice.members.end());
  if (distinct.size() != lattice.members.size())
    return false;

  const auto &all = lattice.members;
  if (!lattice.class_level) {
    std::vector<char> has_cover(all.size(), 0);
    for (const auto &e : lattice.edges) {
      const auto &u = lattice.member(e.lower_class, e.lower_member);
      const auto &v = lattice.member(e.upper_class, e.upper_member);
      if (!is_cover(all, u, v))
        return false;
      has_cover[lattice.member_offset[e.lower_class] + e.lower_member] = 1;
    }
    for (std::size_t i = 0; lattice.complete && i + 1 < all.size(); ++i)
      if (!has_cover[i])
        return false;
  }
  std::vector<char> class_covered(lattice.classes.size(), 0);
  for (const auto &e : lattice.class_edges) {
    const auto &v = lattice.member(e.upper, 0);
    std::uint64_t n = 0;
    for (std::size_t j = 0; j < lattice.classes[e.lower].length; ++j)
      n += is_cover(all, lattice.member(e.lower, j), v);
    if (n != e.count || n == 0)
      return false;
    class_covered[e.lower] = 1;
  }
  for (std::size_t c = 0; lattice.complete && c + 1 < lattice.classes.size(); ++c)
    if (!class_covered[c])
      return false;
  return true;
}

} // namespace sublat
