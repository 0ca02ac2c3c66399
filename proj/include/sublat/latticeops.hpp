#ifndef SUBLAT_LATTICEOPS_HPP
#define SUBLAT_LATTICEOPS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sublat/perm_group.hpp"
#include "sublat/subgroups.hpp"

namespace sublat
{

constexpr std::size_t default_member_bound = 300;

/// Covering pair between members; all indices 0-based.
struct MemberEdge
{
  std::uint32_t lower_class = 0;
  std::uint32_t lower_member = 0;
  std::uint32_t upper_class = 0;
  std::uint32_t upper_member = 0;

  friend bool operator==(const MemberEdge &, const MemberEdge &) = default;
  friend auto operator<=>(const MemberEdge &, const MemberEdge &) = default;
};

/// Class `lower` has `count` members covered by the representative of class
/// `upper`.
struct ClassEdge
{
  std::uint32_t lower = 0;
  std::uint32_t upper = 0;
  std::uint64_t count = 0;

  friend bool operator==(const ClassEdge &, const ClassEdge &) = default;
};

/**
 * Classes of subgroups with their covering relation. Member-level edges are
 * only kept when the total number of subgroups is at most the member bound;
 * otherwise `class_level` is set and only `class_edges` describe the
 * incidence.
 */
struct SubgroupLattice
{
  PermGroup group;
  std::vector<SubgroupClass> classes;
  std::vector<bool> normal;
  bool class_level = false;
  /// False for filtered class lists; then the top need not be G.
  bool complete = true;
  std::vector<MemberEdge> edges;
  std::vector<ClassEdge> class_edges;

  // All members as element sets, class by class in transversal order.
  std::vector<ElementSet> members;
  std::vector<std::size_t> member_offset;

  std::uint64_t total() const { return members.size(); }
  const ElementSet &member(std::size_t cls, std::size_t j) const
  {
    return members[member_offset[cls] + j];
  }
};

/// Covering pairs (lower, upper) between the given subgroups, as indices.
/// The list must be sorted by order.
std::vector<std::pair<std::size_t, std::size_t>>
covering_pairs(const std::vector<ElementSet> &subgroups);

/// Throws InputError when a list claimed to be complete is visibly not: G
/// is missing, a proper subgroup has no upper cover, or two subgroups meet
/// in a subgroup that is not listed. Filtered lists pass `complete = false`
/// and get the covering relation among the listed subgroups only.
SubgroupLattice maximality_edges(const PermGroup &group, std::vector<SubgroupClass> classes,
                                 std::size_t member_bound = default_member_bound,
                                 bool complete = true);

/// Full lattice by cyclic extension.
SubgroupLattice subgroup_lattice(const PermGroup &group,
                                 std::size_t member_bound = default_member_bound);

/// The operations below need a complete lattice and throw InputError
/// otherwise.

/// Classes whose members are covered by G itself.
std::vector<SubgroupClass> maximal_subgroup_classes(const SubgroupLattice &lattice);
std::vector<SubgroupClass> maximal_subgroup_classes(const PermGroup &group);

/// Classes reachable from G in 1..k covering steps, with G itself returned
/// for k = 0, optionally limited to index at most `index_bound`. Canonical
/// class order. Throws InputError for negative k.
/// Indices into lattice.classes of the low-layer classes.
std::vector<std::size_t> low_layer_indices(const SubgroupLattice &lattice, int k,
                                           std::optional<std::uint64_t> index_bound = {});
std::vector<SubgroupClass> low_layer_subgroups(const SubgroupLattice &lattice, int k,
                                               std::optional<std::uint64_t> index_bound = {});
std::vector<SubgroupClass> low_layer_subgroups(const PermGroup &group, int k,
                                               std::optional<std::uint64_t> index_bound = {});

/// Covering distance of every class from G.
std::vector<std::size_t> class_depths(const SubgroupLattice &lattice);

/// Every V with U < V < G, sorted by order and element set. Throws
/// InputError when U is not a subgroup of G.
std::vector<PermGroup> intermediate_subgroups(const SubgroupLattice &lattice, const PermGroup &sub);
std::vector<PermGroup> intermediate_subgroups(const PermGroup &group, const PermGroup &sub);

/// Internal consistency of a lattice: class equation, normal flags,
/// covering soundness against all members, and an upper cover for every
/// proper subgroup. Checks member-level edges when present.
bool verify_lattice(const SubgroupLattice &lattice);

} // namespace sublat

#endif
