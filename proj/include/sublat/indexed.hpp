#ifndef SUBLAT_INDEXED_HPP
#define SUBLAT_INDEXED_HPP

// Group algorithms on element ids of an ambient ElementIndex. Subgroups are
// element sets over the ambient group; generators are id lists.

#include <span>
#include <vector>

#include "sublat/perm_group.hpp"

namespace sublat::indexed
{

using Id = ElementIndex::Id;

std::vector<Id> ranks(const ElementIndex &index, std::span<const Permutation> perms);

ElementSet closure(const ElementIndex &index, std::span<const Id> generators);

/// Grows the subgroup `set`, generated by `generators`, to the subgroup
/// generated by it and `g`. Appends `g` to `generators` when it is new.
void extend_closure(const ElementIndex &index, ElementSet &set, std::vector<Id> &generators,
                    Id g);

/// Greedy generating set: scans members in increasing id order and keeps
/// those not in the span of the earlier ones.
std::vector<Id> generating_set(const ElementIndex &index, const ElementSet &sub);

ElementSet conjugate(const ElementIndex &index, const ElementSet &set, Id x);

ElementSet normal_closure(const ElementIndex &index, std::span<const Id> seeds,
                          std::span<const Id> by);

/// Commutator subgroup of the group generated by `generators`.
ElementSet derived_subgroup(const ElementIndex &index, std::span<const Id> generators);

/// Derived series, starting with the group itself and ending at its
/// perfect core.
std::vector<ElementSet> derived_series(const ElementIndex &index, std::span<const Id> generators);

ElementSet perfect_core(const ElementIndex &index, std::span<const Id> generators);

bool normalizes(const ElementIndex &index, const ElementSet &sub,
                std::span<const Id> sub_generators, Id x);

bool is_normal_in(const ElementIndex &index, const ElementSet &sub,
                  std::span<const Id> sub_generators, std::span<const Id> group_generators);

/// Conjugation orbit of a subgroup under a group, with a transversal:
/// conjugate(sub, transversal[i]) == members[i].
struct SubgroupOrbit
{
  std::vector<ElementSet> members;
  std::vector<Id> transversal;
};

SubgroupOrbit conjugation_orbit(const ElementIndex &index, const ElementSet &sub,
                                std::span<const Id> group_generators);

/// Normalizer inside the group generated by `group_generators`, by
/// orbit-stabilizer on the conjugation orbit of `sub` with Schreier
/// generators for the stabilizer.
ElementSet normalizer(const ElementIndex &index, const ElementSet &sub,
                      std::span<const Id> group_generators, std::size_t group_order);

ElementSet centralizer(const ElementIndex &index, const ElementSet &group, Id g);

/// Minimal-id element of each right coset `sub * x` of `sub` in `group`,
/// ascending. The identity comes first.
std::vector<Id> right_coset_representatives(const ElementIndex &index, const ElementSet &group,
                                            const ElementSet &sub);

/// Whether the subgroup set is conjugate to `other` under the given group,
/// returning a conjugator.
std::optional<Id> conjugator(const ElementIndex &index, const ElementSet &sub,
                             const ElementSet &other, std::span<const Id> group_generators);

PermGroup to_group(const ElementIndex &index, std::span<const Id> generators);

/// Element set of `sub` inside the indexed group; throws InputError if some
/// generator is not a member.
ElementSet elements_of(const ElementIndex &index, const PermGroup &sub);

} // namespace sublat::indexed

#endif
