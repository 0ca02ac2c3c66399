#ifndef SUBLAT_ORACLE_HPP
#define SUBLAT_ORACLE_HPP

// Brute-force verification oracle. Deliberately shares nothing with the
// stabilizer chain or the lattice engines: elements are enumerated by
// closure over raw permutations and subgroups by join-closure of the cyclic
// subgroups.

#include <cstddef>
#include <utility>
#include <vector>

#include "sublat/element_set.hpp"
#include "sublat/perm_group.hpp"

namespace sublat
{

constexpr std::size_t default_oracle_guard = 1000;

struct OracleLattice
{
  std::vector<Permutation> elements;  // sorted
  std::vector<BitSet> subgroups;      // over `elements`, sorted by (order, lex)

  /// Position of `p` in `elements`, or elements.size() if absent.
  std::size_t find(const Permutation &p) const;
  /// Element set over `elements` of an arbitrary list of permutations.
  BitSet set_of(const std::vector<Permutation> &perms) const;
};

/// All elements of the group by breadth-first closure; throws CapacityError
/// past `guard` elements.
std::vector<Permutation> oracle_elements(const PermGroup &group, std::size_t guard);

OracleLattice oracle_lattice(const PermGroup &group, std::size_t guard = default_oracle_guard);

std::vector<PermGroup> oracle_all_subgroups(const PermGroup &group,
                                            std::size_t guard = default_oracle_guard);

/// Covering pairs (lower, upper) as indices into `lattice.subgroups`.
std::vector<std::pair<std::size_t, std::size_t>> oracle_covering_pairs(const OracleLattice &lattice);

/// Number of conjugacy classes among the oracle's subgroups.
std::size_t oracle_class_count(const OracleLattice &lattice);

} // namespace sublat

#endif
