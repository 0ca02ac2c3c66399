#ifndef SUBLAT_VERIFY_HPP
#define SUBLAT_VERIFY_HPP

#include <cstdint>
#include <string>

#include "sublat/latticeops.hpp"
#include "sublat/oracle.hpp"

namespace sublat
{

struct OracleReport
{
  bool match = false;
  std::uint64_t engine_subgroups = 0;
  std::uint64_t oracle_subgroups = 0;
  std::size_t engine_classes = 0;
  std::size_t oracle_classes = 0;
  /// Member edges are compared only for member-mode lattices.
  bool edges_checked = false;
  std::string message;
};

/// Compares the lattice's subgroups (and covering pairs, if present) with
/// the brute-force oracle restricted to the filter. Throws CapacityError
/// when the group exceeds the guard.
OracleReport verify_against_oracle(const SubgroupLattice &lattice, const LatticeFilter &filter = {},
                                   std::size_t guard = default_oracle_guard);

} // namespace sublat

#endif
