#ifndef SUBLAT_EXPORT_HPP
#define SUBLAT_EXPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "sublat/latticeops.hpp"

namespace sublat
{

const char *engine_version();

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

struct DotOptions
{
  /// Group nodes of equal subgroup order on one rank.
  bool rank_hints = false;
};

/**
 * Graphviz text for the lattice. Member mode: one node `cA_nB` per subgroup
 * (1-based class A, member B), labelled "A" and drawn as a box for normal
 * classes, "A-B" in a circle otherwise; one edge per covering pair from
 * lower to upper. Class-level lattices get one node `cA` per class, with
 * `peripheries=2` on classes of more than one member, and one edge per
 * class edge.
 */
std::string emit_dot(const SubgroupLattice &lattice, const DotOptions &options = {});

/// JSON document with keys in a fixed order. `input` is hashed into the
/// document to tie it to the input file.
std::string emit_json(const SubgroupLattice &lattice, std::string_view input = {});

} // namespace sublat

#endif
