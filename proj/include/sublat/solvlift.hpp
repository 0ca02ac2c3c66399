#ifndef SUBLAT_SOLVLIFT_HPP
#define SUBLAT_SOLVLIFT_HPP

#include <cstdint>
#include <vector>

#include "sublat/perm_group.hpp"
#include "sublat/subgroups.hpp"

namespace sublat
{

/// G = R_0 > R_1 > ... > R_k = 1 with every R_i normal in G and every
/// factor R_i/R_{i+1} elementary abelian of order primes[i]^ranks[i].
struct ElementaryAbelianSeries
{
  std::vector<PermGroup> terms;
  std::vector<std::uint32_t> primes;
  std::vector<std::size_t> ranks;
};

/// Derived series with each abelian factor split by p-th-power layers,
/// smallest prime first. Throws InputError if G is not solvable.
ElementaryAbelianSeries elementary_abelian_series(const PermGroup &group);

using GFVector = std::vector<std::uint32_t>;
/// Square matrix over GF(p), row-major rows.
using GFMatrix = std::vector<GFVector>;

GFMatrix gf_multiply(const GFMatrix &a, const GFMatrix &b, std::uint32_t p);

/// Conjugation action of A on N/M in the basis given by `basis`. Vectors are
/// rows and act from the right: the coordinates of x^a are coords(x) * M(a).
struct LayerModule
{
  std::uint32_t prime = 0;
  std::size_t rank = 0;
  std::vector<Permutation> basis;
  std::vector<Permutation> acting;  // generators of A
  std::vector<GFMatrix> action;     // one matrix per acting generator
};

/// Throws InputError unless M, N are normal in A, M <= N and N/M is
/// elementary abelian.
LayerModule layer_module(const PermGroup &a, const PermGroup &n, const PermGroup &m);

/// Coordinates of x in N/M for a module built by layer_module.
GFVector layer_coordinates(const PermGroup &a, const PermGroup &n, const PermGroup &m,
                           const LayerModule &module, const Permutation &x);

/// Subspace in reduced row echelon form.
struct Subspace
{
  std::vector<GFVector> rows;

  std::size_t dimension() const { return rows.size(); }
  friend bool operator==(const Subspace &, const Subspace &) = default;
  friend auto operator<=>(const Subspace &, const Subspace &) = default;
};

Subspace row_reduce(std::vector<GFVector> rows, std::uint32_t p);

/// All invariant subspaces, sorted by dimension and then rows.
std::vector<Subspace> submodules(const LayerModule &module);

/// Complements S/B to N/B in A/B as full preimages S (so S meets N in B and
/// SN = A), one per N-conjugacy class. Throws InputError if B is not
/// A-invariant or N/B is not elementary abelian, and CapacityError when the
/// lift search would exceed 2^20 candidates.
std::vector<PermGroup> complements_in_layer(const PermGroup &a, const PermGroup &n,
                                            const PermGroup &b);

/// All subgroups passing the filter up to conjugacy, by lifting through an
/// elementary abelian series. The class order is the same as for the
/// cyclic extension. Throws InputError if G is not solvable.
std::vector<SubgroupClass> subgroups_solvable(const PermGroup &group,
                                              const LatticeFilter &filter = {});

} // namespace sublat

#endif
