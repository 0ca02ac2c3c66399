#ifndef SUBLAT_GOURSAT_HPP
#define SUBLAT_GOURSAT_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sublat/perm_group.hpp"
#include "sublat/subgroups.hpp"

namespace sublat
{

/// G x H acting on the disjoint union of the two point sets, G first.
struct DirectProduct
{
  PermGroup group;
  PermGroup left;
  PermGroup right;

  Permutation embed_left(const Permutation &g) const;
  Permutation embed_right(const Permutation &h) const;
  Permutation pair(const Permutation &g, const Permutation &h) const;
  Permutation project_left(const Permutation &x) const;
  Permutation project_right(const Permutation &x) const;
  PermGroup project_left(const PermGroup &sub) const;
  PermGroup project_right(const PermGroup &sub) const;
};

DirectProduct direct_product(const PermGroup &g, const PermGroup &h);

/**
 * The factor group A/D as a table over right cosets D*x. Coset 0 is D
 * itself; coset i is represented by its minimal-id element in the index of
 * the ambient group.
 */
class FactorGroup
{
public:
  /// Throws InputError unless D is a normal subgroup of A.
  FactorGroup(const PermGroup &a, const PermGroup &d);
  /// A and D given as element sets of `ambient`.
  FactorGroup(const PermGroup &ambient, const ElementSet &a, const ElementSet &d);

  std::size_t order() const { return reps_.size(); }
  const Permutation &representative(std::uint32_t coset) const;
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return table_[x * reps_.size() + y]; }
  std::uint32_t element_order(std::uint32_t x) const { return orders_[x]; }
  std::uint64_t class_size(std::uint32_t x) const { return class_sizes_[x]; }
  /// Coset of a member of A; throws InputError otherwise.
  std::uint32_t coset_of(const Permutation &g) const;
  /// Small generating set of cosets.
  const std::vector<std::uint32_t> &generators() const { return generators_; }

private:
  void build(const ElementSet &a, const ElementSet &d);

  PermGroup ambient_;
  std::vector<std::uint32_t> coset_of_id_;  // UINT32_MAX outside A
  std::vector<indexed::Id> rep_ids_;
  std::vector<Permutation> reps_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint64_t> class_sizes_;
  std::vector<std::uint32_t> generators_;
};

/// Isomorphism between factor groups, as the images of the source's
/// generators plus the full coset map.
struct Isomorphism
{
  std::vector<std::uint32_t> generators;
  std::vector<std::uint32_t> images;
  std::vector<std::uint32_t> map;

  std::uint32_t operator()(std::uint32_t coset) const { return map[coset]; }
};

/// All isomorphisms from `q1` to `q2`, in lexicographic order of the
/// generator images; empty when the groups are not isomorphic.
std::vector<Isomorphism> isomorphisms(const FactorGroup &q1, const FactorGroup &q2);
/// Isomorphisms between groups, viewed as factor groups by the identity.
std::vector<Isomorphism> isomorphisms(const PermGroup &g, const PermGroup &h);

/// One subdirect product: A <= G and B <= H, D normal in A, E normal in B,
/// and chi: A/D -> B/E.
struct GoursatDatum
{
  PermGroup a;
  PermGroup b;
  PermGroup d;
  PermGroup e;
  std::shared_ptr<const FactorGroup> source;  // A/D
  std::shared_ptr<const FactorGroup> target;  // B/E
  Isomorphism chi;

  std::uint64_t order() const { return a.order() * e.order(); }
  /// {(a, b) : chi(aD) = bE} inside the product.
  PermGroup subgroup(const DirectProduct &product) const;
};

std::vector<GoursatDatum> goursat_data(const PermGroup &g, const PermGroup &h,
                                       const std::vector<PermGroup> &subs_g,
                                       const std::vector<PermGroup> &subs_h);

/// All subgroups of G x H from complete subgroup lists of G and H, sorted
/// by order. Duplicate entries of the input lists are dropped first, so
/// distinct data give distinct subgroups.
std::vector<PermGroup> goursat_subgroups(const PermGroup &g, const PermGroup &h,
                                         const std::vector<PermGroup> &subs_g,
                                         const std::vector<PermGroup> &subs_h);

/// Conjugacy classes of subgroups of G x H: the subgroup lists of the
/// factors come from the cyclic extension, the products from Goursat's
/// construction, and classes are fused under the whole product.
std::vector<SubgroupClass> goursat_classes(const DirectProduct &product);

/// Expands a class list into all member subgroups.
std::vector<PermGroup> expand_classes(const PermGroup &group,
                                      const std::vector<SubgroupClass> &classes);

} // namespace sublat

#endif
