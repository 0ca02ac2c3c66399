#ifndef SUBLAT_SUBGROUPS_HPP
#define SUBLAT_SUBGROUPS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sublat/element_set.hpp"
#include "sublat/indexed.hpp"
#include "sublat/perm_group.hpp"

namespace sublat
{

/// A nontrivial cyclic subgroup of prime-power order, stored by its
/// minimal-id generator.
struct Zuppo
{
  Permutation generator;
  indexed::Id generator_id = 0;
  std::uint64_t order = 0;
  std::uint32_t prime = 0;
  ElementSet elements;
};

/// Bit i is set iff zuppo i lies in the subgroup.
struct ZuppoSignature
{
  BitSet bits;

  friend bool operator==(const ZuppoSignature &, const ZuppoSignature &) = default;
};

/**
 * Restricts lattice computations to a family of subgroups. All built-in
 * criteria are closed under taking subgroups, which the cyclic extension
 * needs in order to stay complete.
 *
 * Recognized predicates: "p-group:<p>", "abelian", "cyclic", "nilpotent",
 * "solvable". Names of known non-inherited properties ("nonabelian",
 * "perfect", "non-solvable", "transitive") are rejected, as is anything
 * unknown.
 */
struct LatticeFilter
{
  std::optional<std::uint64_t> max_order;
  std::optional<std::uint64_t> order_divides;
  std::optional<std::string> predicate_id;

  static LatticeFilter p_group(std::uint32_t p);

  /// Throws InputError for unknown or non-inherited predicates.
  void validate() const;

  bool admits_order(std::uint64_t order) const;
  /// Full test on a subgroup of the indexed ambient group.
  bool admits(const ElementIndex &index, const ElementSet &sub) const;
};

/// A conjugacy class of subgroups: representative, its normalizer and a
/// transversal of the normalizer in the ambient group. Member j of the class
/// is conjugate(representative, transversal[j]); member 0 is the
/// representative itself.
struct SubgroupClass
{
  PermGroup representative;
  PermGroup normalizer;
  std::vector<Permutation> transversal;
  std::uint64_t order = 0;
  std::uint64_t length = 0;

  // The same data as element ids of the ambient group's ElementIndex.
  ElementSet representative_elements;
  ElementSet normalizer_elements;
  std::vector<indexed::Id> transversal_ids;
  ZuppoSignature signature;
};

/// Ambient zuppo data: the zuppo list plus element-to-zuppo lookup, which
/// makes signatures and their conjugates cheap.
class ZuppoTable
{
public:
  explicit ZuppoTable(const ElementIndex &index);

  const std::vector<Zuppo> &zuppos() const { return zuppos_; }
  /// Index of the zuppo generated by `x`, or -1 if `x` is trivial or of
  /// non-prime-power order.
  std::int32_t zuppo_of(indexed::Id x) const { return zuppo_of_[x]; }

  ZuppoSignature signature(const ElementSet &sub) const;
  ZuppoSignature conjugate(const ZuppoSignature &sig, indexed::Id x) const;
  /// Index permutation of the zuppos induced by conjugation with x.
  std::vector<std::uint32_t> conjugation_action(indexed::Id x) const;
  /// Elements generated by the zuppos of the signature.
  ElementSet elements(const ZuppoSignature &sig) const;

private:
  const ElementIndex *index_;
  std::vector<Zuppo> zuppos_;
  std::vector<std::int32_t> zuppo_of_;
};

std::vector<Zuppo> compute_zuppos(const PermGroup &group);
ZuppoSignature signature(const PermGroup &group, const PermGroup &sub,
                         const std::vector<Zuppo> &zuppos);
ZuppoSignature conjugate_signature(const PermGroup &group, const ZuppoSignature &sig,
                                   const Permutation &x, const std::vector<Zuppo> &zuppos);

/// Trivial subgroup plus perfect subgroups found by the two-generator
/// search, one per conjugacy class.
std::vector<PermGroup> find_perfect_subgroups(const PermGroup &group);

/// Groups <U, n> for zuppo generators n in N_G(U) \ U with n^p in U.
std::vector<PermGroup> cyclic_extension_step(const PermGroup &group, const SubgroupClass &cls,
                                             const LatticeFilter &filter = {});

struct LatticeOptions
{
  LatticeFilter filter;
  /// Extra perfect subgroups; each is seeded together with its conjugates.
  std::vector<PermGroup> perfect_seeds;
  std::uint64_t element_cap = default_element_cap();
};

std::vector<SubgroupClass> lattice_cyclic_extension(const PermGroup &group,
                                                    const LatticeFilter &filter = {});
std::vector<SubgroupClass> lattice_cyclic_extension(const PermGroup &group,
                                                    const LatticeOptions &options);

std::optional<Permutation> is_conjugate_subgroups(const PermGroup &group, const PermGroup &a,
                                                  const PermGroup &b);

/// Throws InputError when p is not prime.
PermGroup sylow_subgroup(const PermGroup &group, std::uint32_t p);

bool is_prime(std::uint64_t n);
/// Largest power of p dividing n.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);

/// Sum of class lengths.
std::uint64_t total_subgroups(const std::vector<SubgroupClass> &classes);

/// Element sets of all members of a class, in transversal order.
std::vector<ElementSet> class_members(const ElementIndex &index, const SubgroupClass &cls);

namespace detail
{

/// Turns one element set per class into canonical SubgroupClass records,
/// sorted by (order, minimal signature).
std::vector<SubgroupClass> finalize_classes(const PermGroup &group, const ZuppoTable &zuppos,
                                            const std::vector<ElementSet> &representatives);

} // namespace detail

} // namespace sublat

#endif
