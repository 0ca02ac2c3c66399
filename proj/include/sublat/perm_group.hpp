#ifndef SUBLAT_PERM_GROUP_HPP
#define SUBLAT_PERM_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sublat/element_set.hpp"
#include "sublat/permutation.hpp"

namespace sublat
{

/// Element cap for operations that enumerate all group elements. Reads
/// SUBLAT_ELEMENT_CAP from the environment, falling back to 2^20.
std::uint64_t default_element_cap();

/**
 * Base and strong generating set with explicit transversals.
 *
 * The base consists of the moved points of the group in increasing order,
 * with points whose basic orbit is trivial dropped. Construction is the
 * deterministic Schreier-Sims algorithm.
 */
class StabilizerChain
{
public:
  struct Level
  {
    std::uint16_t base_point = 0;                  // 0-based
    std::vector<std::uint16_t> orbit;              // sorted, 0-based
    std::vector<std::int32_t> position;            // point -> index into orbit, -1 if absent
    std::vector<Permutation> transversal;          // transversal[k] maps base_point to orbit[k]
    std::vector<Permutation> transversal_inverse;
    std::vector<Permutation> strong_generators;    // generators of the level's stabilizer subgroup
  };

  StabilizerChain() = default;

  static StabilizerChain build(std::size_t degree, std::span<const Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Level> &levels() const { return levels_; }

  /// 1-based base points.
  std::vector<Point> base() const;

  /// Product of basic orbit lengths. Throws CapacityError on overflow.
  std::uint64_t order() const;

  /// Sifts `g`; returns the residue and the level at which sifting stopped
  /// (levels().size() when it went all the way through).
  std::pair<Permutation, std::size_t> sift(Permutation g) const;

  bool contains(const Permutation &g) const;

  /// Checks the structural invariants: order equals the product of orbit
  /// lengths and every strong generator sifts to the identity.
  bool verify(std::span<const Permutation> generators) const;

private:
  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

/**
 * Bijection between the elements of a group and 0..|G|-1, realized by
 * mixed-radix ranking over the chain's transversals. The identity has rank 0.
 *
 * Once built the index is immutable; group arithmetic on ranks goes through a
 * multiplication table for small groups.
 */
class ElementIndex
{
public:
  using Id = std::uint32_t;

  ElementIndex(StabilizerChain chain, std::uint64_t cap);

  std::size_t size() const { return elements_.size(); }
  std::size_t degree() const { return chain_.degree(); }
  const StabilizerChain &chain() const { return chain_; }

  /// Rank of a member; throws InputError for non-members.
  Id rank(const Permutation &g) const;
  std::optional<Id> try_rank(const Permutation &g) const;
  const Permutation &unrank(Id i) const { return elements_.at(i); }

  Id mul(Id a, Id b) const
  {
    if (!table_.empty())
      return table_[static_cast<std::size_t>(a) * elements_.size() + b];
    return rank(elements_[a] * elements_[b]);
  }
  Id inv(Id a) const { return inverse_[a]; }
  /// x^-1 * a * x
  Id conj(Id a, Id x) const { return mul(mul(inverse_[x], a), x); }
  Id pow(Id a, std::uint64_t e) const;
  std::uint32_t order(Id a) const { return orders_[a]; }

  /// All ranks as a full set.
  ElementSet all() const;
  ElementSet singleton_identity() const;

private:
  StabilizerChain chain_;
  std::vector<Permutation> elements_;
  std::vector<Id> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<Id> table_;
};

namespace detail
{
struct GroupCache;
}

/**
 * A permutation group given by generators. The stabilizer chain and element
 * index are computed on first use and shared between copies; both caches are
 * populated at most once, also under concurrent access.
 */
class PermGroup
{
public:
  PermGroup();
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return generators_; }

  const StabilizerChain &chain() const;
  /// Throws CapacityError when the order exceeds `cap`.
  const ElementIndex &element_index(std::uint64_t cap = default_element_cap()) const;

  std::uint64_t order() const { return chain().order(); }
  bool contains(const Permutation &g) const;

private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<detail::GroupCache> cache_;
};

/// Builds the chain; throws CapacityError if the order exceeds `cap`.
StabilizerChain build_stabilizer_chain(const PermGroup &group,
                                       std::uint64_t cap = default_element_cap());

std::uint64_t group_order(const PermGroup &group);
bool contains(const PermGroup &group, const Permutation &g);

/// Same element set. Both groups must have the same degree.
bool same_group(const PermGroup &a, const PermGroup &b);
bool is_subgroup(const PermGroup &group, const PermGroup &sub);

std::vector<Permutation> coset_representatives(const PermGroup &group, const PermGroup &sub);

struct ElementClass
{
  Permutation representative;
  std::uint64_t size = 0;
};

std::vector<ElementClass> conjugacy_classes_elements(const PermGroup &group);

PermGroup centralizer(const PermGroup &group, const Permutation &g);
std::optional<Permutation> conjugating_element(const PermGroup &group, const Permutation &g,
                                               const Permutation &h);
PermGroup normalizer(const PermGroup &group, const PermGroup &sub);
bool is_normal(const PermGroup &group, const PermGroup &sub);
PermGroup derived_subgroup(const PermGroup &group);
bool is_solvable(const PermGroup &group);

} // namespace sublat

#endif
