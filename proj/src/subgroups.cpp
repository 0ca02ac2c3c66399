#include "sublat/subgroups.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace sublat
{

using indexed::Id;

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p)
{
  std::uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

namespace
{

/// Prime of a prime power, 0 otherwise (including 1).
std::uint32_t prime_of_power(std::uint64_t n)
{
  if (n < 2)
    return 0;
  std::uint64_t p = 2;
  while (n % p != 0)
    ++p;
  while (n % p == 0)
    n /= p;
  return n == 1 ? static_cast<std::uint32_t>(p) : 0;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  if (n > 1)
    out.push_back(n);
  return out;
}

const std::vector<std::string> inherited_predicates = {"abelian", "cyclic", "nilpotent",
                                                       "solvable"};
const std::vector<std::string> rejected_predicates = {"nonabelian", "perfect", "non-solvable",
                                                      "transitive"};

std::optional<std::uint32_t> p_group_prime(const std::string &id)
{
  const std::string prefix = "p-group:";
  if (id.rfind(prefix, 0) != 0)
    return std::nullopt;
  std::string digits = id.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("malformed predicate '" + id + "'");
  auto p = std::stoull(digits);
  if (!is_prime(p))
    throw InputError("predicate '" + id + "' needs a prime");
  return static_cast<std::uint32_t>(p);
}

} // namespace

LatticeFilter LatticeFilter::p_group(std::uint32_t p)
{
  LatticeFilter f;
  f.predicate_id = "p-group:" + std::to_string(p);
  return f;
}

void LatticeFilter::validate() const
{
  if (max_order && *max_order == 0)
    throw InputError("max_order must be positive");
  if (order_divides && *order_divides == 0)
    throw InputError("order_divides must be positive");
  if (!predicate_id)
    return;
  const std::string &id = *predicate_id;
  if (p_group_prime(id))
    return;
  if (std::find(inherited_predicates.begin(), inherited_predicates.end(), id) !=
      inherited_predicates.end())
    return;
  if (std::find(rejected_predicates.begin(), rejected_predicates.end(), id) !=
      rejected_predicates.end())
    throw InputError("predicate '" + id + "' is not inherited by subgroups (not downward-closed)");
  throw InputError("unknown predicate '" + id + "'");
}

bool LatticeFilter::admits_order(std::uint64_t order) const
{
  if (max_order && order > *max_order)
    return false;
  if (order_divides && *order_divides % order != 0)
    return false;
  if (predicate_id) {
    if (auto p = p_group_prime(*predicate_id))
      return order == 1 || prime_of_power(order) == *p;
  }
  return true;
}

bool LatticeFilter::admits(const ElementIndex &index, const ElementSet &sub) const
{
  std::uint64_t order = sub.count();
  if (!admits_order(order))
    return false;
  if (!predicate_id || order == 1)
    return true;
  const std::string &id = *predicate_id;
  if (id == "abelian") {
    auto gens = indexed::generating_set(index, sub);
    for (auto a : gens)
      for (auto b : gens)
        if (index.mul(a, b) != index.mul(b, a))
          return false;
    return true;
  }
  if (id == "cyclic") {
    bool found = false;
    sub.for_each([&](Id x) { found = found || index.order(x) == order; });
    return found;
  }
  if (id == "nilpotent") {
    // Nilpotent iff, for every prime, the p-elements number exactly |U|_p.
    for (auto p : prime_divisors(order)) {
      std::uint64_t count = 0;
      sub.for_each([&](Id x) {
        auto o = index.order(x);
        if (o == 1 || prime_of_power(o) == p)
          ++count;
      });
      if (count != p_part(order, p))
        return false;
    }
    return true;
  }
  if (id == "solvable")
    return indexed::perfect_core(index, indexed::generating_set(index, sub)).count() == 1;
  return true;
}

ZuppoTable::ZuppoTable(const ElementIndex &index) : index_(&index)
{
  const std::size_t n = index.size();
  std::vector<std::int32_t> raw(n, -1);
  std::vector<Zuppo> found;
  for (Id x = 1; x < n; ++x) {
    if (raw[x] >= 0)
      continue;
    std::uint64_t o = index.order(x);
    std::uint32_t p = prime_of_power(o);
    if (p == 0)
      continue;
    Zuppo z;
    z.generator_id = x;
    z.generator = index.unrank(x);
    z.order = o;
    z.prime = p;
    z.elements = ElementSet(n);
    Id y = 0;
    for (std::uint64_t k = 0; k < o; ++k) {
      z.elements.set(y);
      if (k % p != 0)
        raw[y] = static_cast<std::int32_t>(found.size());
      y = index.mul(y, x);
    }
    found.push_back(std::move(z));
  }

  std::vector<std::size_t> perm(found.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].order != found[b].order)
      return found[a].order < found[b].order;
    return found[a].generator_id < found[b].generator_id;
  });
  std::vector<std::int32_t> new_pos(found.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    new_pos[perm[i]] = static_cast<std::int32_t>(i);
    zuppos_.push_back(std::move(found[perm[i]]));
  }
  zuppo_of_.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x)
    if (raw[x] >= 0)
      zuppo_of_[x] = new_pos[static_cast<std::size_t>(raw[x])];
}

ZuppoSignature ZuppoTable::signature(const ElementSet &sub) const
{
  ZuppoSignature sig{BitSet(zuppos_.size())};
  for (std::size_t i = 0; i < zuppos_.size(); ++i)
    if (sub.test(zuppos_[i].generator_id))
      sig.bits.set(i);
  return sig;
}

ZuppoSignature ZuppoTable::conjugate(const ZuppoSignature &sig, Id x) const
{
  ZuppoSignature out{BitSet(zuppos_.size())};
  sig.bits.for_each([&](std::uint32_t i) {
    out.bits.set(static_cast<std::size_t>(zuppo_of_[index_->conj(zuppos_[i].generator_id, x)]));
  });
  return out;
}

std::vector<std::uint32_t> ZuppoTable::conjugation_action(Id x) const
{
  std::vector<std::uint32_t> action(zuppos_.size());
  for (std::size_t i = 0; i < zuppos_.size(); ++i)
    action[i] = static_cast<std::uint32_t>(zuppo_of_[index_->conj(zuppos_[i].generator_id, x)]);
  return action;
}

ElementSet ZuppoTable::elements(const ZuppoSignature &sig) const
{
  std::vector<Id> gens;
  sig.bits.for_each([&](std::uint32_t i) { gens.push_back(zuppos_[i].generator_id); });
  return indexed::closure(*index_, gens);
}

std::vector<Zuppo> compute_zuppos(const PermGroup &group)
{
  return ZuppoTable(group.element_index()).zuppos();
}

ZuppoSignature signature(const PermGroup &group, const PermGroup &sub,
                         const std::vector<Zuppo> &zuppos)
{
  if (!is_subgroup(group, sub))
    throw InputError("not a subgroup of the ambient group");
  ZuppoSignature sig{BitSet(zuppos.size())};
  for (std::size_t i = 0; i < zuppos.size(); ++i)
    if (sub.contains(zuppos[i].generator))
      sig.bits.set(i);
  return sig;
}

ZuppoSignature conjugate_signature(const PermGroup &group, const ZuppoSignature &sig,
                                   const Permutation &x, const std::vector<Zuppo> &zuppos)
{
  if (!group.contains(x))
    throw InputError("conjugating element " + x.to_cycle_string() + " is not in the group");
  const auto &index = group.element_index();
  ZuppoSignature out{BitSet(zuppos.size())};
  sig.bits.for_each([&](std::uint32_t i) {
    // The image generates the zuppo of the same order that contains it.
    Id image = index.rank(zuppos[i].generator ^ x);
    for (std::size_t j = 0; j < zuppos.size(); ++j)
      if (zuppos[j].order == zuppos[i].order && zuppos[j].elements.test(image)) {
        out.bits.set(j);
        break;
      }
  });
  return out;
}

std::uint64_t total_subgroups(const std::vector<SubgroupClass> &classes)
{
  std::uint64_t n = 0;
  for (const auto &c : classes)
    n += c.length;
  return n;
}

std::vector<ElementSet> class_members(const ElementIndex &index, const SubgroupClass &cls)
{
  std::vector<ElementSet> out;
  out.reserve(cls.transversal_ids.size());
  for (auto t : cls.transversal_ids)
    out.push_back(indexed::conjugate(index, cls.representative_elements, t));
  return out;
}

namespace
{

/// Ambient state shared by the enumeration routines.
struct Ambient
{
  const PermGroup &group;
  const ElementIndex &index;
  const ZuppoTable &zuppos;
  std::vector<Id> generators;
  std::vector<std::vector<std::uint32_t>> actions;  // zuppo action per generator

  Ambient(const PermGroup &g, const ElementIndex &idx, const ZuppoTable &zt)
      : group(g), index(idx), zuppos(zt), generators(indexed::ranks(idx, g.generators()))
  {
    for (auto s : generators)
      actions.push_back(zuppos.conjugation_action(s));
  }
};

BitSet apply_action(const BitSet &bits, const std::vector<std::uint32_t> &action)
{
  BitSet out(bits.universe());
  bits.for_each([&](std::uint32_t i) { out.set(action[i]); });
  return out;
}

struct ClassOrbit
{
  std::vector<BitSet> signatures;
  std::vector<Id> transversal;
  ElementSet normalizer;
};

/// Conjugation orbit of a subgroup on signatures, and its stabilizer from
/// Schreier generators.
ClassOrbit orbit_and_normalizer(const Ambient &amb, const ElementSet &sub)
{
  ClassOrbit orbit;
  std::unordered_map<BitSet, std::size_t, BitSetHash> where;
  BitSet start = amb.zuppos.signature(sub).bits;
  where.emplace(start, 0);
  orbit.signatures.push_back(std::move(start));
  orbit.transversal.push_back(0);
  std::vector<std::pair<std::size_t, std::size_t>> loops;
  for (std::size_t k = 0; k < orbit.signatures.size(); ++k) {
    for (std::size_t g = 0; g < amb.generators.size(); ++g) {
      BitSet image = apply_action(orbit.signatures[k], amb.actions[g]);
      if (where.contains(image)) {
        loops.emplace_back(k, g);
        continue;
      }
      where.emplace(image, orbit.signatures.size());
      orbit.signatures.push_back(std::move(image));
      orbit.transversal.push_back(amb.index.mul(orbit.transversal[k], amb.generators[g]));
    }
  }

  std::size_t target = amb.index.size() / orbit.signatures.size();
  orbit.normalizer = sub;
  std::vector<Id> gens = indexed::generating_set(amb.index, sub);
  for (auto [k, g] : loops) {
    if (orbit.normalizer.count() == target)
      break;
    BitSet image = apply_action(orbit.signatures[k], amb.actions[g]);
    Id t = amb.index.mul(orbit.transversal[k], amb.generators[g]);
    Id schreier = amb.index.mul(t, amb.index.inv(orbit.transversal[where.at(image)]));
    indexed::extend_closure(amb.index, orbit.normalizer, gens, schreier);
  }
  return orbit;
}

/// Known subgroups, stored with all their conjugates so that a signature
/// lookup decides conjugacy to a known class.
struct ClassRegistry
{
  std::unordered_set<BitSet, BitSetHash> known;
  std::vector<ElementSet> representatives;
  std::vector<ElementSet> normalizers;

  bool contains(const Ambient &amb, const ElementSet &sub) const
  {
    return known.contains(amb.zuppos.signature(sub).bits);
  }

  bool add(const Ambient &amb, const ElementSet &sub)
  {
    if (contains(amb, sub))
      return false;
    ClassOrbit orbit = orbit_and_normalizer(amb, sub);
    for (auto &s : orbit.signatures)
      known.insert(std::move(s));
    representatives.push_back(sub);
    normalizers.push_back(std::move(orbit.normalizer));
    return true;
  }
};

std::vector<ElementSet> extension_step(const Ambient &amb, const ElementSet &sub,
                                       const ElementSet &normalizer, const LatticeFilter &filter)
{
  std::vector<ElementSet> out;
  std::vector<Id> members = sub.members();
  for (const auto &z : amb.zuppos.zuppos()) {
    Id n = z.generator_id;
    if (!normalizer.test(n) || sub.test(n))
      continue;
    if (!sub.test(amb.index.pow(n, z.prime)))
      continue;
    bool covered = false;
    for (const auto &v : out)
      if (v.test(n)) {
        covered = true;
        break;
      }
    if (covered)
      continue;
    // n normalizes U and nU has order p, so <U,n> = U + Un + ... + Un^(p-1).
    ElementSet v = sub;
    Id power = n;
    for (std::uint32_t i = 1; i < z.prime; ++i) {
      for (auto u : members)
        v.set(amb.index.mul(u, power));
      power = amb.index.mul(power, n);
    }
    if (!filter.admits(amb.index, v))
      continue;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ElementSet> perfect_subgroup_sets(const Ambient &amb)
{
  ClassRegistry registry;
  registry.add(amb, amb.index.singleton_identity());

  const auto &index = amb.index;
  const std::size_t n = index.size();
  std::unordered_map<ElementSet, bool, BitSetHash> seen_pairs;

  // Element class representatives, minimal id first.
  std::vector<bool> done(n, false);
  std::vector<Id> class_reps;
  for (Id x = 0; x < n; ++x) {
    if (done[x])
      continue;
    class_reps.push_back(x);
    std::vector<Id> queue{x};
    done[x] = true;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (auto s : amb.generators) {
        auto y = index.conj(queue[k], s);
        if (!done[y]) {
          done[y] = true;
          queue.push_back(y);
        }
      }
  }

  for (auto a : class_reps) {
    if (a == 0)
      continue;
    ElementSet cent = indexed::centralizer(index, index.all(), a);
    std::vector<Id> cent_gens = indexed::generating_set(index, cent);
    std::vector<bool> visited(n, false);
    for (Id b = 1; b < n; ++b) {
      if (visited[b])
        continue;
      std::vector<Id> queue{b};
      visited[b] = true;
      for (std::size_t k = 0; k < queue.size(); ++k)
        for (auto c : cent_gens) {
          auto y = index.conj(queue[k], c);
          if (!visited[y]) {
            visited[y] = true;
            queue.push_back(y);
          }
        }
      if (index.mul(a, b) == index.mul(b, a))
        continue;
      std::vector<Id> pair{a, b};
      ElementSet h = indexed::closure(index, pair);
      if (!seen_pairs.emplace(h, true).second)
        continue;
      ElementSet core = indexed::perfect_core(index, pair);
      if (core.count() > 1)
        registry.add(amb, core);
    }
  }
  return registry.representatives;
}

std::vector<PermGroup> sets_to_groups(const ElementIndex &index, const std::vector<ElementSet> &sets)
{
  std::vector<PermGroup> out;
  for (const auto &s : sets)
    out.push_back(indexed::to_group(index, indexed::generating_set(index, s)));
  return out;
}

} // namespace

namespace detail
{

std::vector<SubgroupClass> finalize_classes(const PermGroup &group, const ZuppoTable &zuppos,
                                            const std::vector<ElementSet> &representatives)
{
  const auto &index = group.element_index();
  Ambient amb(group, index, zuppos);
  std::vector<SubgroupClass> classes;
  for (const auto &rep : representatives) {
    ClassOrbit orbit = orbit_and_normalizer(amb, rep);
    std::size_t best = 0;
    for (std::size_t k = 1; k < orbit.signatures.size(); ++k)
      if (lex_compare(orbit.signatures[k], orbit.signatures[best]) < 0)
        best = k;
    Id t = orbit.transversal[best];

    SubgroupClass cls;
    cls.representative_elements = indexed::conjugate(index, rep, t);
    cls.normalizer_elements = indexed::conjugate(index, orbit.normalizer, t);
    cls.signature = ZuppoSignature{orbit.signatures[best]};
    cls.order = cls.representative_elements.count();
    cls.transversal_ids =
        indexed::right_coset_representatives(index, index.all(), cls.normalizer_elements);
    cls.length = cls.transversal_ids.size();
    cls.representative =
        indexed::to_group(index, indexed::generating_set(index, cls.representative_elements));
    cls.normalizer =
        indexed::to_group(index, indexed::generating_set(index, cls.normalizer_elements));
    for (auto x : cls.transversal_ids)
      cls.transversal.push_back(index.unrank(x));
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass &a, const SubgroupClass &b) {
    if (a.order != b.order)
      return a.order < b.order;
    return lex_compare(a.signature.bits, b.signature.bits) < 0;
  });
  return classes;
}

} // namespace detail

std::vector<PermGroup> find_perfect_subgroups(const PermGroup &group)
{
  const auto &index = group.element_index();
  ZuppoTable zt(index);
  Ambient amb(group, index, zt);
  auto sets = perfect_subgroup_sets(amb);
  std::sort(sets.begin(), sets.end(), [&](const ElementSet &a, const ElementSet &b) {
    if (a.count() != b.count())
      return a.count() < b.count();
    return lex_compare(zt.signature(a).bits, zt.signature(b).bits) < 0;
  });
  return sets_to_groups(index, sets);
}

std::vector<PermGroup> cyclic_extension_step(const PermGroup &group, const SubgroupClass &cls,
                                             const LatticeFilter &filter)
{
  filter.validate();
  const auto &index = group.element_index();
  ZuppoTable zt(index);
  Ambient amb(group, index, zt);
  ElementSet sub = indexed::elements_of(index, cls.representative);
  ElementSet norm = indexed::normalizer(index, sub, amb.generators, index.size());
  return sets_to_groups(index, extension_step(amb, sub, norm, filter));
}

std::vector<SubgroupClass> lattice_cyclic_extension(const PermGroup &group,
                                                    const LatticeFilter &filter)
{
  LatticeOptions options;
  options.filter = filter;
  return lattice_cyclic_extension(group, options);
}

std::vector<SubgroupClass> lattice_cyclic_extension(const PermGroup &group,
                                                    const LatticeOptions &options)
{
  options.filter.validate();
  const auto &index = group.element_index(options.element_cap);
  ZuppoTable zt(index);
  Ambient amb(group, index, zt);

  ClassRegistry registry;
  for (const auto &p : perfect_subgroup_sets(amb))
    if (options.filter.admits(index, p))
      registry.add(amb, p);
  for (const auto &seed : options.perfect_seeds) {
    ElementSet s = indexed::elements_of(index, seed);
    if (options.filter.admits(index, s))
      registry.add(amb, s);
  }

  for (std::size_t k = 0; k < registry.representatives.size(); ++k) {
    // Copies: add() may reallocate the registry vectors.
    ElementSet sub = registry.representatives[k];
    ElementSet norm = registry.normalizers[k];
    for (auto &v : extension_step(amb, sub, norm, options.filter))
      registry.add(amb, v);
  }
  return detail::finalize_classes(group, zt, registry.representatives);
}

std::optional<Permutation> is_conjugate_subgroups(const PermGroup &group, const PermGroup &a,
                                                  const PermGroup &b)
{
  if (!is_subgroup(group, a) || !is_subgroup(group, b))
    throw InputError("inputs are not subgroups of the group");
  const auto &index = group.element_index();
  ElementSet sa = indexed::elements_of(index, a);
  ElementSet sb = indexed::elements_of(index, b);
  if (sa.count() != sb.count())
    return std::nullopt;
  auto order_profile = [&](const ElementSet &s) {
    std::map<std::uint32_t, std::size_t> m;
    s.for_each([&](Id x) { ++m[index.order(x)]; });
    return m;
  };
  if (order_profile(sa) != order_profile(sb))
    return std::nullopt;
  auto gens = indexed::ranks(index, group.generators());
  ElementSet norm = indexed::normalizer(index, sa, gens, index.size());
  for (auto t : indexed::right_coset_representatives(index, index.all(), norm))
    if (indexed::conjugate(index, sa, t) == sb)
      return index.unrank(t);
  return std::nullopt;
}

PermGroup sylow_subgroup(const PermGroup &group, std::uint32_t p)
{
  if (!is_prime(p))
    throw InputError(std::to_string(p) + " is not prime");
  auto classes = lattice_cyclic_extension(group, LatticeFilter::p_group(p));
  // Classes are sorted by order; the last one has maximal order.
  return classes.back().representative;
}

} // namespace sublat
