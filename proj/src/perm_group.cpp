#include "sublat/perm_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>

#include "sublat/indexed.hpp"

namespace sublat
{

std::uint64_t default_element_cap()
{
  constexpr std::uint64_t fallback = std::uint64_t{1} << 20;
  if (const char *env = std::getenv("SUBLAT_ELEMENT_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return v;
  }
  return fallback;
}

namespace
{

void rebuild_orbit(StabilizerChain::Level &level, std::size_t degree)
{
  std::vector<std::int32_t> found(degree, -1);
  std::vector<std::uint16_t> order{level.base_point};
  std::vector<Permutation> reps{Permutation(degree)};
  found[level.base_point] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto &s : level.strong_generators) {
      std::uint16_t img = s.image0(order[k]);
      if (found[img] >= 0)
        continue;
      found[img] = static_cast<std::int32_t>(order.size());
      order.push_back(img);
      reps.push_back(reps[k] * s);
    }
  }

  std::vector<std::size_t> perm(order.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return order[a] < order[b]; });

  level.orbit.clear();
  level.transversal.clear();
  level.transversal_inverse.clear();
  level.position.assign(degree, -1);
  for (std::size_t k : perm) {
    level.position[order[k]] = static_cast<std::int32_t>(level.orbit.size());
    level.orbit.push_back(order[k]);
    level.transversal_inverse.push_back(reps[k].inverse());
    level.transversal.push_back(std::move(reps[k]));
  }
}

std::pair<Permutation, std::size_t> sift_from(const std::vector<StabilizerChain::Level> &levels,
                                              Permutation g, std::size_t start)
{
  for (std::size_t l = start; l < levels.size(); ++l) {
    const auto &level = levels[l];
    std::int32_t pos = level.position[g.image0(level.base_point)];
    if (pos < 0)
      return {std::move(g), l};
    g = g * level.transversal_inverse[static_cast<std::size_t>(pos)];
  }
  return {std::move(g), levels.size()};
}

} // namespace

StabilizerChain StabilizerChain::build(std::size_t degree, std::span<const Permutation> generators)
{
  std::vector<Permutation> gens;
  for (const auto &g : generators) {
    if (g.degree() != degree)
      throw InputError("generator degree " + std::to_string(g.degree()) +
                       " does not match group degree " + std::to_string(degree));
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end())
      gens.push_back(g);
  }

  std::vector<std::uint16_t> moved;
  for (std::size_t p = 0; p < degree; ++p)
    for (const auto &g : gens)
      if (g.image0(p) != p) {
        moved.push_back(static_cast<std::uint16_t>(p));
        break;
      }

  StabilizerChain chain;
  chain.degree_ = degree;
  std::vector<Level> levels(moved.size());
  for (std::size_t i = 0; i < moved.size(); ++i) {
    levels[i].base_point = moved[i];
    for (const auto &g : gens) {
      bool fixes = true;
      for (std::size_t j = 0; j < i && fixes; ++j)
        fixes = g.image0(moved[j]) == moved[j];
      if (fixes)
        levels[i].strong_generators.push_back(g);
    }
    rebuild_orbit(levels[i], degree);
  }

  // Top-down Schreier-Sims: when a Schreier generator at level i fails to
  // sift, its residue is added to levels i+1..j and checking resumes at j.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels.size()) - 1;
  while (i >= 0) {
    auto &level = levels[static_cast<std::size_t>(i)];
    bool restarted = false;
    for (std::size_t k = 0; k < level.orbit.size() && !restarted; ++k) {
      for (std::size_t si = 0; si < level.strong_generators.size(); ++si) {
        const auto &s = level.strong_generators[si];
        std::uint16_t img = s.image0(level.orbit[k]);
        auto pos = static_cast<std::size_t>(level.position[img]);
        Permutation schreier = level.transversal[k] * s * level.transversal_inverse[pos];
        auto [residue, stop] =
            sift_from(levels, std::move(schreier), static_cast<std::size_t>(i) + 1);
        if (residue.is_identity())
          continue;
        // With the base equal to all moved points a nontrivial residue
        // always stops at some level.
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= stop; ++l) {
          levels[l].strong_generators.push_back(residue);
          rebuild_orbit(levels[l], degree);
        }
        i = static_cast<std::ptrdiff_t>(stop);
        restarted = true;
        break;
      }
    }
    if (!restarted)
      --i;
  }

  for (auto &level : levels)
    if (level.orbit.size() > 1)
      chain.levels_.push_back(std::move(level));
  return chain;
}

std::vector<Point> StabilizerChain::base() const
{
  std::vector<Point> out;
  for (const auto &level : levels_)
    out.push_back(level.base_point + 1u);
  return out;
}

std::uint64_t StabilizerChain::order() const
{
  std::uint64_t n = 1;
  for (const auto &level : levels_) {
    std::uint64_t len = level.orbit.size();
    if (n > std::numeric_limits<std::uint64_t>::max() / len)
      throw CapacityError("group order overflows 64 bits");
    n *= len;
  }
  return n;
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g) const
{
  if (g.degree() != degree_)
    throw InputError("degree mismatch in sift");
  return sift_from(levels_, std::move(g), 0);
}

bool StabilizerChain::contains(const Permutation &g) const
{
  return sift(g).first.is_identity();
}

bool StabilizerChain::verify(std::span<const Permutation> generators) const
{
  for (const auto &g : generators)
    if (!contains(g))
      return false;
  for (const auto &level : levels_) {
    for (const auto &s : level.strong_generators)
      if (!contains(s))
        return false;
    for (std::size_t k = 0; k < level.orbit.size(); ++k)
      if (level.transversal[k].image0(level.base_point) != level.orbit[k])
        return false;
  }
  std::uint64_t product = 1;
  for (const auto &level : levels_)
    product *= level.orbit.size();
  return product == order();
}

ElementIndex::ElementIndex(StabilizerChain chain, std::uint64_t cap) : chain_(std::move(chain))
{
  std::uint64_t n = chain_.order();
  if (n > cap)
    throw CapacityError("group order " + std::to_string(n) + " exceeds element cap " +
                        std::to_string(cap));
  if (n > std::numeric_limits<Id>::max())
    throw CapacityError("group order does not fit element ids");

  const auto &levels = chain_.levels();
  elements_.reserve(static_cast<std::size_t>(n));
  // Mixed radix with level 0 most significant; element = u_{k-1} ... u_1 u_0.
  std::vector<std::size_t> digits(levels.size(), 0);
  for (std::uint64_t r = 0; r < n; ++r) {
    Permutation g(chain_.degree());
    for (std::size_t l = levels.size(); l-- > 0;)
      g = g * levels[l].transversal[digits[l]];
    elements_.push_back(std::move(g));
    for (std::size_t l = levels.size(); l-- > 0;) {
      if (++digits[l] < levels[l].orbit.size())
        break;
      digits[l] = 0;
    }
  }

  constexpr std::uint64_t table_limit = 2500;
  if (n <= table_limit) {
    table_.resize(static_cast<std::size_t>(n * n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        table_[a * n + b] = rank(elements_[a] * elements_[b]);
  }

  inverse_.resize(static_cast<std::size_t>(n));
  orders_.resize(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    inverse_[a] = rank(elements_[a].inverse());
    orders_[a] = static_cast<std::uint32_t>(elements_[a].order());
  }
}

std::optional<ElementIndex::Id> ElementIndex::try_rank(const Permutation &g) const
{
  if (g.degree() != chain_.degree())
    return std::nullopt;
  const auto &levels = chain_.levels();
  std::uint64_t r = 0;
  Permutation h = g;
  for (const auto &level : levels) {
    std::int32_t pos = level.position[h.image0(level.base_point)];
    if (pos < 0)
      return std::nullopt;
    r = r * level.orbit.size() + static_cast<std::uint64_t>(pos);
    h = h * level.transversal_inverse[static_cast<std::size_t>(pos)];
  }
  if (!h.is_identity())
    return std::nullopt;
  return static_cast<Id>(r);
}

ElementIndex::Id ElementIndex::rank(const Permutation &g) const
{
  if (g.degree() != chain_.degree())
    throw InputError("degree mismatch: permutation on " + std::to_string(g.degree()) +
                     " points, group on " + std::to_string(chain_.degree()));
  auto r = try_rank(g);
  if (!r)
    throw InputError("permutation " + g.to_cycle_string() + " is not a group element");
  return *r;
}

ElementIndex::Id ElementIndex::pow(Id a, std::uint64_t e) const
{
  Id result = 0;
  Id base = a;
  while (e) {
    if (e & 1u)
      result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

ElementSet ElementIndex::all() const
{
  ElementSet s(size());
  for (std::size_t i = 0; i < size(); ++i)
    s.set(i);
  return s;
}

ElementSet ElementIndex::singleton_identity() const
{
  ElementSet s(size());
  s.set(0);
  return s;
}

namespace detail
{

struct GroupCache
{
  std::once_flag chain_once;
  StabilizerChain chain;
  std::once_flag index_once;
  std::unique_ptr<ElementIndex> index;
};

} // namespace detail

PermGroup::PermGroup() : cache_(std::make_shared<detail::GroupCache>()) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)),
      cache_(std::make_shared<detail::GroupCache>())
{
  if (degree == 0)
    throw InputError("degree must be positive");
  for (const auto &g : generators_)
    if (g.degree() != degree)
      throw InputError("generator " + g.to_cycle_string() + " has degree " +
                       std::to_string(g.degree()) + ", expected " + std::to_string(degree));
}

const StabilizerChain &PermGroup::chain() const
{
  std::call_once(cache_->chain_once,
                 [&] { cache_->chain = StabilizerChain::build(degree_, generators_); });
  return cache_->chain;
}

const ElementIndex &PermGroup::element_index(std::uint64_t cap) const
{
  std::uint64_t n = order();
  if (n > cap)
    throw CapacityError("group order " + std::to_string(n) + " exceeds element cap " +
                        std::to_string(cap) + " (set SUBLAT_ELEMENT_CAP to raise it)");
  std::call_once(cache_->index_once, [&] {
    cache_->index = std::make_unique<ElementIndex>(chain(), std::numeric_limits<std::uint64_t>::max());
  });
  return *cache_->index;
}

bool PermGroup::contains(const Permutation &g) const
{
  if (g.degree() != degree_)
    throw InputError("degree mismatch: permutation on " + std::to_string(g.degree()) +
                     " points, group on " + std::to_string(degree_));
  return chain().contains(g);
}

StabilizerChain build_stabilizer_chain(const PermGroup &group, std::uint64_t cap)
{
  StabilizerChain chain = StabilizerChain::build(group.degree(), group.generators());
  if (chain.order() > cap)
    throw CapacityError("group order " + std::to_string(chain.order()) +
                        " exceeds element cap " + std::to_string(cap));
  return chain;
}

std::uint64_t group_order(const PermGroup &group) { return group.order(); }

bool contains(const PermGroup &group, const Permutation &g) { return group.contains(g); }

bool is_subgroup(const PermGroup &group, const PermGroup &sub)
{
  if (group.degree() != sub.degree())
    throw InputError("degree mismatch between group and subgroup");
  for (const auto &g : sub.generators())
    if (!group.contains(g))
      return false;
  return true;
}

bool same_group(const PermGroup &a, const PermGroup &b)
{
  return is_subgroup(a, b) && is_subgroup(b, a);
}

namespace
{

void require_subgroup(const PermGroup &group, const PermGroup &sub)
{
  if (!is_subgroup(group, sub))
    throw InputError("not a subgroup of the given group");
}

void require_member(const PermGroup &group, const Permutation &g)
{
  if (!group.contains(g))
    throw InputError("permutation " + g.to_cycle_string() + " is not in the group");
}

std::vector<indexed::Id> generator_ids(const ElementIndex &index, const PermGroup &group)
{
  return indexed::ranks(index, group.generators());
}

} // namespace

std::vector<Permutation> coset_representatives(const PermGroup &group, const PermGroup &sub)
{
  require_subgroup(group, sub);
  const auto &index = group.element_index();
  auto reps = indexed::right_coset_representatives(index, index.all(),
                                                   indexed::elements_of(index, sub));
  std::vector<Permutation> out;
  for (auto id : reps)
    out.push_back(index.unrank(id));
  return out;
}

std::vector<ElementClass> conjugacy_classes_elements(const PermGroup &group)
{
  const auto &index = group.element_index();
  auto gens = generator_ids(index, group);
  std::vector<bool> done(index.size(), false);
  std::vector<ElementClass> out;
  for (indexed::Id x = 0; x < index.size(); ++x) {
    if (done[x])
      continue;
    std::vector<indexed::Id> orbit{x};
    done[x] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (auto s : gens) {
        auto y = index.conj(orbit[k], s);
        if (!done[y]) {
          done[y] = true;
          orbit.push_back(y);
        }
      }
    out.push_back({index.unrank(x), orbit.size()});
  }
  return out;
}

PermGroup centralizer(const PermGroup &group, const Permutation &g)
{
  require_member(group, g);
  const auto &index = group.element_index();
  auto c = indexed::centralizer(index, index.all(), index.rank(g));
  return indexed::to_group(index, indexed::generating_set(index, c));
}

std::optional<Permutation> conjugating_element(const PermGroup &group, const Permutation &g,
                                               const Permutation &h)
{
  require_member(group, g);
  require_member(group, h);
  const auto &index = group.element_index();
  auto gens = generator_ids(index, group);
  auto target = index.rank(h);
  std::vector<indexed::Id> orbit{index.rank(g)};
  std::vector<indexed::Id> transversal{0};
  std::vector<bool> seen(index.size(), false);
  seen[orbit[0]] = true;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    if (orbit[k] == target)
      return index.unrank(transversal[k]);
    for (auto s : gens) {
      auto y = index.conj(orbit[k], s);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
        transversal.push_back(index.mul(transversal[k], s));
      }
    }
  }
  return std::nullopt;
}

PermGroup normalizer(const PermGroup &group, const PermGroup &sub)
{
  require_subgroup(group, sub);
  const auto &index = group.element_index();
  auto n = indexed::normalizer(index, indexed::elements_of(index, sub),
                               generator_ids(index, group), index.size());
  return indexed::to_group(index, indexed::generating_set(index, n));
}

bool is_normal(const PermGroup &group, const PermGroup &sub)
{
  require_subgroup(group, sub);
  for (const auto &s : sub.generators())
    for (const auto &x : group.generators())
      if (!sub.contains(s ^ x))
        return false;
  return true;
}

PermGroup derived_subgroup(const PermGroup &group)
{
  const auto &index = group.element_index();
  auto d = indexed::derived_subgroup(index, generator_ids(index, group));
  return indexed::to_group(index, indexed::generating_set(index, d));
}

bool is_solvable(const PermGroup &group)
{
  const auto &index = group.element_index();
  return indexed::perfect_core(index, generator_ids(index, group)).count() == 1;
}

} // namespace sublat
