#include "sublat/goursat.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "sublat/indexed.hpp"

namespace sublat
{

using indexed::Id;

namespace
{

constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

Permutation shifted(const Permutation &h, std::size_t offset, std::size_t degree)
{
  std::vector<std::uint16_t> img(degree);
  for (std::size_t i = 0; i < degree; ++i)
    img[i] = static_cast<std::uint16_t>(i);
  for (std::size_t i = 0; i < h.degree(); ++i)
    img[offset + i] = static_cast<std::uint16_t>(offset + h.image0(i));
  return Permutation::from_zero_based(std::move(img));
}

Permutation restricted(const Permutation &x, std::size_t offset, std::size_t degree)
{
  std::vector<std::uint16_t> img(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    auto y = x.image0(offset + i);
    if (y < offset || y >= offset + degree)
      throw InputError("permutation does not preserve the factor's points");
    img[i] = static_cast<std::uint16_t>(y - offset);
  }
  return Permutation::from_zero_based(std::move(img));
}

} // namespace

Permutation DirectProduct::embed_left(const Permutation &g) const
{
  return g.extended(group.degree());
}

Permutation DirectProduct::embed_right(const Permutation &h) const
{
  return shifted(h, left.degree(), group.degree());
}

Permutation DirectProduct::pair(const Permutation &g, const Permutation &h) const
{
  return embed_left(g) * embed_right(h);
}

Permutation DirectProduct::project_left(const Permutation &x) const
{
  return restricted(x, 0, left.degree());
}

Permutation DirectProduct::project_right(const Permutation &x) const
{
  return restricted(x, left.degree(), right.degree());
}

PermGroup DirectProduct::project_left(const PermGroup &sub) const
{
  std::vector<Permutation> gens;
  for (const auto &x : sub.generators())
    gens.push_back(project_left(x));
  return PermGroup(left.degree(), std::move(gens));
}

PermGroup DirectProduct::project_right(const PermGroup &sub) const
{
  std::vector<Permutation> gens;
  for (const auto &x : sub.generators())
    gens.push_back(project_right(x));
  return PermGroup(right.degree(), std::move(gens));
}

DirectProduct direct_product(const PermGroup &g, const PermGroup &h)
{
  DirectProduct p{PermGroup(), g, h};
  std::size_t degree = g.degree() + h.degree();
  std::vector<Permutation> gens;
  for (const auto &x : g.generators())
    gens.push_back(x.extended(degree));
  for (const auto &y : h.generators())
    gens.push_back(shifted(y, g.degree(), degree));
  p.group = PermGroup(degree, std::move(gens));
  return p;
}

FactorGroup::FactorGroup(const PermGroup &a, const PermGroup &d) : ambient_(a)
{
  if (a.degree() != d.degree() || !is_subgroup(a, d))
    throw InputError("D is not a subgroup of A");
  const auto &index = a.element_index();
  ElementSet ds = indexed::elements_of(index, d);
  auto dgens = indexed::ranks(index, d.generators());
  for (auto x : indexed::ranks(index, a.generators()))
    if (!indexed::normalizes(index, ds, dgens, x))
      throw InputError("D is not normal in A");
  build(index.all(), ds);
}

FactorGroup::FactorGroup(const PermGroup &ambient, const ElementSet &a, const ElementSet &d)
    : ambient_(ambient)
{
  build(a, d);
}

void FactorGroup::build(const ElementSet &a, const ElementSet &d)
{
  const auto &index = ambient_.element_index();
  coset_of_id_.assign(index.size(), none);
  a.for_each([&](Id x) {
    if (coset_of_id_[x] != none)
      return;
    auto c = static_cast<std::uint32_t>(rep_ids_.size());
    rep_ids_.push_back(x);
    d.for_each([&](Id y) { coset_of_id_[index.mul(y, x)] = c; });
  });
  std::size_t n = rep_ids_.size();
  for (auto r : rep_ids_)
    reps_.push_back(index.unrank(r));
  table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table_[i * n + j] = coset_of_id_[index.mul(rep_ids_[i], rep_ids_[j])];

  orders_.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t k = 1, y = x;
    while (y != 0) {
      y = mul(y, x);
      ++k;
    }
    orders_[x] = x == 0 ? 1 : k;
  }

  std::vector<std::uint32_t> inverse(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (mul(x, y) == 0) {
        inverse[x] = y;
        break;
      }

  // Greedy generating set, preferring elements of large order.
  std::vector<std::uint32_t> by_order(n);
  for (std::uint32_t x = 0; x < n; ++x)
    by_order[x] = x;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](auto x, auto y) { return orders_[x] > orders_[y]; });
  std::vector<char> span(n, 0);
  span[0] = 1;
  std::vector<std::uint32_t> members{0};
  for (auto x : by_order) {
    if (span[x])
      continue;
    generators_.push_back(x);
    std::vector<std::uint32_t> queue = members;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (auto g : generators_) {
        auto y = mul(queue[k], g);
        if (!span[y]) {
          span[y] = 1;
          queue.push_back(y);
        }
      }
    members = std::move(queue);
    if (members.size() == n)
      break;
  }

  class_sizes_.assign(n, 0);
  std::vector<char> seen(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (seen[x])
      continue;
    std::vector<std::uint32_t> orbit{x};
    seen[x] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (auto g : generators_) {
        auto y = mul(mul(inverse[g], orbit[k]), g);
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
    for (auto y : orbit)
      class_sizes_[y] = orbit.size();
  }
}

const Permutation &FactorGroup::representative(std::uint32_t coset) const
{
  return reps_.at(coset);
}

std::uint32_t FactorGroup::coset_of(const Permutation &g) const
{
  auto id = ambient_.element_index().try_rank(g);
  if (!id || coset_of_id_[*id] == none)
    throw InputError("element outside the factor group's numerator");
  return coset_of_id_[*id];
}

namespace
{

/// Extends generator images to a map on the generated subgroup; fails if
/// the assignment is not an injective homomorphism there.
bool extend_map(const FactorGroup &q1, const FactorGroup &q2, const std::vector<std::uint32_t> &gens,
                const std::vector<std::uint32_t> &images, std::vector<std::uint32_t> &map)
{
  map.assign(q1.order(), none);
  std::vector<char> used(q2.order(), 0);
  map[0] = 0;
  used[0] = 1;
  std::vector<std::uint32_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto x = queue[k];
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto y = q1.mul(x, gens[i]);
      auto fy = q2.mul(map[x], images[i]);
      if (map[y] == none) {
        if (used[fy])
          return false;
        map[y] = fy;
        used[fy] = 1;
        queue.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

void search(const FactorGroup &q1, const FactorGroup &q2,
            const std::vector<std::vector<std::uint32_t>> &candidates, std::vector<std::uint32_t> &images,
            std::vector<Isomorphism> &out)
{
  const auto &gens = q1.generators();
  std::vector<std::uint32_t> map;
  if (images.size() == gens.size()) {
    if (extend_map(q1, q2, gens, images, map))
      out.push_back(Isomorphism{gens, images, std::move(map)});
    return;
  }
  std::vector<std::uint32_t> prefix(gens.begin(), gens.begin() + images.size() + 1);
  for (auto c : candidates[images.size()]) {
    images.push_back(c);
    if (extend_map(q1, q2, prefix, images, map))
      search(q1, q2, candidates, images, out);
    images.pop_back();
  }
}

using Profile = std::map<std::pair<std::uint32_t, std::uint64_t>, std::size_t>;

Profile profile(const FactorGroup &q)
{
  Profile p;
  for (std::uint32_t x = 0; x < q.order(); ++x)
    ++p[{q.element_order(x), q.class_size(x)}];
  return p;
}

} // namespace

std::vector<Isomorphism> isomorphisms(const FactorGroup &q1, const FactorGroup &q2)
{
  std::vector<Isomorphism> out;
  if (q1.order() != q2.order() || profile(q1) != profile(q2))
    return out;
  if (q1.order() == 1) {
    out.push_back(Isomorphism{{}, {}, {0}});
    return out;
  }
  std::vector<std::vector<std::uint32_t>> candidates;
  for (auto g : q1.generators()) {
    std::vector<std::uint32_t> c;
    for (std::uint32_t y = 0; y < q2.order(); ++y)
      if (q2.element_order(y) == q1.element_order(g) && q2.class_size(y) == q1.class_size(g))
        c.push_back(y);
    candidates.push_back(std::move(c));
  }
  std::vector<std::uint32_t> images;
  search(q1, q2, candidates, images, out);
  return out;
}

std::vector<Isomorphism> isomorphisms(const PermGroup &g, const PermGroup &h)
{
  return isomorphisms(FactorGroup(g, PermGroup::trivial(g.degree())),
                      FactorGroup(h, PermGroup::trivial(h.degree())));
}

PermGroup GoursatDatum::subgroup(const DirectProduct &product) const
{
  std::vector<Permutation> gens;
  for (const auto &x : a.generators()) {
    const auto &y = target->representative(chi(source->coset_of(x)));
    gens.push_back(product.pair(x, y));
  }
  for (const auto &x : d.generators())
    gens.push_back(product.embed_left(x));
  for (const auto &y : e.generators())
    gens.push_back(product.embed_right(y));
  return PermGroup(product.group.degree(), std::move(gens));
}

namespace
{

struct Side
{
  std::vector<PermGroup> groups;
  std::vector<ElementSet> sets;
  // normal_in[i]: indices j with sets[j] normal in sets[i]
  std::vector<std::vector<std::size_t>> normal_in;
};

Side prepare(const PermGroup &g, const std::vector<PermGroup> &subs)
{
  const auto &index = g.element_index();
  Side s;
  std::unordered_set<ElementSet, BitSetHash> seen;
  std::vector<std::vector<Id>> gens;
  for (const auto &u : subs) {
    ElementSet e = indexed::elements_of(index, u);
    if (!seen.insert(e).second)
      continue;
    s.groups.push_back(u);
    s.sets.push_back(std::move(e));
    gens.push_back(indexed::ranks(index, u.generators()));
  }
  s.normal_in.resize(s.sets.size());
  for (std::size_t i = 0; i < s.sets.size(); ++i)
    for (std::size_t j = 0; j < s.sets.size(); ++j) {
      if (!s.sets[j].is_subset_of(s.sets[i]))
        continue;
      bool normal = std::all_of(gens[i].begin(), gens[i].end(), [&](Id x) {
        return indexed::normalizes(index, s.sets[j], gens[j], x);
      });
      if (normal)
        s.normal_in[i].push_back(j);
    }
  return s;
}

} // namespace

std::vector<GoursatDatum> goursat_data(const PermGroup &g, const PermGroup &h,
                                       const std::vector<PermGroup> &subs_g,
                                       const std::vector<PermGroup> &subs_h)
{
  Side left = prepare(g, subs_g);
  Side right = prepare(h, subs_h);

  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const FactorGroup>> lq, rq;
  auto quotient = [](auto &cache, const PermGroup &amb, const Side &s, std::size_t i, std::size_t j) {
    auto &slot = cache[{i, j}];
    if (!slot)
      slot = std::make_shared<const FactorGroup>(amb, s.sets[i], s.sets[j]);
    return slot;
  };

  std::vector<GoursatDatum> out;
  for (std::size_t i = 0; i < left.sets.size(); ++i)
    for (std::size_t k = 0; k < right.sets.size(); ++k)
      for (auto j : left.normal_in[i])
        for (auto l : right.normal_in[k]) {
          if (left.sets[i].count() * right.sets[l].count() !=
              left.sets[j].count() * right.sets[k].count())
            continue;
          auto src = quotient(lq, g, left, i, j);
          auto dst = quotient(rq, h, right, k, l);
          for (auto &chi : isomorphisms(*src, *dst))
            out.push_back(GoursatDatum{left.groups[i], right.groups[k], left.groups[j], right.groups[l],
                                       src, dst, std::move(chi)});
        }
  std::stable_sort(out.begin(), out.end(),
                   [](const GoursatDatum &x, const GoursatDatum &y) { return x.order() < y.order(); });
  return out;
}

std::vector<PermGroup> goursat_subgroups(const PermGroup &g, const PermGroup &h,
                                         const std::vector<PermGroup> &subs_g,
                                         const std::vector<PermGroup> &subs_h)
{
  auto product = direct_product(g, h);
  std::vector<PermGroup> out;
  for (const auto &datum : goursat_data(g, h, subs_g, subs_h))
    out.push_back(datum.subgroup(product));
  return out;
}

std::vector<PermGroup> expand_classes(const PermGroup &group,
                                      const std::vector<SubgroupClass> &classes)
{
  const auto &index = group.element_index();
  std::vector<PermGroup> out;
  for (const auto &c : classes)
    for (auto t : c.transversal_ids) {
      std::vector<Permutation> gens;
      const auto &x = index.unrank(t);
      for (const auto &s : c.representative.generators())
        gens.push_back(s ^ x);
      out.emplace_back(group.degree(), std::move(gens));
    }
  return out;
}

std::vector<SubgroupClass> goursat_classes(const DirectProduct &product)
{
  auto subs_g = expand_classes(product.left, lattice_cyclic_extension(product.left));
  auto subs_h = expand_classes(product.right, lattice_cyclic_extension(product.right));
  auto subs = goursat_subgroups(product.left, product.right, subs_g, subs_h);

  const auto &index = product.group.element_index();
  ZuppoTable zt(index);
  auto gens = indexed::ranks(index, product.group.generators());
  std::unordered_set<BitSet, BitSetHash> known;
  std::vector<ElementSet> reps;
  for (const auto &s : subs) {
    ElementSet e = indexed::elements_of(index, s);
    if (known.contains(zt.signature(e).bits))
      continue;
    for (const auto &m : indexed::conjugation_orbit(index, e, gens).members)
      known.insert(zt.signature(m).bits);
    reps.push_back(std::move(e));
  }
  return detail::finalize_classes(product.group, zt, reps);
}

} // namespace sublat
