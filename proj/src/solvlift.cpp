#include "sublat/solvlift.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <unordered_set>

#include "sublat/indexed.hpp"

namespace sublat
{

using indexed::Id;

namespace
{

constexpr std::uint32_t no_code = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t lift_guard = std::uint64_t{1} << 20;

std::uint32_t smallest_prime_factor(std::uint64_t n)
{
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return static_cast<std::uint32_t>(d);
  return static_cast<std::uint32_t>(n);
}

std::uint32_t gf_inverse(std::uint32_t a, std::uint32_t p)
{
  std::uint64_t result = 1, base = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1)
      result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

/// Reduces v against RREF rows; returns the remainder.
GFVector reduce(GFVector v, const std::vector<GFVector> &rows, std::uint32_t p)
{
  for (const auto &r : rows) {
    std::size_t pivot = 0;
    while (r[pivot] == 0)
      ++pivot;
    std::uint64_t c = v[pivot];
    if (c == 0)
      continue;
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = static_cast<std::uint32_t>((v[i] + (p - c) * r[i]) % p);
  }
  return v;
}

bool is_zero(const GFVector &v)
{
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

GFVector times(const GFVector &v, const GFMatrix &m, std::uint32_t p)
{
  GFVector out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      out[j] = static_cast<std::uint32_t>((out[j] + std::uint64_t{v[i]} * m[i][j]) % p);
  }
  return out;
}

/// Elementary abelian factor N/M inside an indexed group, with a fixed
/// basis and the coordinate code of every element of N.
struct Layer
{
  std::uint32_t p = 0;
  std::size_t rank = 0;
  std::vector<Id> basis;
  std::vector<std::uint32_t> code;    // per element id; no_code outside N
  std::vector<Id> element_of_code;    // a representative per code

  GFVector coordinates(Id x) const
  {
    GFVector v(rank);
    std::uint32_t c = code[x];
    for (std::size_t i = 0; i < rank; ++i) {
      v[i] = c % p;
      c /= p;
    }
    return v;
  }

  std::uint32_t encode(const GFVector &v) const
  {
    std::uint32_t c = 0;
    for (std::size_t i = rank; i-- > 0;)
      c = c * p + v[i];
    return c;
  }

  GFMatrix matrix(const ElementIndex &index, Id a) const
  {
    GFMatrix m;
    for (auto b : basis)
      m.push_back(coordinates(index.conj(b, a)));
    return m;
  }
};

bool is_elementary_abelian_factor(const ElementIndex &index, const ElementSet &n, const ElementSet &m,
                                  std::uint32_t p)
{
  auto gens = indexed::generating_set(index, n);
  for (auto x : gens) {
    if (!m.test(index.pow(x, p)))
      return false;
    for (auto y : gens)
      if (!m.test(index.mul(index.mul(index.inv(x), index.inv(y)), index.mul(x, y))))
        return false;
  }
  return true;
}

/// Prime of an elementary abelian factor N/M; throws InputError otherwise.
std::uint32_t factor_prime(const ElementIndex &index, const ElementSet &n, const ElementSet &m)
{
  if (!m.is_subset_of(n))
    throw InputError("M is not contained in N");
  std::uint64_t q = n.count() / m.count();
  if (q == 1)
    return 0;
  std::uint32_t p = smallest_prime_factor(q);
  if (p_part(q, p) != q || !is_elementary_abelian_factor(index, n, m, p))
    throw InputError("factor is not elementary abelian");
  return p;
}

Layer make_layer(const ElementIndex &index, const ElementSet &n, const ElementSet &m, std::uint32_t p)
{
  Layer layer;
  layer.p = p;
  ElementSet span = m;
  std::vector<Id> span_gens = indexed::generating_set(index, m);
  n.for_each([&](Id x) {
    if (span.test(x))
      return;
    layer.basis.push_back(x);
    indexed::extend_closure(index, span, span_gens, x);
  });
  layer.rank = layer.basis.size();
  std::size_t q = n.count() / m.count();
  layer.code.assign(index.size(), no_code);
  layer.element_of_code.resize(q);
  std::vector<Id> members = m.members();
  for (std::uint32_t c = 0; c < q; ++c) {
    Id e = 0;
    std::uint32_t rest = c;
    for (std::size_t i = 0; i < layer.rank; ++i) {
      e = index.mul(e, index.pow(layer.basis[i], rest % p));
      rest /= p;
    }
    layer.element_of_code[c] = e;
    for (auto y : members)
      layer.code[index.mul(y, e)] = c;
  }
  return layer;
}

void check_normal(const ElementIndex &index, const ElementSet &sub, std::span<const Id> by,
                  const char *what)
{
  auto gens = indexed::generating_set(index, sub);
  for (auto x : by)
    if (!indexed::normalizes(index, sub, gens, x))
      throw InputError(std::string(what) + " is not normal");
}

/// Spins a list of vectors to the smallest invariant subspace containing
/// them.
Subspace spin(std::vector<GFVector> seeds, const std::vector<GFMatrix> &action, std::uint32_t p)
{
  Subspace s = row_reduce(std::move(seeds), p);
  for (std::size_t k = 0; k < s.rows.size();) {
    bool grown = false;
    for (const auto &m : action) {
      GFVector image = times(s.rows[k], m, p);
      if (!is_zero(reduce(image, s.rows, p))) {
        auto rows = s.rows;
        rows.push_back(std::move(image));
        s = row_reduce(std::move(rows), p);
        grown = true;
        break;
      }
    }
    k = grown ? 0 : k + 1;
  }
  return s;
}

std::vector<Subspace> submodules_of(std::uint32_t p, std::size_t rank,
                                    const std::vector<GFMatrix> &action)
{
  std::set<Subspace> found{Subspace{}};
  std::vector<Subspace> list{Subspace{}};
  auto add = [&](Subspace s) {
    if (found.insert(s).second)
      list.push_back(std::move(s));
  };
  // Cyclic submodules, one seed per line.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < rank; ++i)
    total *= p;
  for (std::uint64_t c = 1; c < total; ++c) {
    GFVector v(rank);
    std::uint64_t rest = c;
    for (std::size_t i = 0; i < rank; ++i) {
      v[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    std::size_t lead = 0;
    while (v[lead] == 0)
      ++lead;
    if (v[lead] != 1)
      continue;
    add(spin({v}, action, p));
  }
  // Every submodule is a sum of cyclic ones.
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      auto rows = list[i].rows;
      rows.insert(rows.end(), list[j].rows.begin(), list[j].rows.end());
      add(row_reduce(std::move(rows), p));
    }
  std::vector<Subspace> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const Subspace &a, const Subspace &b) {
    return a.dimension() < b.dimension();
  });
  return out;
}

ElementSet subspace_group(const ElementIndex &index, const Layer &layer, const ElementSet &m,
                          const Subspace &s)
{
  ElementSet b = m;
  auto gens = indexed::generating_set(index, m);
  for (const auto &row : s.rows)
    indexed::extend_closure(index, b, gens, layer.element_of_code[layer.encode(row)]);
  return b;
}

/// Complements to N/B in A/B as full preimages, up to N-conjugacy.
std::vector<ElementSet> complements(const ElementIndex &index, const ElementSet &a,
                                    const ElementSet &n, const ElementSet &b)
{
  std::vector<Id> lifts;
  std::vector<std::uint64_t> targets;
  ElementSet span = n;
  std::vector<Id> span_gens = indexed::generating_set(index, n);
  a.for_each([&](Id x) {
    if (span.test(x))
      return;
    lifts.push_back(x);
    indexed::extend_closure(index, span, span_gens, x);
    targets.push_back(span.count() / n.count() * b.count());
  });

  std::vector<Id> cosets = indexed::right_coset_representatives(index, n, b);
  std::uint64_t work = 1;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    work *= cosets.size();
    if (work > lift_guard)
      throw CapacityError("complement search exceeds 2^20 candidate lifts");
  }

  std::vector<ElementSet> found;
  struct Frame
  {
    ElementSet set;
    std::vector<Id> gens;
  };
  std::vector<Frame> stack{{b, indexed::generating_set(index, b)}};
  std::vector<std::size_t> choice{0};
  while (!choice.empty()) {
    std::size_t depth = choice.size() - 1;
    if (depth == lifts.size()) {
      found.push_back(stack.back().set);
      choice.pop_back();
      stack.pop_back();
      continue;
    }
    if (choice.back() == cosets.size()) {
      choice.pop_back();
      stack.pop_back();
      continue;
    }
    Id g = index.mul(lifts[depth], cosets[choice.back()++]);
    Frame next = stack.back();
    indexed::extend_closure(index, next.set, next.gens, g);
    if (next.set.count() != targets[depth])
      continue;
    stack.push_back(std::move(next));
    choice.push_back(0);
  }

  auto ngens = indexed::generating_set(index, n);
  std::unordered_set<ElementSet, BitSetHash> seen;
  std::vector<ElementSet> out;
  for (auto &s : found) {
    if (seen.contains(s))
      continue;
    for (auto &c : indexed::conjugation_orbit(index, s, ngens).members)
      seen.insert(std::move(c));
    out.push_back(std::move(s));
  }
  return out;
}

/// Series as element sets; empty when the group is not solvable.
struct SeriesSets
{
  std::vector<ElementSet> terms;
  std::vector<std::uint32_t> primes;
};

SeriesSets series_sets(const PermGroup &group)
{
  const auto &index = group.element_index();
  auto gens = indexed::ranks(index, group.generators());
  auto derived = indexed::derived_series(index, gens);
  if (derived.back().count() != 1)
    throw InputError("group is not solvable");
  SeriesSets s;
  s.terms.push_back(derived.front());
  for (std::size_t i = 0; i + 1 < derived.size(); ++i) {
    const ElementSet &k = derived[i + 1];
    auto kgens = indexed::generating_set(index, k);
    ElementSet m = derived[i];
    while (m.count() != k.count()) {
      std::uint32_t p = smallest_prime_factor(m.count() / k.count());
      ElementSet next = k;
      auto next_gens = kgens;
      for (auto x : indexed::generating_set(index, m))
        indexed::extend_closure(index, next, next_gens, index.pow(x, p));
      s.terms.push_back(next);
      s.primes.push_back(p);
      m = std::move(next);
    }
  }
  return s;
}

} // namespace

GFMatrix gf_multiply(const GFMatrix &a, const GFMatrix &b, std::uint32_t p)
{
  GFMatrix out;
  for (const auto &row : a)
    out.push_back(times(row, b, p));
  return out;
}

Subspace row_reduce(std::vector<GFVector> rows, std::uint32_t p)
{
  Subspace s;
  if (rows.empty())
    return s;
  std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0)
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[r], rows[pivot]);
    std::uint64_t inv = gf_inverse(rows[r][c], p);
    for (auto &x : rows[r])
      x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      std::uint64_t f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + (p - f) * rows[r][j]) % p);
    }
    ++r;
  }
  rows.resize(r);
  s.rows = std::move(rows);
  return s;
}

ElementaryAbelianSeries elementary_abelian_series(const PermGroup &group)
{
  const auto &index = group.element_index();
  SeriesSets sets = series_sets(group);
  ElementaryAbelianSeries out;
  for (const auto &t : sets.terms)
    out.terms.push_back(indexed::to_group(index, indexed::generating_set(index, t)));
  out.primes = sets.primes;
  for (std::size_t i = 0; i + 1 < sets.terms.size(); ++i) {
    std::size_t q = sets.terms[i].count() / sets.terms[i + 1].count(), r = 0;
    while (q > 1) {
      q /= sets.primes[i];
      ++r;
    }
    out.ranks.push_back(r);
  }
  return out;
}

namespace
{

struct ModuleSets
{
  ElementSet n;
  ElementSet m;
  std::vector<Id> acting;
};

ModuleSets module_sets(const PermGroup &a, const PermGroup &n, const PermGroup &m)
{
  const auto &index = a.element_index();
  ModuleSets s{indexed::elements_of(index, n), indexed::elements_of(index, m),
               indexed::ranks(index, a.generators())};
  check_normal(index, s.n, s.acting, "N");
  check_normal(index, s.m, s.acting, "M");
  return s;
}

} // namespace

LayerModule layer_module(const PermGroup &a, const PermGroup &n, const PermGroup &m)
{
  const auto &index = a.element_index();
  ModuleSets s = module_sets(a, n, m);
  std::uint32_t p = factor_prime(index, s.n, s.m);
  LayerModule out;
  out.prime = p;
  out.acting = a.generators();
  if (p == 0) {
    out.action.assign(s.acting.size(), GFMatrix{});
    return out;
  }
  Layer layer = make_layer(index, s.n, s.m, p);
  out.rank = layer.rank;
  for (auto b : layer.basis)
    out.basis.push_back(index.unrank(b));
  for (auto x : s.acting)
    out.action.push_back(layer.matrix(index, x));
  return out;
}

GFVector layer_coordinates(const PermGroup &a, const PermGroup &n, const PermGroup &m,
                           const LayerModule &module, const Permutation &x)
{
  const auto &index = a.element_index();
  ModuleSets s = module_sets(a, n, m);
  if (module.rank == 0)
    return {};
  Layer layer = make_layer(index, s.n, s.m, module.prime);
  auto id = index.try_rank(x);
  if (!id || layer.code[*id] == no_code)
    throw InputError("element outside N");
  return layer.coordinates(*id);
}

std::vector<Subspace> submodules(const LayerModule &module)
{
  if (module.rank == 0)
    return {Subspace{}};
  return submodules_of(module.prime, module.rank, module.action);
}

std::vector<PermGroup> complements_in_layer(const PermGroup &a, const PermGroup &n,
                                            const PermGroup &b)
{
  const auto &index = a.element_index();
  ModuleSets s = module_sets(a, n, b);
  factor_prime(index, s.n, s.m);
  std::vector<PermGroup> out;
  for (const auto &c : complements(index, index.all(), s.n, s.m))
    out.push_back(indexed::to_group(index, indexed::generating_set(index, c)));
  return out;
}

std::vector<SubgroupClass> subgroups_solvable(const PermGroup &group, const LatticeFilter &filter)
{
  filter.validate();
  const auto &index = group.element_index();
  SeriesSets series = series_sets(group);
  ZuppoTable zt(index);
  auto gens = indexed::ranks(index, group.generators());

  std::vector<ElementSet> layer_reps{index.all()};
  for (std::size_t i = 0; i + 1 < series.terms.size(); ++i) {
    const ElementSet &n = series.terms[i];
    const ElementSet &m = series.terms[i + 1];
    Layer layer = make_layer(index, n, m, series.primes[i]);
    bool last = i + 2 == series.terms.size();
    std::unordered_set<BitSet, BitSetHash> known;
    std::vector<ElementSet> next;
    for (const auto &a : layer_reps) {
      std::vector<GFMatrix> action;
      for (auto x : indexed::generating_set(index, a))
        action.push_back(layer.matrix(index, x));
      for (const auto &sub : submodules_of(layer.p, layer.rank, action)) {
        ElementSet b = subspace_group(index, layer, m, sub);
        for (auto &s : complements(index, a, n, b)) {
          if (!filter.admits_order(s.count() / m.count()))
            continue;
          if (last && !filter.admits(index, s))
            continue;
          if (known.contains(zt.signature(s).bits))
            continue;
          for (const auto &c : indexed::conjugation_orbit(index, s, gens).members)
            known.insert(zt.signature(c).bits);
          next.push_back(std::move(s));
        }
      }
    }
    layer_reps = std::move(next);
  }
  if (series.terms.size() == 1 && !filter.admits(index, layer_reps.front()))
    layer_reps.clear();
  return detail::finalize_classes(group, zt, layer_reps);
}

} // namespace sublat
