#include "sublat/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sublat
{

OracleReport verify_against_oracle(const SubgroupLattice &lattice, const LatticeFilter &filter,
                                   std::size_t guard)
{
  const auto &index = lattice.group.element_index();
  OracleLattice oracle = oracle_lattice(lattice.group, guard);

  // Oracle subgroups admitted by the filter, as engine element sets.
  auto to_engine = [&](const BitSet &s) {
    ElementSet e(index.size());
    s.for_each([&](std::uint32_t i) { e.set(index.rank(oracle.elements[i])); });
    return e;
  };
  std::map<ElementSet, std::size_t> wanted;
  std::vector<BitSet> kept;
  for (const auto &s : oracle.subgroups) {
    ElementSet e = to_engine(s);
    if (filter.admits(index, e)) {
      wanted.emplace(std::move(e), kept.size());
      kept.push_back(s);
    }
  }
  OracleLattice filtered{oracle.elements, kept};

  OracleReport r;
  r.engine_subgroups = lattice.total();
  r.oracle_subgroups = kept.size();
  r.engine_classes = lattice.classes.size();
  r.oracle_classes = oracle_class_count(filtered);

  std::set<ElementSet> engine(lattice.members.begin(), lattice.members.end());
  std::set<ElementSet> expected;
  for (const auto &[e, i] : wanted)
    expected.insert(e);
  if (engine.size() != lattice.members.size()) {
    r.message = "engine lists a subgroup twice";
    return r;
  }
  if (engine != expected) {
    std::size_t missing = 0, extra = 0;
    for (const auto &e : expected)
      missing += !engine.contains(e);
    for (const auto &e : engine)
      extra += !expected.contains(e);
    r.message = std::to_string(missing) + " subgroups missing, " + std::to_string(extra) +
                " not in the oracle";
    return r;
  }
  if (r.engine_classes != r.oracle_classes) {
    r.message = "class counts differ";
    return r;
  }

  if (!lattice.class_level) {
    r.edges_checked = true;
    auto pairs = oracle_covering_pairs(filtered);
    std::set<std::pair<std::size_t, std::size_t>> want(pairs.begin(), pairs.end());
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto &e : lattice.edges)
      got.emplace(wanted.at(lattice.member(e.lower_class, e.lower_member)),
                  wanted.at(lattice.member(e.upper_class, e.upper_member)));
    if (got != want) {
      r.message = "covering edges differ";
      return r;
    }
  }
  r.match = true;
  r.message = "ok";
  return r;
}

} // namespace sublat
