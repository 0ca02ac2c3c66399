#ifndef SUBLAT_TESTS_SUPPORT_HPP
#define SUBLAT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sublat/group_io.hpp"
#include "sublat/oracle.hpp"
#include "sublat/perm_group.hpp"
#include "sublat/subgroups.hpp"

namespace sublat::test
{

inline std::string data_path(const std::string &name)
{
  return std::string(SUBLAT_TEST_DATA) + "/" + name + ".grp";
}

inline std::string read_text(const std::string &name)
{
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline PermGroup load(const std::string &name) { return read_group_file(data_path(name)).group(); }

inline Permutation perm(std::size_t degree, const std::string &cycles)
{
  return parse_permutation(degree, cycles);
}

inline PermGroup group(std::size_t degree, const std::vector<std::string> &gens)
{
  std::vector<Permutation> perms;
  for (const auto &g : gens)
    perms.push_back(perm(degree, g));
  return PermGroup(degree, std::move(perms));
}

/// The acceptance corpus.
inline const std::vector<std::string> &corpus()
{
  static const std::vector<std::string> names = {"c6",  "s3",   "d8",  "q8", "c2c2c2",
                                                 "a4",  "d12",  "c3c4", "sl23", "s4",
                                                 "f20", "a5",   "s3s3", "s5"};
  return names;
}

/// Re-expresses an engine element set in the oracle's element numbering.
inline BitSet to_oracle(const ElementIndex &index, const OracleLattice &lat, const ElementSet &set)
{
  BitSet out(lat.elements.size());
  set.for_each([&](std::uint32_t i) {
    auto k = lat.find(index.unrank(i));
    if (k == lat.elements.size())
      throw std::logic_error("element outside oracle group");
    out.set(k);
  });
  return out;
}

/// Class-expanded subgroup family, sorted like the oracle's list.
inline std::vector<BitSet> expanded_family(const PermGroup &g,
                                           const std::vector<SubgroupClass> &classes,
                                           const OracleLattice &lat)
{
  const auto &index = g.element_index();
  std::vector<BitSet> out;
  for (const auto &c : classes)
    for (const auto &m : class_members(index, c))
      out.push_back(to_oracle(index, lat, m));
  std::sort(out.begin(), out.end(), [](const BitSet &a, const BitSet &b) {
    if (a.count() != b.count())
      return a.count() < b.count();
    return lex_compare(a, b) < 0;
  });
  return out;
}

/// Seeded generator for property tests.
struct Rng
{
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::uint64_t next() { return engine(); }
  std::size_t below(std::size_t n)
  {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine);
  }
};

} // namespace sublat::test

#endif
