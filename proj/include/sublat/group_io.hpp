#ifndef SUBLAT_GROUP_IO_HPP
#define SUBLAT_GROUP_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sublat/perm_group.hpp"

namespace sublat
{

/**
 * Text form of a permutation group:
 *
 *     # comment
 *     name: S4            (optional)
 *     degree: 4
 *     gen: (1,2,3,4)
 *     gen: images: [2,1,3,4]
 *
 * Cycles are 1-based and disjoint; fixed points may be omitted. Blank lines
 * and lines starting with '#' are ignored.
 */
struct GroupFile
{
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::optional<std::string> name;

  PermGroup group() const { return PermGroup(degree, generators); }
};

/// Parses either cycle notation "(1,2)(3,4)" or "images: [2,1,4,3]".
Permutation parse_permutation(std::size_t degree, std::string_view text);

GroupFile parse_group_text(std::string_view text);
PermGroup parse_group_file(std::string_view text);
GroupFile read_group_file(const std::filesystem::path &path);

std::string format_group_file(const PermGroup &group, const std::optional<std::string> &name = {});

/// Reads a list of groups separated by lines containing only "---", all
/// sharing the degree of the first block unless they declare their own.
std::vector<PermGroup> parse_group_list(std::string_view text);

} // namespace sublat

#endif
