#include "sublat/export.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sublat
{

const char *engine_version() { return SUBLAT_VERSION; }

std::string fnv1a_hex(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace
{

std::string node_id(std::size_t cls, std::size_t member)
{
  return "c" + std::to_string(cls + 1) + "_n" + std::to_string(member + 1);
}

} // namespace

std::string emit_dot(const SubgroupLattice &lattice, const DotOptions &options)
{
  std::ostringstream out;
  out << "digraph lattice {\n";
  if (lattice.class_level) {
    out << "  // class-level graph: one node per conjugacy class; peripheries=2 marks classes\n"
           "  // with several members; an edge joins classes whose members are covering pairs\n";
    for (std::size_t c = 0; c < lattice.classes.size(); ++c) {
      out << "  c" << c + 1 << " [label=\"" << c + 1 << "\", shape=\""
          << (lattice.normal[c] ? "box" : "circle") << "\"";
      if (!lattice.normal[c])
        out << ", peripheries=\"2\"";
      out << "];\n";
    }
    if (options.rank_hints) {
      std::map<std::uint64_t, std::vector<std::size_t>> by_order;
      for (std::size_t c = 0; c < lattice.classes.size(); ++c)
        by_order[lattice.classes[c].order].push_back(c);
      for (const auto &[order, list] : by_order) {
        out << "  { rank=\"same\";";
        for (auto c : list)
          out << " c" << c + 1 << ";";
        out << " }\n";
      }
    }
    for (const auto &e : lattice.class_edges)
      out << "  c" << e.lower + 1 << " -> c" << e.upper + 1 << ";\n";
    out << "}\n";
    return out.str();
  }

  for (std::size_t c = 0; c < lattice.classes.size(); ++c)
    for (std::size_t j = 0; j < lattice.classes[c].length; ++j) {
      out << "  " << node_id(c, j) << " [label=\"" << c + 1;
      if (!lattice.normal[c])
        out << "-" << j + 1;
      out << "\", shape=\"" << (lattice.normal[c] ? "box" : "circle") << "\"];\n";
    }
  if (options.rank_hints) {
    std::map<std::uint64_t, std::vector<std::size_t>> by_order;
    for (std::size_t c = 0; c < lattice.classes.size(); ++c)
      by_order[lattice.classes[c].order].push_back(c);
    for (const auto &[order, list] : by_order) {
      out << "  { rank=\"same\";";
      for (auto c : list)
        for (std::size_t j = 0; j < lattice.classes[c].length; ++j)
          out << " " << node_id(c, j) << ";";
      out << " }\n";
    }
  }
  for (const auto &e : lattice.edges)
    out << "  " << node_id(e.lower_class, e.lower_member) << " -> "
        << node_id(e.upper_class, e.upper_member) << ";\n";
  out << "}\n";
  return out.str();
}

std::string emit_json(const SubgroupLattice &lattice, std::string_view input)
{
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["engine"] = {{"name", "sublat"}, {"version", engine_version()}};
  doc["input_hash"] = "fnv1a64:" + fnv1a_hex(input);

  ordered_json group;
  group["degree"] = lattice.group.degree();
  group["order"] = lattice.group.order();
  ordered_json gens = ordered_json::array();
  for (const auto &g : lattice.group.generators())
    gens.push_back(g.to_cycle_string());
  group["generators"] = std::move(gens);
  doc["group"] = std::move(group);

  doc["complete"] = lattice.complete;
  doc["class_count"] = lattice.classes.size();
  doc["subgroup_count"] = lattice.total();

  ordered_json classes = ordered_json::array();
  for (std::size_t c = 0; c < lattice.classes.size(); ++c) {
    const auto &cls = lattice.classes[c];
    ordered_json entry;
    entry["index"] = c + 1;
    entry["order"] = cls.order;
    entry["length"] = cls.length;
    entry["normalizer_order"] = cls.normalizer.order();
    entry["normal"] = static_cast<bool>(lattice.normal[c]);
    ordered_json rep = ordered_json::array();
    for (const auto &g : cls.representative.generators())
      rep.push_back(g.to_cycle_string());
    entry["generators"] = std::move(rep);
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);

  doc["edge_mode"] = lattice.class_level ? "class" : "member";
  ordered_json edges = ordered_json::array();
  if (lattice.class_level) {
    for (const auto &e : lattice.class_edges)
      edges.push_back({{"lower", e.lower + 1}, {"upper", e.upper + 1}, {"count", e.count}});
  } else {
    for (const auto &e : lattice.edges)
      edges.push_back({{"lower", {e.lower_class + 1, e.lower_member + 1}},
                       {"upper", {e.upper_class + 1, e.upper_member + 1}}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

} // namespace sublat
