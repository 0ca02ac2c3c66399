#include <regex>

#include <json.hpp>

#include "doctest.h"
#include "support.hpp"
#include "sublat/export.hpp"
#include "sublat/group_io.hpp"
#include "sublat/latticeops.hpp"

using namespace sublat;
using sublat::test::load;

namespace
{

std::size_t count_of(const std::string &text, const std::string &needle)
{
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

// Structural check of the emitted subset of the graph language.
bool valid_dot(const std::string &text)
{
  static const std::regex header(R"(digraph lattice \{)");
  static const std::regex node(R"(  c\d+(_n\d+)? \[(\w+="[^"]*")(, \w+="[^"]*")*\];)");
  static const std::regex edge(R"(  c\d+(_n\d+)? -> c\d+(_n\d+)?;)");
  static const std::regex rank(R"(  \{ rank="same";( c\d+(_n\d+)?;)+ \})");
  static const std::regex comment(R"(  // .*)");
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || !std::regex_match(line, header))
    return false;
  bool closed = false;
  while (std::getline(in, line)) {
    if (closed)
      return false;
    if (line == "}") {
      closed = true;
      continue;
    }
    if (!std::regex_match(line, node) && !std::regex_match(line, edge) &&
        !std::regex_match(line, rank) && !std::regex_match(line, comment))
      return false;
  }
  return closed;
}

} // namespace

TEST_CASE("DOT golden files")
{
  CHECK(emit_dot(subgroup_lattice(load("c2"))) == "digraph lattice {\n"
                                                  "  c1_n1 [label=\"1\", shape=\"box\"];\n"
                                                  "  c2_n1 [label=\"2\", shape=\"box\"];\n"
                                                  "  c1_n1 -> c2_n1;\n"
                                                  "}\n");
  CHECK(emit_dot(subgroup_lattice(load("s3"))) == "digraph lattice {\n"
                                                  "  c1_n1 [label=\"1\", shape=\"box\"];\n"
                                                  "  c2_n1 [label=\"2-1\", shape=\"circle\"];\n"
                                                  "  c2_n2 [label=\"2-2\", shape=\"circle\"];\n"
                                                  "  c2_n3 [label=\"2-3\", shape=\"circle\"];\n"
                                                  "  c3_n1 [label=\"3\", shape=\"box\"];\n"
                                                  "  c4_n1 [label=\"4\", shape=\"box\"];\n"
                                                  "  c1_n1 -> c2_n1;\n"
                                                  "  c1_n1 -> c2_n2;\n"
                                                  "  c1_n1 -> c2_n3;\n"
                                                  "  c1_n1 -> c3_n1;\n"
                                                  "  c2_n1 -> c4_n1;\n"
                                                  "  c2_n2 -> c4_n1;\n"
                                                  "  c2_n3 -> c4_n1;\n"
                                                  "  c3_n1 -> c4_n1;\n"
                                                  "}\n");
}

TEST_CASE("S4 DOT nodes")
{
  auto lat = subgroup_lattice(load("s4"));
  auto dot = emit_dot(lat);
  CHECK(count_of(dot, "[label=") == 30);
  CHECK(count_of(dot, " -> ") == lat.edges.size());
  // The normal V4 is the order-4 class of length 1.
  std::size_t v4 = 0;
  for (std::size_t c = 0; c < lat.classes.size(); ++c)
    if (lat.classes[c].order == 4 && lat.classes[c].length == 1)
      v4 = c + 1;
  REQUIRE(v4 != 0);
  auto id = "c" + std::to_string(v4) + "_n1";
  CHECK(dot.find("  " + id + " [label=\"" + std::to_string(v4) + "\", shape=\"box\"];") !=
        std::string::npos);
  CHECK(dot.find("label=\"2-3\", shape=\"circle\"") != std::string::npos);
}

TEST_CASE("DOT output is well formed")
{
  for (const auto &name : test::corpus()) {
    CAPTURE(name);
    auto lat = subgroup_lattice(load(name));
    for (bool hints : {false, true}) {
      auto dot = emit_dot(lat, DotOptions{hints});
      CHECK(valid_dot(dot));
      CHECK(count_of(dot, "[label=") == lat.total());
    }
  }
}

TEST_CASE("class-level DOT")
{
  auto lat = subgroup_lattice(load("s4"), 10);
  REQUIRE(lat.class_level);
  auto dot = emit_dot(lat);
  CHECK(valid_dot(dot));
  CHECK(count_of(dot, "[label=") == 11);
  CHECK(count_of(dot, "peripheries=\"2\"") == 7);
  CHECK(count_of(dot, " -> ") == lat.class_edges.size());
}

TEST_CASE("JSON documents")
{
  using nlohmann::json;
  auto trivial = json::parse(emit_json(subgroup_lattice(load("trivial"))));
  CHECK(trivial["class_count"] == 1);
  CHECK(trivial["edges"].empty());

  auto s3 = json::parse(emit_json(subgroup_lattice(load("s3"))));
  std::vector<int> lengths;
  for (const auto &c : s3["classes"])
    lengths.push_back(c["length"]);
  CHECK(lengths == std::vector<int>{1, 3, 1, 1});
  CHECK(s3["edges"].size() == 8);
  CHECK(s3["classes"][3]["normalizer_order"] == 6);

  auto s4 = json::parse(emit_json(subgroup_lattice(load("s4"))));
  int sum = 0;
  for (const auto &c : s4["classes"]) {
    sum += c["length"].get<int>();
    CHECK(c["length"].get<int>() * c["normalizer_order"].get<int>() == 24);
  }
  CHECK(sum == 30);
  CHECK(s4["subgroup_count"] == 30);

  auto raw = emit_json(subgroup_lattice(load("s4")));
  CHECK(raw.find("\"engine\"") < raw.find("\"input_hash\""));
  CHECK(raw.find("\"input_hash\"") < raw.find("\"group\""));
  CHECK(raw.find("\"classes\"") < raw.find("\"edges\""));
}

TEST_CASE("JSON input hash")
{
  auto lat = subgroup_lattice(load("c2"));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  auto a = nlohmann::json::parse(emit_json(lat, "abc"));
  auto b = nlohmann::json::parse(emit_json(lat, "abd"));
  CHECK(a["input_hash"] != b["input_hash"]);
  CHECK(a["input_hash"].get<std::string>().starts_with("fnv1a64:"));
}

TEST_CASE("exports are deterministic")
{
  for (const auto &name : {"s4", "d12", "a5"}) {
    CAPTURE(name);
    auto text = test::read_text(name);
    auto first = subgroup_lattice(parse_group_file(text));
    auto second = subgroup_lattice(parse_group_file(text));
    CHECK(emit_dot(first) == emit_dot(second));
    CHECK(emit_json(first, text) == emit_json(second, text));
  }
}

TEST_CASE("group file round trip")
{
  for (const auto &name : test::corpus()) {
    CAPTURE(name);
    auto g = load(name);
    auto back = parse_group_file(format_group_file(g));
    CHECK(back.order() == g.order());
    CHECK(is_subgroup(g, back));
    CHECK(is_subgroup(back, g));
  }
}
