#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using sublat_cli::run_cli;

namespace
{

std::string data_path(const std::string &name)
{
  return std::string(SUBLAT_TEST_DATA) + "/" + name + ".grp";
}

struct Run
{
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string> &args)
{
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string &name, const std::string &text = {})
{
  auto p = std::filesystem::temp_directory_path() / ("sublat_cli_test_" + name);
  if (!text.empty())
    std::ofstream(p) << text;
  return p;
}

std::string slurp(const std::filesystem::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string &text)
{
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

} // namespace

TEST_CASE("lattice with verification")
{
  auto r = run({"lattice", data_path("s4"), "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("11 classes / 30 subgroups") != std::string::npos);
  CHECK(r.out.find("verified: ok") != std::string::npos);
  CHECK(r.out.starts_with("class     order  length  normal\n"
                          "    1         1       1     yes\n"));
}

TEST_CASE("summary table")
{
  auto r = run({"lattice", data_path("s3")});
  CHECK(r.code == 0);
  CHECK(r.out == "class     order  length  normal\n"
                 "    1         1       1     yes\n"
                 "    2         2       3      no\n"
                 "    3         3       1     yes\n"
                 "    4         6       1     yes\n"
                 "4 classes / 6 subgroups\n");
}

TEST_CASE("lowlayer")
{
  auto r = run({"lowlayer", data_path("s4"), "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 classes") != std::string::npos);
  CHECK(lines(r.out) == 5);
  r = run({"lowlayer", data_path("s4"), "--k", "2", "--max-index", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("6 classes") != std::string::npos);
  CHECK(run({"lowlayer", data_path("s4")}).code == 1);
  CHECK(run({"lowlayer", data_path("s4"), "--k", "-1"}).code == 1);
}

TEST_CASE("solvable")
{
  auto r = run({"solvable", data_path("a5")});
  CHECK(r.code == 1);
  CHECK(r.err.find("not solvable") != std::string::npos);
  r = run({"solvable", data_path("sl23"), "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("7 classes / 15 subgroups") != std::string::npos);
}

TEST_CASE("goursat")
{
  auto r = run({"goursat", data_path("c2"), data_path("c2"), "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("5 classes / 5 subgroups") != std::string::npos);
  CHECK(run({"goursat", data_path("c2")}).code == 1);
}

TEST_CASE("intermediate")
{
  auto sub = temp_file("c5.grp", "degree: 5\ngen: (1,2,3,4,5)\n");
  auto r = run({"intermediate", data_path("s5"), "--sub", sub.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 subgroups") != std::string::npos);
  CHECK(r.out.find("        10  ") != std::string::npos);
  CHECK(r.out.find("        20  ") != std::string::npos);
  CHECK(r.out.find("        60  ") != std::string::npos);
  auto bad = temp_file("bad.grp", "degree: 5\ngen: (1,2)\n");
  CHECK(run({"intermediate", data_path("a5"), "--sub", bad.string()}).code == 1);
}

TEST_CASE("filters")
{
  auto r = run({"lattice", data_path("s4"), "--max-order", "4", "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("7 classes / 21 subgroups") != std::string::npos);
  r = run({"lattice", data_path("s4"), "--predicate", "nonabelian"});
  CHECK(r.code == 1);
  CHECK(r.err.find("not inherited") != std::string::npos);
  r = run({"lattice", data_path("s4"), "--predicate", "abelian", "--verify"});
  CHECK(r.code == 0);
  CHECK(run({"lowlayer", data_path("s4"), "--k", "1", "--max-order", "4"}).code == 1);
}

TEST_CASE("exports")
{
  auto dot = temp_file("s3.dot");
  auto json = temp_file("s3.json");
  auto r = run({"lattice", data_path("s3"), "--dot", dot.string(), "--json", json.string()});
  CHECK(r.code == 0);
  CHECK(slurp(dot).starts_with("digraph lattice {\n"));
  CHECK(slurp(json).find("\"class_count\": 4") != std::string::npos);

  // Exports on stdout move the summary to stderr.
  r = run({"lattice", data_path("c2"), "--dot", "-"});
  CHECK(r.out.starts_with("digraph lattice {\n"));
  CHECK(r.err.find("2 classes / 2 subgroups") != std::string::npos);

  auto first = run({"lattice", data_path("s4"), "--json", "-", "--rank-hints", "--dot", "-"});
  auto second = run({"lattice", data_path("s4"), "--json", "-", "--rank-hints", "--dot", "-"});
  CHECK(first.out == second.out);
  CHECK(first.out.find("rank=\"same\"") != std::string::npos);
}

TEST_CASE("perfect seeds")
{
  auto seeds = temp_file("seeds.grp", "degree: 5\ngen: (1,2,3)\ngen: (3,4,5)\n");
  auto r = run({"lattice", data_path("a5"), "--perfect-seeds", seeds.string(), "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("9 classes / 59 subgroups") != std::string::npos);
  CHECK(run({"lattice", data_path("s4"), "--perfect-seeds", seeds.string()}).code == 1);
}

TEST_CASE("verification options")
{
  auto r = run({"lattice", data_path("s4"), "--member-bound", "5", "--verify"});
  CHECK(r.code == 0);
  r = run({"lattice", data_path("s4"), "--verify", "--oracle-guard", "10"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error: ") == 0);
}

TEST_CASE("usage errors")
{
  auto r = run({"bogus"});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown subcommand") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"lattice"}).code == 1);
  CHECK(run({"lattice", "/nonexistent.grp"}).code == 1);
  CHECK(run({"lattice", data_path("s4"), "--no-such-flag"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.1.0\n");
}
