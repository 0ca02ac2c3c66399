#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sublat.h"

namespace sublat_cli
{

namespace
{

// Failure carrying the exit status and message to print.
struct Failure : std::runtime_error
{
  int code;
  Failure(int code, const std::string &message) : std::runtime_error(message), code(code) {}
};

void check(sublat_status status)
{
  if (status != SUBLAT_OK)
    throw Failure(exit_error, sublat_last_error());
}

struct GroupDeleter
{
  void operator()(sublat_group *g) const { sublat_group_free(g); }
};
struct ListDeleter
{
  void operator()(sublat_group_list *l) const { sublat_group_list_free(l); }
};
struct LatticeDeleter
{
  void operator()(sublat_lattice *l) const { sublat_lattice_free(l); }
};
struct StringDeleter
{
  void operator()(char *s) const { sublat_string_free(s); }
};

using Group = std::unique_ptr<sublat_group, GroupDeleter>;
using GroupList = std::unique_ptr<sublat_group_list, ListDeleter>;
using Lattice = std::unique_ptr<sublat_lattice, LatticeDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

std::string read_file(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Failure(exit_error, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Group load_group(const std::string &text, const std::string &path)
{
  sublat_group *g = nullptr;
  if (sublat_group_from_text(text.c_str(), &g) != SUBLAT_OK)
    throw Failure(exit_error, path + ": " + sublat_last_error());
  return Group(g);
}

std::string take(char *s)
{
  String owned(s);
  return owned.get();
}

struct Options
{
  std::vector<std::string> files;
  std::optional<std::uint64_t> max_order;
  std::optional<std::uint64_t> order_divides;
  std::optional<std::string> predicate;
  std::optional<std::string> dot;
  std::optional<std::string> json;
  std::optional<std::string> perfect_seeds;
  std::optional<std::string> sub;
  std::optional<int> k;
  std::optional<std::uint64_t> max_index;
  std::size_t member_bound = 0;
  std::size_t guard = 0;
  bool verify = false;
  bool rank_hints = false;
};

void add_common(CLI::App *cmd, Options &o)
{
  cmd->add_option("--max-order", o.max_order, "Only subgroups of order at most N");
  cmd->add_option("--order-divides", o.order_divides, "Only subgroups whose order divides N");
  cmd->add_option("--predicate", o.predicate,
                  "abelian, cyclic, nilpotent, solvable or p-group:P");
  cmd->add_option("--dot", o.dot, "Write the lattice in DOT format ('-' for stdout)");
  cmd->add_option("--json", o.json, "Write the lattice as JSON ('-' for stdout)");
  cmd->add_option("--perfect-seeds", o.perfect_seeds,
                  "File of extra perfect subgroups separated by '---' lines");
  cmd->add_option("--member-bound", o.member_bound,
                  "Keep member-level edges up to this many subgroups");
  cmd->add_option("--oracle-guard", o.guard, "Largest group order the oracle accepts");
  cmd->add_flag("--verify", o.verify, "Compare with the brute-force oracle");
  cmd->add_flag("--rank-hints", o.rank_hints, "Group DOT nodes of equal order on one rank");
}

void write_output(const std::string &path, const std::string &text, std::ostream &out)
{
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text))
    throw Failure(exit_error, "cannot write " + path);
}

void print_classes(const sublat_lattice *lat, const std::vector<std::size_t> &which, std::ostream &out)
{
  out << std::setw(5) << "class" << std::setw(10) << "order" << std::setw(8) << "length"
      << std::setw(8) << "normal" << '\n';
  for (auto c : which) {
    sublat_class_info info;
    check(sublat_lattice_class(lat, c, &info));
    out << std::setw(5) << c + 1 << std::setw(10) << info.order << std::setw(8) << info.length
        << std::setw(8) << (info.normal ? "yes" : "no") << '\n';
  }
}

class Runner
{
public:
  // The summary moves to stderr when an export is written to stdout.
  Runner(const Options &o, std::ostream &out, std::ostream &err)
      : o_(o), out_(out), err_(err),
        summary_(o.dot == "-" || o.json == "-" ? err : out)
  {
    sublat_options_init(&opts_);
    if (o.max_order)
      opts_.max_order = *o.max_order;
    if (o.order_divides)
      opts_.order_divides = *o.order_divides;
    if (o.predicate)
      opts_.predicate = o.predicate->c_str();
    if (o.member_bound)
      opts_.member_bound = o.member_bound;
    if (o.perfect_seeds) {
      auto text = read_file(*o.perfect_seeds);
      sublat_group_list *l = nullptr;
      if (sublat_group_list_from_text(text.c_str(), &l) != SUBLAT_OK)
        throw Failure(exit_error, *o.perfect_seeds + ": " + sublat_last_error());
      seeds_.reset(l);
      opts_.perfect_seeds = seeds_.get();
    }
  }

  int lattice(bool solvable)
  {
    auto [input, g] = load(0);
    sublat_lattice *lat = nullptr;
    check(solvable ? sublat_lattice_solvable(g.get(), &opts_, &lat)
                   : sublat_lattice_cyclic(g.get(), &opts_, &lat));
    return finish(Lattice(lat), input);
  }

  int goursat()
  {
    auto [left_text, g] = load(0);
    auto [right_text, h] = load(1);
    sublat_lattice *lat = nullptr;
    check(sublat_lattice_goursat(g.get(), h.get(), &opts_, &lat));
    return finish(Lattice(lat), left_text + right_text);
  }

  int lowlayer()
  {
    auto [input, g] = load(0);
    auto lat = full_lattice(g.get());
    std::size_t count = 0;
    std::uint64_t bound = o_.max_index.value_or(0);
    check(sublat_lattice_low_layer(lat.get(), *o_.k, bound, nullptr, 0, &count));
    std::vector<std::size_t> which(count);
    check(sublat_lattice_low_layer(lat.get(), *o_.k, bound, which.data(), which.size(), &count));
    print_classes(lat.get(), which, summary_);
    summary_ << which.size() << " classes\n";
    return after(lat.get(), input);
  }

  int intermediate()
  {
    auto [input, g] = load(0);
    auto sub_text = read_file(*o_.sub);
    auto sub = load_group(sub_text, *o_.sub);
    auto lat = full_lattice(g.get());
    sublat_group_list *l = nullptr;
    check(sublat_lattice_intermediate(lat.get(), sub.get(), &l));
    GroupList list(l);
    const std::size_t n = sublat_group_list_size(list.get());
    for (std::size_t i = 0; i < n; ++i) {
      sublat_group *v = nullptr;
      check(sublat_group_list_get(list.get(), i, &v));
      Group owned(v);
      std::uint64_t order = 0;
      check(sublat_group_order(v, &order));
      char *gens = nullptr;
      check(sublat_group_generators(v, &gens));
      summary_ << std::setw(10) << order << "  " << take(gens) << '\n';
    }
    summary_ << n << " subgroups\n";
    return after(lat.get(), input);
  }

private:
  std::pair<std::string, Group> load(std::size_t i)
  {
    auto text = read_file(o_.files.at(i));
    auto g = load_group(text, o_.files[i]);
    return {std::move(text), std::move(g)};
  }

  // Lattice queries need all subgroups, so filters are not applied here.
  Lattice full_lattice(const sublat_group *g)
  {
    if (opts_.max_order || opts_.order_divides || opts_.predicate)
      throw Failure(exit_error, "filters are not supported by this subcommand");
    sublat_lattice *lat = nullptr;
    check(sublat_lattice_cyclic(g, &opts_, &lat));
    return Lattice(lat);
  }

  int finish(Lattice lat, const std::string &input)
  {
    const std::size_t n = sublat_lattice_class_count(lat.get());
    std::vector<std::size_t> all(n);
    for (std::size_t c = 0; c < n; ++c)
      all[c] = c;
    print_classes(lat.get(), all, summary_);
    summary_ << n << " classes / " << sublat_lattice_subgroup_count(lat.get()) << " subgroups\n";
    return after(lat.get(), input);
  }

  int after(const sublat_lattice *lat, const std::string &input)
  {
    if (o_.dot) {
      char *s = nullptr;
      check(sublat_lattice_dot(lat, o_.rank_hints ? 1 : 0, &s));
      write_output(*o_.dot, take(s), out_);
    }
    if (o_.json) {
      char *s = nullptr;
      check(sublat_lattice_json(lat, input.data(), input.size(), &s));
      write_output(*o_.json, take(s), out_);
    }
    if (!o_.verify)
      return exit_ok;
    int match = 0;
    char *message = nullptr;
    check(sublat_lattice_verify(lat, &opts_, o_.guard, &match, &message));
    auto text = take(message);
    if (!match) {
      err_ << "verification failed: " << text << '\n';
      return exit_mismatch;
    }
    summary_ << "verified: " << text << '\n';
    return exit_ok;
  }

  const Options &o_;
  std::ostream &out_;
  std::ostream &err_;
  std::ostream &summary_;
  sublat_options opts_;
  GroupList seeds_;
};

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Conjugacy classes of subgroups and subgroup lattices of permutation groups",
               "sublat"};
  app.set_version_flag("--version", std::string(sublat_version()));
  app.require_subcommand(1);

  Options o;
  auto *lattice = app.add_subcommand("lattice", "Classes of subgroups by cyclic extension");
  lattice->add_option("file", o.files, "Group file")->required()->expected(1);
  auto *solvable = app.add_subcommand("solvable", "Classes of subgroups of a solvable group");
  solvable->add_option("file", o.files, "Group file")->required()->expected(1);
  auto *goursat = app.add_subcommand("goursat", "Classes of subgroups of a direct product");
  goursat->add_option("files", o.files, "Group files of the two factors")->required()->expected(2);
  auto *intermediate = app.add_subcommand("intermediate", "Subgroups between a subgroup and the group");
  intermediate->add_option("file", o.files, "Group file")->required()->expected(1);
  intermediate->add_option("--sub", o.sub, "Group file of the subgroup")->required();
  auto *lowlayer = app.add_subcommand("lowlayer", "Classes within k covering steps below the group");
  lowlayer->add_option("file", o.files, "Group file")->required()->expected(1);
  lowlayer->add_option("--k", o.k, "Number of covering steps")->required();
  lowlayer->add_option("--max-index", o.max_index, "Largest index to report");
  for (auto *cmd : {lattice, solvable, goursat, intermediate, lowlayer})
    add_common(cmd, o);

  if (!args.empty() && !args[0].starts_with("-") && !app.get_subcommand_no_throw(args[0])) {
    err << "error: unknown subcommand '" << args[0] << "'\n";
    return exit_error;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion &) {
    out << sublat_version() << '\n';
    return exit_ok;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }

  try {
    Runner run(o, out, err);
    if (lattice->parsed())
      return run.lattice(false);
    if (solvable->parsed())
      return run.lattice(true);
    if (goursat->parsed())
      return run.goursat();
    if (lowlayer->parsed())
      return run.lowlayer();
    return run.intermediate();
  } catch (const Failure &e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
}

} // namespace sublat_cli
