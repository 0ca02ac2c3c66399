#include "sublat.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "sublat/export.hpp"
#include "sublat/goursat.hpp"
#include "sublat/group_io.hpp"
#include "sublat/latticeops.hpp"
#include "sublat/solvlift.hpp"
#include "sublat/verify.hpp"

struct sublat_group
{
  sublat::PermGroup group;
};

struct sublat_group_list
{
  std::vector<sublat::PermGroup> groups;
};

struct sublat_lattice
{
  sublat::SubgroupLattice lattice;
};

namespace
{

thread_local std::string last_error;

sublat_status fail(sublat_status status, const std::string &message)
{
  last_error = message;
  return status;
}

template <class F>
sublat_status guarded(F &&f)
{
  try {
    return f();
  } catch (const sublat::CapacityError &e) {
    return fail(SUBLAT_ERR_CAPACITY, e.what());
  } catch (const sublat::InputError &e) {
    return fail(SUBLAT_ERR_INPUT, e.what());
  } catch (const std::bad_alloc &) {
    return fail(SUBLAT_ERR_CAPACITY, "out of memory");
  } catch (const std::exception &e) {
    return fail(SUBLAT_ERR_INTERNAL, e.what());
  }
}

char *copy_string(const std::string &s)
{
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out)
    throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sublat::LatticeFilter filter_of(const sublat_options *opts)
{
  sublat::LatticeFilter f;
  if (!opts)
    return f;
  if (opts->max_order)
    f.max_order = opts->max_order;
  if (opts->order_divides)
    f.order_divides = opts->order_divides;
  if (opts->predicate)
    f.predicate_id = std::string(opts->predicate);
  f.validate();
  return f;
}

bool filter_active(const sublat::LatticeFilter &f)
{
  return f.max_order || f.order_divides || f.predicate_id;
}

std::size_t member_bound(const sublat_options *opts)
{
  return opts && opts->member_bound ? opts->member_bound : sublat::default_member_bound;
}

sublat_status make_lattice(const sublat::PermGroup &g, std::vector<sublat::SubgroupClass> classes,
                           const sublat::LatticeFilter &filter, const sublat_options *opts,
                           sublat_lattice **out)
{
  auto *h = new sublat_lattice{
      sublat::maximality_edges(g, std::move(classes), member_bound(opts), !filter_active(filter))};
  *out = h;
  return SUBLAT_OK;
}

} // namespace

#define SUBLAT_REQUIRE(cond)                                                                          \
  do {                                                                                             \
    if (!(cond))                                                                                   \
      return fail(SUBLAT_ERR_ARGUMENT, "invalid argument: " #cond);                                \
  } while (0)

extern "C" {

const char *sublat_version(void) { return sublat::engine_version(); }

const char *sublat_last_error(void) { return last_error.c_str(); }

void sublat_string_free(char *s) { std::free(s); }

sublat_status sublat_group_from_text(const char *text, sublat_group **out)
{
  SUBLAT_REQUIRE(text && out);
  return guarded([&] {
    *out = new sublat_group{sublat::parse_group_text(text).group()};
    return SUBLAT_OK;
  });
}

sublat_status sublat_group_from_file(const char *path, sublat_group **out)
{
  SUBLAT_REQUIRE(path && out);
  return guarded([&] {
    *out = new sublat_group{sublat::read_group_file(path).group()};
    return SUBLAT_OK;
  });
}

void sublat_group_free(sublat_group *g) { delete g; }

sublat_status sublat_group_degree(const sublat_group *g, size_t *out)
{
  SUBLAT_REQUIRE(g && out);
  *out = g->group.degree();
  return SUBLAT_OK;
}

sublat_status sublat_group_order(const sublat_group *g, uint64_t *out)
{
  SUBLAT_REQUIRE(g && out);
  return guarded([&] {
    *out = g->group.order();
    return SUBLAT_OK;
  });
}

sublat_status sublat_group_to_text(const sublat_group *g, char **out)
{
  SUBLAT_REQUIRE(g && out);
  return guarded([&] {
    *out = copy_string(sublat::format_group_file(g->group));
    return SUBLAT_OK;
  });
}

sublat_status sublat_group_generators(const sublat_group *g, char **out)
{
  SUBLAT_REQUIRE(g && out);
  return guarded([&] {
    std::string s;
    for (const auto &x : g->group.generators()) {
      if (!s.empty())
        s += ' ';
      s += x.to_cycle_string();
    }
    *out = copy_string(s.empty() ? "()" : s);
    return SUBLAT_OK;
  });
}

sublat_status sublat_group_list_from_text(const char *text, sublat_group_list **out)
{
  SUBLAT_REQUIRE(text && out);
  return guarded([&] {
    auto list = std::make_unique<sublat_group_list>();
    list->groups = sublat::parse_group_list(text);
    *out = list.release();
    return SUBLAT_OK;
  });
}

void sublat_group_list_free(sublat_group_list *list) { delete list; }

size_t sublat_group_list_size(const sublat_group_list *list) { return list ? list->groups.size() : 0; }

sublat_status sublat_group_list_get(const sublat_group_list *list, size_t i, sublat_group **out)
{
  SUBLAT_REQUIRE(list && out && i < list->groups.size());
  return guarded([&] {
    *out = new sublat_group{list->groups[i]};
    return SUBLAT_OK;
  });
}

void sublat_options_init(sublat_options *opts)
{
  if (opts)
    *opts = sublat_options{0, 0, nullptr, nullptr, sublat::default_member_bound};
}

sublat_status sublat_lattice_cyclic(const sublat_group *g, const sublat_options *opts,
                                    sublat_lattice **out)
{
  SUBLAT_REQUIRE(g && out);
  return guarded([&] {
    sublat::LatticeOptions o;
    o.filter = filter_of(opts);
    if (opts && opts->perfect_seeds)
      for (const auto &s : opts->perfect_seeds->groups) {
        if (s.degree() != g->group.degree())
          throw sublat::InputError("perfect seed has degree " + std::to_string(s.degree()) +
                                   ", group has degree " + std::to_string(g->group.degree()));
        o.perfect_seeds.push_back(s);
      }
    auto classes = sublat::lattice_cyclic_extension(g->group, o);
    return make_lattice(g->group, std::move(classes), o.filter, opts, out);
  });
}

sublat_status sublat_lattice_solvable(const sublat_group *g, const sublat_options *opts,
                                      sublat_lattice **out)
{
  SUBLAT_REQUIRE(g && out);
  return guarded([&] {
    auto filter = filter_of(opts);
    auto classes = sublat::subgroups_solvable(g->group, filter);
    return make_lattice(g->group, std::move(classes), filter, opts, out);
  });
}

sublat_status sublat_lattice_goursat(const sublat_group *g, const sublat_group *h,
                                     const sublat_options *opts, sublat_lattice **out)
{
  SUBLAT_REQUIRE(g && h && out);
  return guarded([&] {
    auto filter = filter_of(opts);
    auto product = sublat::direct_product(g->group, h->group);
    auto classes = sublat::goursat_classes(product);
    if (filter_active(filter)) {
      const auto &index = product.group.element_index();
      std::erase_if(classes, [&](const sublat::SubgroupClass &c) {
        return !filter.admits(index, c.representative_elements);
      });
    }
    return make_lattice(product.group, std::move(classes), filter, opts, out);
  });
}

void sublat_lattice_free(sublat_lattice *lat) { delete lat; }

sublat_status sublat_lattice_group(const sublat_lattice *lat, sublat_group **out)
{
  SUBLAT_REQUIRE(lat && out);
  return guarded([&] {
    *out = new sublat_group{lat->lattice.group};
    return SUBLAT_OK;
  });
}

size_t sublat_lattice_class_count(const sublat_lattice *lat)
{
  return lat ? lat->lattice.classes.size() : 0;
}

uint64_t sublat_lattice_subgroup_count(const sublat_lattice *lat)
{
  return lat ? lat->lattice.total() : 0;
}

int sublat_lattice_is_class_level(const sublat_lattice *lat)
{
  return lat && lat->lattice.class_level ? 1 : 0;
}

size_t sublat_lattice_edge_count(const sublat_lattice *lat)
{
  if (!lat)
    return 0;
  return lat->lattice.class_level ? lat->lattice.class_edges.size() : lat->lattice.edges.size();
}

sublat_status sublat_lattice_class(const sublat_lattice *lat, size_t cls, sublat_class_info *out)
{
  SUBLAT_REQUIRE(lat && out && cls < lat->lattice.classes.size());
  return guarded([&] {
    const auto &c = lat->lattice.classes[cls];
    *out = sublat_class_info{c.order, c.length, c.normalizer.order(),
                             lat->lattice.normal[cls] ? 1 : 0};
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_representative(const sublat_lattice *lat, size_t cls, sublat_group **out)
{
  SUBLAT_REQUIRE(lat && out && cls < lat->lattice.classes.size());
  return guarded([&] {
    *out = new sublat_group{lat->lattice.classes[cls].representative};
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_dot(const sublat_lattice *lat, int rank_hints, char **out)
{
  SUBLAT_REQUIRE(lat && out);
  return guarded([&] {
    sublat::DotOptions o;
    o.rank_hints = rank_hints != 0;
    *out = copy_string(sublat::emit_dot(lat->lattice, o));
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_json(const sublat_lattice *lat, const char *input, size_t input_size,
                                  char **out)
{
  SUBLAT_REQUIRE(lat && out && (input || input_size == 0));
  return guarded([&] {
    std::string_view in = input ? std::string_view(input, input_size) : std::string_view();
    *out = copy_string(sublat::emit_json(lat->lattice, in));
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_verify(const sublat_lattice *lat, const sublat_options *opts,
                                    size_t guard, int *match, char **message)
{
  SUBLAT_REQUIRE(lat && match);
  return guarded([&] {
    auto report = sublat::verify_against_oracle(lat->lattice, filter_of(opts),
                                                guard ? guard : sublat::default_oracle_guard);
    *match = report.match ? 1 : 0;
    if (message)
      *message = copy_string(report.message + " (engine " + std::to_string(report.engine_classes) +
                             " classes / " + std::to_string(report.engine_subgroups) +
                             " subgroups, oracle " + std::to_string(report.oracle_classes) +
                             " classes / " + std::to_string(report.oracle_subgroups) + " subgroups)");
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_check(const sublat_lattice *lat, int *ok)
{
  SUBLAT_REQUIRE(lat && ok);
  return guarded([&] {
    *ok = sublat::verify_lattice(lat->lattice) ? 1 : 0;
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_low_layer(const sublat_lattice *lat, int k, uint64_t max_index,
                                       size_t *indices, size_t capacity, size_t *count)
{
  SUBLAT_REQUIRE(lat && count && (indices || capacity == 0));
  return guarded([&] {
    std::optional<std::uint64_t> bound;
    if (max_index)
      bound = max_index;
    auto found = sublat::low_layer_indices(lat->lattice, k, bound);
    for (std::size_t i = 0; i < found.size() && i < capacity; ++i)
      indices[i] = found[i];
    *count = found.size();
    return SUBLAT_OK;
  });
}

sublat_status sublat_lattice_intermediate(const sublat_lattice *lat, const sublat_group *sub,
                                          sublat_group_list **out)
{
  SUBLAT_REQUIRE(lat && sub && out);
  return guarded([&] {
    if (!sublat::is_subgroup(lat->lattice.group, sub->group))
      throw sublat::InputError("not a subgroup of the group");
    auto list = std::make_unique<sublat_group_list>();
    list->groups = sublat::intermediate_subgroups(lat->lattice, sub->group);
    *out = list.release();
    return SUBLAT_OK;
  });
}

} // extern "C"
