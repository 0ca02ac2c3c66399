#ifndef SUBLAT_H
#define SUBLAT_H

/*
 * C interface to the subgroup lattice engine.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions return a status code; on failure
 * sublat_last_error() describes the problem for the calling thread until
 * its next failing call. Strings returned through char ** outputs are
 * released with sublat_string_free. Class and member indices are 0-based.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SUBLAT_API __declspec(dllexport)
#else
#define SUBLAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sublat_status
{
  SUBLAT_OK = 0,
  SUBLAT_ERR_INPUT = 1,     /* malformed input, invalid filter, non-solvable group, ... */
  SUBLAT_ERR_CAPACITY = 2,  /* element cap or oracle guard exceeded */
  SUBLAT_ERR_ARGUMENT = 3,  /* null handle or index out of range */
  SUBLAT_ERR_INTERNAL = 4
} sublat_status;

typedef struct sublat_group sublat_group;
typedef struct sublat_group_list sublat_group_list;
typedef struct sublat_lattice sublat_lattice;

SUBLAT_API const char *sublat_version(void);
SUBLAT_API const char *sublat_last_error(void);
SUBLAT_API void sublat_string_free(char *s);

/* Groups */
SUBLAT_API sublat_status sublat_group_from_text(const char *text, sublat_group **out);
SUBLAT_API sublat_status sublat_group_from_file(const char *path, sublat_group **out);
SUBLAT_API void sublat_group_free(sublat_group *g);
SUBLAT_API sublat_status sublat_group_degree(const sublat_group *g, size_t *out);
SUBLAT_API sublat_status sublat_group_order(const sublat_group *g, uint64_t *out);
/* The group in the group file format. */
SUBLAT_API sublat_status sublat_group_to_text(const sublat_group *g, char **out);
/* Generators in cycle notation, separated by single spaces; "()" if none. */
SUBLAT_API sublat_status sublat_group_generators(const sublat_group *g, char **out);

/* Group lists: blocks in the group file format separated by "---" lines. */
SUBLAT_API sublat_status sublat_group_list_from_text(const char *text, sublat_group_list **out);
SUBLAT_API void sublat_group_list_free(sublat_group_list *list);
SUBLAT_API size_t sublat_group_list_size(const sublat_group_list *list);
/* A new handle for element i. */
SUBLAT_API sublat_status sublat_group_list_get(const sublat_group_list *list, size_t i,
                                               sublat_group **out);

typedef struct sublat_options
{
  uint64_t max_order;     /* 0: no limit */
  uint64_t order_divides; /* 0: no constraint */
  const char *predicate;  /* NULL or "abelian", "cyclic", "nilpotent", "solvable", "p-group:P" */
  const sublat_group_list *perfect_seeds; /* NULL or extra perfect subgroups */
  size_t member_bound;    /* member-level edges up to this many subgroups */
} sublat_options;

SUBLAT_API void sublat_options_init(sublat_options *opts);

/* Lattices */
SUBLAT_API sublat_status sublat_lattice_cyclic(const sublat_group *g, const sublat_options *opts,
                                               sublat_lattice **out);
SUBLAT_API sublat_status sublat_lattice_solvable(const sublat_group *g, const sublat_options *opts,
                                                 sublat_lattice **out);
/* Lattice of the direct product of g and h, built by Goursat's construction. */
SUBLAT_API sublat_status sublat_lattice_goursat(const sublat_group *g, const sublat_group *h,
                                                const sublat_options *opts, sublat_lattice **out);
SUBLAT_API void sublat_lattice_free(sublat_lattice *lat);

/* The ambient group of the lattice. */
SUBLAT_API sublat_status sublat_lattice_group(const sublat_lattice *lat, sublat_group **out);
SUBLAT_API size_t sublat_lattice_class_count(const sublat_lattice *lat);
SUBLAT_API uint64_t sublat_lattice_subgroup_count(const sublat_lattice *lat);
/* Nonzero when edges are only available between classes. */
SUBLAT_API int sublat_lattice_is_class_level(const sublat_lattice *lat);
/* Member-level edges, or class-level edges in class-level mode. */
SUBLAT_API size_t sublat_lattice_edge_count(const sublat_lattice *lat);

typedef struct sublat_class_info
{
  uint64_t order;
  uint64_t length;
  uint64_t normalizer_order;
  int normal;
} sublat_class_info;

SUBLAT_API sublat_status sublat_lattice_class(const sublat_lattice *lat, size_t cls,
                                              sublat_class_info *out);
SUBLAT_API sublat_status sublat_lattice_representative(const sublat_lattice *lat, size_t cls,
                                                       sublat_group **out);

SUBLAT_API sublat_status sublat_lattice_dot(const sublat_lattice *lat, int rank_hints, char **out);
/* `input` (may be NULL) is hashed into the document. */
SUBLAT_API sublat_status sublat_lattice_json(const sublat_lattice *lat, const char *input,
                                             size_t input_size, char **out);

/* Compares with the brute-force oracle under the filter of `opts` (may be
 * NULL). *match is set to 1 or 0; *message (may be NULL) receives a short
 * explanation. A guard of 0 selects the default. */
SUBLAT_API sublat_status sublat_lattice_verify(const sublat_lattice *lat, const sublat_options *opts,
                                               size_t guard, int *match, char **message);
/* Internal consistency checks; *ok is set to 1 or 0. */
SUBLAT_API sublat_status sublat_lattice_check(const sublat_lattice *lat, int *ok);

/* Classes at covering distance 1..k below the group (the group itself for
 * k = 0) with index at most max_index (0: no bound). Writes up to
 * `capacity` class indices and the total number to *count. */
SUBLAT_API sublat_status sublat_lattice_low_layer(const sublat_lattice *lat, int k, uint64_t max_index,
                                                  size_t *indices, size_t capacity, size_t *count);

/* All V with sub < V < group. */
SUBLAT_API sublat_status sublat_lattice_intermediate(const sublat_lattice *lat, const sublat_group *sub,
                                                     sublat_group_list **out);

#ifdef __cplusplus
}
#endif

#endif
