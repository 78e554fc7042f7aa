/* C interface to the kcover library.
 *
 * Every function returns a kc_status.  On failure the name and witness of
 * the error are available from kc_last_error_name / kc_last_error_detail
 * until the next call on the same thread.  Handles returned through out
 * parameters are owned by the caller and released with the matching
 * kc_*_free; strings are released with kc_string_free.  A NULL base vertex
 * selects the least vertex id.
 */

#ifndef KCOVER_KCOVER_H_
#define KCOVER_KCOVER_H_

#include <stddef.h>

#if defined(KCOVER_BUILDING_LIBRARY)
#define KC_API __attribute__((visibility("default")))
#else
#define KC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kc_status {
  KC_OK = 0,
  KC_BAD_SQUARE,
  KC_NOT_BIJECTIVE,
  KC_FACTORIZATION_FAILURE,
  KC_NOT_COMPOSABLE,
  KC_DEGREE_MISMATCH,
  KC_NOT_CONNECTED,
  KC_TARGET_MISMATCH,
  KC_NOT_FUNCTORIAL,
  KC_NOT_LOCALLY_INJECTIVE,
  KC_NOT_LOCALLY_SURJECTIVE,
  KC_NOT_SURJECTIVE,
  KC_SQUARE_BROKEN,
  KC_BASEPOINT_MISMATCH,
  KC_NOT_FREE,
  KC_NOT_CLOSED,
  KC_COSET_OVERFLOW,
  KC_COCYCLE_INVALID,
  KC_PARSE_ERROR,
  KC_INVALID_ARGUMENT,
  KC_INTERNAL_ERROR
} kc_status;

typedef enum kc_ktree { KC_KTREE_NO = 0, KC_KTREE_YES = 1, KC_KTREE_UNKNOWN = 2 } kc_ktree;

typedef struct kc_kgraph        kc_kgraph;
typedef struct kc_cocycle       kc_cocycle;
typedef struct kc_covering      kc_covering;
typedef struct kc_covering_list kc_covering_list;

KC_API const char* kc_status_name(kc_status status);
KC_API const char* kc_last_error_name(void);
KC_API const char* kc_last_error_detail(void);
KC_API void        kc_string_free(char* s);

/* k-graphs */
KC_API kc_status kc_kgraph_load(const char* path, kc_kgraph** out);
KC_API kc_status kc_kgraph_parse(const char* text, kc_kgraph** out);
KC_API void      kc_kgraph_free(kc_kgraph* g);
KC_API kc_status kc_kgraph_format(const kc_kgraph* g, char** out);
KC_API kc_status kc_kgraph_counts(const kc_kgraph* g,
                                  size_t*          rank,
                                  size_t*          vertices,
                                  size_t*          edges,
                                  size_t*          squares);
KC_API kc_status kc_kgraph_is_connected(const kc_kgraph* g, int* out);

/* Fundamental group: the presentation and its abelianisation as text. */
KC_API kc_status kc_fundamental_group(const kc_kgraph* g,
                                      const char*      base,
                                      int              keep_tree,
                                      char**           presentation,
                                      char**           abelianization);
KC_API kc_status kc_is_ktree(const kc_kgraph* g, size_t max_cosets, kc_ktree* out);

/* Cocycles */
KC_API kc_status kc_cocycle_load(const char* path, const kc_kgraph* g, kc_cocycle** out);
KC_API void      kc_cocycle_free(kc_cocycle* c);
KC_API kc_status kc_cocycle_format(const kc_cocycle* c, char** out);
KC_API kc_status kc_canonical_cocycle(const kc_kgraph* g, const char* base, kc_cocycle** out);
KC_API kc_status kc_degree_cocycle(const kc_kgraph* g,
                                   const long long* moduli,
                                   size_t           num_moduli,
                                   kc_cocycle**     out);

/* Coverings */
KC_API kc_status kc_covering_load(const char* path, kc_covering** out);
KC_API void      kc_covering_free(kc_covering* p);
KC_API kc_status kc_covering_domain(const kc_covering* p, kc_kgraph** out);
KC_API kc_status kc_covering_codomain(const kc_covering* p, kc_kgraph** out);
KC_API kc_status kc_covering_sheets(const kc_covering* p, size_t* out);
/* Cover file text naming the given domain and codomain files. */
KC_API kc_status kc_covering_format(const kc_covering* p,
                                    const char*        domain_file,
                                    const char*        codomain_file,
                                    char**             out);

KC_API kc_status kc_skew_product(const kc_kgraph*  g,
                                 const kc_cocycle* c,
                                 size_t            max_cosets,
                                 kc_covering**     out);
/* Subgroup generators are words over the cocycle's target generators. */
KC_API kc_status kc_relative_skew_product(const kc_kgraph*  g,
                                          const kc_cocycle* c,
                                          const char* const* subgroup,
                                          size_t            num_subgroup,
                                          size_t            max_cosets,
                                          kc_covering**     out);
KC_API kc_status kc_universal_cover(const kc_kgraph* g,
                                    const char*      base,
                                    size_t           max_cosets,
                                    kc_covering**    out);

KC_API kc_status kc_stabilizer(const kc_covering* p, const char* vertex, char** report);
KC_API kc_status kc_deck_group(const kc_covering* p,
                               size_t*            order,
                               int*               transitive,
                               size_t*            normalizer_order);
/* Quotient of the covering space by the deck group: the orbit map and the
 * induced covering of the base. */
KC_API kc_status kc_quotient_by_deck(const kc_covering* p,
                                     kc_covering**      orbit_map,
                                     kc_covering**      induced);
/* Gross-Tucker for the deck group acting on the covering space: the
 * cocycle on the quotient, its skew product and the isomorphism from the
 * skew product onto the covering space (as a one-sheeted covering). */
KC_API kc_status kc_gross_tucker_deck(const kc_covering* p,
                                      size_t             max_cosets,
                                      kc_cocycle**       cocycle,
                                      kc_covering**      skew,
                                      kc_covering**      isomorphism);

/* *exists is set to 0 when there is no such map; otherwise *map is a cover
 * style listing of vertex and edge images. */
KC_API kc_status kc_covering_morphism(const kc_covering* p,
                                      const kc_covering* q,
                                      const char*        v,
                                      const char*        u,
                                      int*               exists,
                                      char**             map);
KC_API kc_status kc_covering_isomorphism(const kc_covering* p,
                                         const kc_covering* q,
                                         int*               exists,
                                         char**             map);

/* Classification of connected coverings with at most max_sheets sheets. */
KC_API kc_status kc_classify(const kc_kgraph*   g,
                             const char*        base,
                             size_t             max_sheets,
                             kc_covering_list** out);
KC_API void      kc_covering_list_free(kc_covering_list* l);
KC_API size_t    kc_covering_list_size(const kc_covering_list* l);
KC_API kc_status kc_covering_list_at(const kc_covering_list* l, size_t i, kc_covering** out);
/* Cross-check certificate: defining table, stabiliser agreement and deck
 * group order against |N(H)/H|. */
KC_API kc_status kc_covering_list_certificate(const kc_covering_list* l,
                                              size_t                  i,
                                              char**                  out);

#ifdef __cplusplus
}
#endif

#endif /* KCOVER_KCOVER_H_ */
