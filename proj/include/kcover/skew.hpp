// Skew products by finite groups and coset spaces, universal covers,
// Gross-Tucker cocycle extraction and the k-tree test.

#ifndef KCOVER_SKEW_HPP_
#define KCOVER_SKEW_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "kcover/coset_table.hpp"
#include "kcover/coverings.hpp"
#include "kcover/fundamental.hpp"
#include "kcover/kgraph.hpp"
#include "kcover/realization.hpp"

namespace kcover {

  struct SkewProductResult {
    std::shared_ptr<KGraph const> product;
    CoveringMap                   covering;
    // Fibre labels: group elements for skew_product, right cosets of H for
    // relative_skew_product (coset i stands for the left coset w_i^-1 H).
    CosetTable table;
    // Right action of `group`, maps[g] sending (lambda, k) to (lambda, k g).
    // Absent for relative skew products by non-normal subgroups.
    std::optional<AutomorphismGroup>      action;
    std::optional<FiniteGroupRealization> group;
  };

  // Vertices x@g, edges a@g from (s(a), g) to (r(a), eta(a) g).  Throws
  // TargetMismatch or CocycleInvalid.
  SkewProductResult skew_product(std::shared_ptr<KGraph const> g,
                                 Cocycle const&                c,
                                 FiniteGroupRealization const& r);

  // Vertices x@i for the cosets of H in the cocycle's target, edges moving
  // cosets by left multiplication.  Uses h.table when present, otherwise
  // enumerates.  Throws CosetOverflow or CocycleInvalid.
  SkewProductResult relative_skew_product(std::shared_ptr<KGraph const> g,
                                          Cocycle const&                c,
                                          SubgroupData const&           h,
                                          std::size_t                   max_cosets);

  // Relative skew product by the trivial subgroup of pi(g, x) for the
  // canonical cocycle; every stabiliser is checked to be trivial.
  SkewProductResult universal_cover(std::shared_ptr<KGraph const> g,
                                    VertexIndex                   x,
                                    std::size_t                   max_cosets);

  struct GrossTuckerResult {
    QuotientResult         quotient;
    FiniteGroupRealization group;
    // element_of_map[i] is the group element acting as group.maps[i].
    std::vector<GroupElement> element_of_map;
    Cocycle                   cocycle;
    SkewProductResult         skew;
    // Covering isomorphism from the skew product onto sigma.
    GraphMap isomorphism;
  };

  // Quotients sigma by a free group of automorphisms and recovers it as a
  // skew product of the quotient.  When `r` is given, maps[i] must act as
  // element i of r; otherwise a presentation is read off the Cayley graph.
  GrossTuckerResult
  gross_tucker(std::shared_ptr<KGraph const>        sigma,
               AutomorphismGroup const&             group,
               std::optional<FiniteGroupRealization> r          = std::nullopt,
               std::size_t                          max_cosets = 10000);

  // Presentation with one generator per element needed to generate, named
  // g<i> after the element index, relators from the Cayley graph.
  GroupPresentation cayley_presentation(AutomorphismGroup const& group);

  enum class KTreeAnswer { yes, no, unknown };

  KTreeAnswer is_ktree(KGraph const& g, std::size_t max_cosets);

  // eta(edge of colour c) = e_c, reduced modulo `moduli` when given.
  Cocycle degree_cocycle(std::shared_ptr<KGraph const>            g,
                         std::optional<std::vector<std::int64_t>> moduli
                         = std::nullopt);

}  // namespace kcover

#endif  // KCOVER_SKEW_HPP_
