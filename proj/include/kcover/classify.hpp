// Classification of connected coverings with a bounded number of sheets.

#ifndef KCOVER_CLASSIFY_HPP_
#define KCOVER_CLASSIFY_HPP_

#include <cstddef>
#include <memory>
#include <vector>

#include "kcover/coset_table.hpp"
#include "kcover/kgraph.hpp"
#include "kcover/skew.hpp"

namespace kcover {

  struct ClassifiedCovering {
    GroupPresentation pi;
    // Least table in the conjugacy class of H in pi(g, x).
    CosetTable        table;
    SkewProductResult cover;
    std::size_t       deck_order       = 0;
    std::size_t       normalizer_order = 0;  // |N(H) / H|
  };

  // One covering per conjugacy class of subgroups of index at most
  // max_sheets, in (index, table) order.  Each entry is checked to be
  // connected, to have stabiliser table equal to its defining table at
  // x@0, to be non-isomorphic to every other entry, and to have deck group
  // of order |N(H) / H|; a failed check throws InternalError.
  std::vector<ClassifiedCovering>
  classify_coverings(std::shared_ptr<KGraph const> g,
                     VertexIndex                   x,
                     std::size_t                   max_sheets);

}  // namespace kcover

#endif  // KCOVER_CLASSIFY_HPP_
