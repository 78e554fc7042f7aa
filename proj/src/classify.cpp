#include "kcover/classify.hpp"

#include <string>

#include "kcover/coverings.hpp"
#include "kcover/error.hpp"
#include "kcover/fundamental.hpp"

namespace kcover {

  std::vector<ClassifiedCovering>
  classify_coverings(std::shared_ptr<KGraph const> g,
                     VertexIndex                   x,
                     std::size_t                   max_sheets) {
    if (max_sheets == 0) {
      fail(ErrorCode::invalid_argument, "the sheet bound must be positive");
    }
    Cocycle const eta = canonical_cocycle(g, x);
    std::vector<ClassifiedCovering> out;
    for (auto& table : low_index_subgroups(eta.target(), max_sheets)) {
      std::string const name = "index " + std::to_string(table.size())
                               + " class " + std::to_string(out.size());
      SubgroupData h{eta.target(), table.subgroup_generators(), table};
      ClassifiedCovering c{eta.target(),
                           table,
                           relative_skew_product(g, eta, h, table.size()),
                           0,
                           normalizer_quotient_order(table)};
      KGraph const& omega = *c.cover.product;
      if (!omega.is_connected()) {
        fail(ErrorCode::internal_error, name + ": covering is disconnected");
      }
      VertexIndex const v  = omega.vertex_index(g->vertex_id(x) + "@0");
      Stabilizer const  st = stabilizer_subgroup(c.cover.covering, v);
      if (st.subgroup.table != table) {
        fail(ErrorCode::internal_error,
             name + ": stabiliser action differs from the coset table");
      }
      c.deck_order = deck_group(c.cover.covering).group.order();
      if (c.deck_order != c.normalizer_order) {
        fail(ErrorCode::internal_error,
             name + ": deck group has order " + std::to_string(c.deck_order)
                 + " but |N(H)/H| = " + std::to_string(c.normalizer_order));
      }
      for (auto const& other : out) {
        if (other.table.size() == table.size()
            && are_isomorphic_coverings(other.cover.covering, c.cover.covering)) {
          fail(ErrorCode::internal_error,
               name + ": isomorphic to an earlier covering");
        }
      }
      out.push_back(std::move(c));
    }
    return out;
  }

}  // namespace kcover
