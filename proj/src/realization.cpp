#include "kcover/realization.hpp"

#include "kcover/error.hpp"

namespace kcover {

  FiniteGroupRealization::FiniteGroupRealization(GroupPresentation p,
                                                 std::size_t max_cosets)
      : _presentation(std::move(p)),
        _table(todd_coxeter(_presentation, {}, max_cosets)) {
    build();
  }

  FiniteGroupRealization::FiniteGroupRealization(GroupPresentation p,
                                                 CosetTable        regular)
      : _presentation(std::move(p)), _table(std::move(regular)) {
    if (!_table.is_consistent_with(_presentation, {})) {
      fail(ErrorCode::invalid_argument,
           "table is not consistent with the presentation");
    }
    // The cosets form a group only when the stabiliser of 0 fixes them all.
    for (auto const& h : _table.subgroup_generators()) {
      for (std::size_t c = 0; c < _table.size(); ++c) {
        if (_table.act(c, h) != c) {
          fail(ErrorCode::invalid_argument,
               "table is not a regular representation of a quotient group");
        }
      }
    }
    build();
  }

  void FiniteGroupRealization::build() {
    _words = _table.transversal();
    _left.assign(_table.num_columns(), std::vector<GroupElement>(order()));
    for (std::size_t c = 0; c < _table.num_columns(); ++c) {
      GroupElement const s = _table.at(0, c);
      for (GroupElement g = 0; g < order(); ++g) {
        _left[c][g] = _table.act(s, _words[g]);
      }
    }
  }

  GroupElement FiniteGroupRealization::left_multiply(GroupWord const& w,
                                                     GroupElement     g) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      g = _left.at(it->column()).at(g);
    }
    return g;
  }

}  // namespace kcover
