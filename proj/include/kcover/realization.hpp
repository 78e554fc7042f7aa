// A finite group realised as the regular coset table of a presentation.

#ifndef KCOVER_REALIZATION_HPP_
#define KCOVER_REALIZATION_HPP_

#include <cstddef>
#include <vector>

#include "kcover/coset_table.hpp"
#include "kcover/words.hpp"

namespace kcover {

  // Elements are coset indices of the trivial subgroup; 0 is the identity.
  using GroupElement = std::size_t;

  class FiniteGroupRealization {
   public:
    // Throws CosetOverflow if the group is not enumerable within budget.
    FiniteGroupRealization(GroupPresentation p, std::size_t max_cosets);
    // Adopts a complete table of a normal subgroup N; the elements are then
    // those of the quotient by N (the group itself when N is trivial).
    FiniteGroupRealization(GroupPresentation p, CosetTable regular);

    GroupPresentation const& presentation() const noexcept {
      return _presentation;
    }
    CosetTable const& table() const noexcept {
      return _table;
    }
    std::size_t order() const noexcept {
      return _table.size();
    }

    GroupElement identity() const noexcept {
      return 0;
    }
    GroupElement element(GroupWord const& w) const {
      return _table.act(0, w);
    }
    // A word representing the element (from the breadth-first transversal).
    GroupWord const& word(GroupElement g) const {
      return _words.at(g);
    }
    GroupElement multiply(GroupElement a, GroupElement b) const {
      return _table.act(a, _words.at(b));
    }
    GroupElement inverse(GroupElement g) const {
      return _table.act(0, kcover::inverse(_words.at(g)));
    }
    // Left multiplication w * g by a word.
    GroupElement left_multiply(GroupWord const& w, GroupElement g) const;

   private:
    void build();

    GroupPresentation                      _presentation;
    CosetTable                             _table;
    std::vector<GroupWord>                 _words;
    // Left multiplication by each column letter, as a permutation.
    std::vector<std::vector<GroupElement>> _left;
  };

}  // namespace kcover

#endif  // KCOVER_REALIZATION_HPP_
