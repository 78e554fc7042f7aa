// Coset tables, Todd-Coxeter coset enumeration and low-index subgroups.
//
// Tables describe the right action of a finitely presented group on the
// right cosets Hg of a subgroup H.  Row 0 is H itself; column 2i is the
// generator i and column 2i+1 its inverse.

#ifndef KCOVER_COSET_TABLE_HPP_
#define KCOVER_COSET_TABLE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "kcover/words.hpp"

namespace kcover {

  class CosetTable {
   public:
    static constexpr std::size_t undefined = SIZE_MAX;

    CosetTable() = default;
    CosetTable(std::size_t              num_generators,
               std::size_t              num_cosets,
               std::vector<std::size_t> entries);

    std::size_t num_generators() const noexcept {
      return _num_generators;
    }
    std::size_t num_columns() const noexcept {
      return 2 * _num_generators;
    }
    // Number of cosets, i.e. the index of H when the table is complete.
    std::size_t size() const noexcept {
      return _num_cosets;
    }
    std::size_t at(std::size_t coset, std::size_t column) const {
      return _entries.at(coset * num_columns() + column);
    }
    std::vector<std::size_t> const& entries() const noexcept {
      return _entries;
    }

    bool is_complete() const noexcept;
    bool is_standardized() const;

    std::size_t act(std::size_t coset, Letter l) const {
      return at(coset, l.column());
    }
    // Right action of a word on a coset (letters applied left to right).
    std::size_t act(std::size_t coset, GroupWord const& w) const;

    // The standardised table of the conjugate subgroup stabilising `coset`.
    CosetTable rebased(std::size_t coset) const;
    CosetTable standardized() const {
      return rebased(0);
    }

    // Words w_i with act(0, w_i) == i, read off a breadth-first spanning
    // tree in standardised order.
    std::vector<GroupWord> transversal() const;

    // Schreier generators of the subgroup stabilising coset 0.
    std::vector<GroupWord> subgroup_generators() const;

    bool contains(GroupWord const& w) const {
      return act(0, w) == 0;
    }

    // Complete, and every relator and subgroup generator closes correctly.
    bool is_consistent_with(GroupPresentation const&      p,
                            std::vector<GroupWord> const& subgroup) const;

    friend bool operator==(CosetTable const&, CosetTable const&) = default;
    friend auto operator<=>(CosetTable const& a, CosetTable const& b) {
      if (auto c = a._num_cosets <=> b._num_cosets; c != 0) {
        return c;
      }
      return a._entries <=> b._entries;
    }

   private:
    std::size_t              _num_generators = 0;
    std::size_t              _num_cosets     = 0;
    std::vector<std::size_t> _entries;
  };

  // HLT enumeration with lookahead.  Never holds more than max_cosets live
  // cosets; throws CosetOverflow if the enumeration cannot close within that
  // budget.  The result is complete and standardised.
  CosetTable todd_coxeter(GroupPresentation const&      p,
                          std::vector<GroupWord> const& subgroup,
                          std::size_t                   max_cosets);

  enum class LowIndexMode { conjugacy_classes, all_subgroups };

  // One standardised table per subgroup (or per conjugacy class, represented
  // by its lexicographically least table) of index at most max_index,
  // sorted by (index, entries).
  std::vector<CosetTable>
  low_index_subgroups(GroupPresentation const& p,
                      std::size_t              max_index,
                      LowIndexMode             mode = LowIndexMode::conjugacy_classes);

  // |N(H) / H| for the subgroup H stabilising coset 0: the number of cosets
  // whose rebased table coincides with the table itself.
  std::size_t normalizer_quotient_order(CosetTable const& t);

  bool is_normal_subgroup(CosetTable const& t);

  // Number of distinct conjugates of H (distinct rebased tables).
  std::size_t conjugacy_class_size(CosetTable const& t);

}  // namespace kcover

#endif  // KCOVER_COSET_TABLE_HPP_
