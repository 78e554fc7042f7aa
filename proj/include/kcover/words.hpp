// Free-group words and finite group presentations.

#ifndef KCOVER_WORDS_HPP_
#define KCOVER_WORDS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kcover {

  struct Letter {
    std::size_t generator = 0;
    bool        inverse   = false;

    // Column of this letter in a coset table: 2g for g, 2g+1 for g^-1.
    std::size_t column() const noexcept {
      return 2 * generator + (inverse ? 1 : 0);
    }
    Letter inverted() const noexcept {
      return Letter{generator, !inverse};
    }
    static Letter from_column(std::size_t column) noexcept {
      return Letter{column / 2, column % 2 == 1};
    }

    friend auto operator<=>(Letter const&, Letter const&) = default;
  };

  // Letters in composition order: the word l1 l2 ... ln is the product
  // l1 * l2 * ... * ln.
  using GroupWord = std::vector<Letter>;

  GroupWord free_reduce(GroupWord const& w);
  GroupWord inverse(GroupWord const& w);
  // Freely reduced product a * b.
  GroupWord multiply(GroupWord const& a, GroupWord const& b);
  GroupWord generator_word(std::size_t generator, bool inverse = false);

  struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<GroupWord>   relators;

    std::size_t num_generators() const noexcept {
      return generators.size();
    }
    std::optional<std::size_t> generator_index(std::string_view name) const;

    friend bool operator==(GroupPresentation const&,
                           GroupPresentation const&) = default;
  };

  // Tokens `g`, `g^-1` or `g^n` separated by whitespace; the empty word is
  // written `1`.
  std::string format_word(GroupWord const&                w,
                          std::vector<std::string> const& names);
  GroupWord   parse_word(std::string_view                text,
                         std::vector<std::string> const& names);
  std::string format_presentation(GroupPresentation const& p);

  // Invariant factors of the abelianisation: a list of integers d with
  // d = 0 for each free Z summand and d > 1 for each Z/d summand, so the
  // trivial group gives the empty list.
  std::vector<std::int64_t> abelian_invariants(GroupPresentation const& p);
  std::string format_abelian(std::vector<std::int64_t> const& invariants);

  namespace detail {
    // Diagonal of the Smith normal form (non-negative, divisibility chain).
    std::vector<std::int64_t>
    smith_diagonal(std::vector<std::vector<std::int64_t>> matrix,
                   std::size_t                            cols);
  }  // namespace detail

}  // namespace kcover

#endif  // KCOVER_WORDS_HPP_
