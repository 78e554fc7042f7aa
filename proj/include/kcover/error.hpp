// Error type shared by every kcover module.

#ifndef KCOVER_ERROR_HPP_
#define KCOVER_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace kcover {

  enum class ErrorCode {
    // kgraph-core
    bad_square,
    not_bijective,
    factorization_failure,
    not_composable,
    degree_mismatch,
    not_connected,
    // fundamental
    target_mismatch,
    // coverings
    not_functorial,
    not_locally_injective,
    not_locally_surjective,
    not_surjective,
    square_broken,
    basepoint_mismatch,
    not_free,
    not_closed,
    // enumeration / skew
    coset_overflow,
    cocycle_invalid,
    // plumbing
    parse_error,
    invalid_argument,
    internal_error
  };

  // The name printed by the CLI and returned by the C API, e.g. "NotBijective".
  std::string_view error_name(ErrorCode code) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string witness)
        : std::runtime_error(std::string(error_name(code)) + ": " + witness),
          _code(code),
          _witness(std::move(witness)) {}

    ErrorCode code() const noexcept {
      return _code;
    }

    std::string const& witness() const noexcept {
      return _witness;
    }

   private:
    ErrorCode   _code;
    std::string _witness;
  };

  [[noreturn]] inline void fail(ErrorCode code, std::string witness) {
    throw Error(code, std::move(witness));
  }

}  // namespace kcover

#endif  // KCOVER_ERROR_HPP_
