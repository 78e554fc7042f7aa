#include "kcover/error.hpp"

namespace kcover {

  std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::bad_square: return "BadSquare";
      case ErrorCode::not_bijective: return "NotBijective";
      case ErrorCode::factorization_failure: return "FactorizationFailure";
      case ErrorCode::not_composable: return "NotComposable";
      case ErrorCode::degree_mismatch: return "DegreeMismatch";
      case ErrorCode::not_connected: return "NotConnected";
      case ErrorCode::target_mismatch: return "TargetMismatch";
      case ErrorCode::not_functorial: return "NotFunctorial";
      case ErrorCode::not_locally_injective: return "NotLocallyInjective";
      case ErrorCode::not_locally_surjective: return "NotLocallySurjective";
      case ErrorCode::not_surjective: return "NotSurjective";
      case ErrorCode::square_broken: return "SquareBroken";
      case ErrorCode::basepoint_mismatch: return "BasepointMismatch";
      case ErrorCode::not_free: return "NotFree";
      case ErrorCode::not_closed: return "NotClosed";
      case ErrorCode::coset_overflow: return "CosetOverflow";
      case ErrorCode::cocycle_invalid: return "CocycleInvalid";
      case ErrorCode::parse_error: return "ParseError";
      case ErrorCode::invalid_argument: return "InvalidArgument";
      case ErrorCode::internal_error: return "InternalError";
    }
    return "InternalError";
  }

}  // namespace kcover
