#pragma once

#include <stdexcept>
#include <string>

namespace fuzzobs {

// Error categories, aligned with the CLI exit-code contract:
// schema 2, invariant 3, precondition 4, resource 5.
enum class ErrorKind : int {
  Schema = 2,
  Invariant = 3,
  Precondition = 4,
  Resource = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

#define FUZZOBS_DEFINE_ERROR(NAME, KIND)              \
  class NAME : public Error {                         \
   public:                                            \
    explicit NAME(const std::string& message)         \
        : Error(ErrorKind::KIND, message) {}          \
  }

FUZZOBS_DEFINE_ERROR(SchemaError, Schema);
FUZZOBS_DEFINE_ERROR(InvariantError, Invariant);
FUZZOBS_DEFINE_ERROR(InvalidOrderError, Invariant);
FUZZOBS_DEFINE_ERROR(InvalidStateError, Invariant);
FUZZOBS_DEFINE_ERROR(NotHermitianError, Precondition);
FUZZOBS_DEFINE_ERROR(IndexOutOfRangeError, Precondition);
FUZZOBS_DEFINE_ERROR(OutOfRangeError, Precondition);
FUZZOBS_DEFINE_ERROR(GroupMismatchError, Precondition);
FUZZOBS_DEFINE_ERROR(DimensionMismatchError, Precondition);
FUZZOBS_DEFINE_ERROR(NotCovariantError, Precondition);
FUZZOBS_DEFINE_ERROR(NotToeplitzError, Precondition);
FUZZOBS_DEFINE_ERROR(NonVanishingTransformError, Precondition);
FUZZOBS_DEFINE_ERROR(FactorizationFailedError, Precondition);
FUZZOBS_DEFINE_ERROR(RankDeficiencyError, Precondition);
FUZZOBS_DEFINE_ERROR(PreconditionError, Precondition);
FUZZOBS_DEFINE_ERROR(NoConvergenceError, Resource);
FUZZOBS_DEFINE_ERROR(TooLargeError, Resource);

#undef FUZZOBS_DEFINE_ERROR

}  // namespace fuzzobs
