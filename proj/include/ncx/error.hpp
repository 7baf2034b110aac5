#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncx {

enum class ErrorCode {
  EmptySet,
  NotNearlyConvex,
  CqViolated,
  IrrationalBoundary,
  NoClosedForm,
  X0NotInterior,
  Unnormalizable,
  BadInterval,
  NotFullDim,
  Not2D,
  InfiniteAtX,
  EmptySample,
  NotInterior,
  NotInDom,
  DimensionMismatch,
  Parse,
  Internal,
};

std::string_view code_name(ErrorCode code);

/// Library error carrying one of the contract error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require_dim(std::size_t got, std::size_t want, const char* where) {
  if (got != want)
    fail(ErrorCode::DimensionMismatch, std::string(where) + ": dimension " + std::to_string(got) +
                                           " != " + std::to_string(want));
}

}  // namespace ncx
