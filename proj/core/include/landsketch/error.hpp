#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace landsketch {

enum class ErrorCode {
  // core-model
  MalformedTriple,
  UnknownRelation,
  CyclicDepth,
  MalformedTuple,
  OutOfCanvas,
  NonPositiveExtent,
  InvalidGraph,
  InvalidLayout,
  // solve / evaluate
  NameMismatch,
  UnknownSpecies,
  Unsatisfiable,
  DimensionMismatch,
  TooFewImages,
  // concretize
  EndpointError,
  ParseFailedAfterRetry,
  // illustrate
  BackendError,
  MaskEmpty,
  // app
  StorageError,
  NotFound,
  Precondition,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Broad class of an error, used for CLI exit codes and HTTP status mapping.
enum class ErrorClass { Validation, External, Other };

ErrorClass classify(ErrorCode code) noexcept;

/// Structured error carrying a code and the offending fragment (a line, a
/// token, an element name...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace landsketch
