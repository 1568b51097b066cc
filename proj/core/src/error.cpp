#include "landsketch/error.hpp"

namespace landsketch {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedTriple: return "MalformedTriple";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::CyclicDepth: return "CyclicDepth";
    case ErrorCode::MalformedTuple: return "MalformedTuple";
    case ErrorCode::OutOfCanvas: return "OutOfCanvas";
    case ErrorCode::NonPositiveExtent: return "NonPositiveExtent";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidLayout: return "InvalidLayout";
    case ErrorCode::NameMismatch: return "NameMismatch";
    case ErrorCode::UnknownSpecies: return "UnknownSpecies";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewImages: return "TooFewImages";
    case ErrorCode::EndpointError: return "EndpointError";
    case ErrorCode::ParseFailedAfterRetry: return "ParseFailedAfterRetry";
    case ErrorCode::BackendError: return "BackendError";
    case ErrorCode::MaskEmpty: return "MaskEmpty";
    case ErrorCode::StorageError: return "StorageError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EndpointError:
    case ErrorCode::ParseFailedAfterRetry:
    case ErrorCode::BackendError:
    case ErrorCode::MaskEmpty:
      return ErrorClass::External;
    case ErrorCode::StorageError:
      return ErrorClass::Other;
    default:
      return ErrorClass::Validation;
  }
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace landsketch
