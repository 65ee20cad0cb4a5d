#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tumorseg {

enum class ErrorCode {
  kInvalidArgument,
  kMissingFile,
  kMalformedHeader,
  kUnsupportedMaxval,
  kTruncatedPayload,
  kMalformedPayload,
  kUnsupportedFormat,
  kIo,
  kDimensionMismatch,
  kEmptyHistogram,
  kNoAsymmetry,
  kDegenerateHistogram,
  kNoSeeds,
  kSeedOutOfBounds,
  kDuplicateSeed,
  kNoMarkers,
  kInvalidGeometry,
  kManifest,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (and tests)
// can tell the failure modes apart without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tumorseg
