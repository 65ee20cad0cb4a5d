#include "tumorseg/error.hpp"

namespace tumorseg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kMissingFile: return "missing file";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kUnsupportedMaxval: return "unsupported maxval";
    case ErrorCode::kTruncatedPayload: return "truncated payload";
    case ErrorCode::kMalformedPayload: return "malformed payload";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kIo: return "i/o failure";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kEmptyHistogram: return "empty histogram";
    case ErrorCode::kNoAsymmetry: return "no asymmetry detected";
    case ErrorCode::kDegenerateHistogram: return "degenerate histogram";
    case ErrorCode::kNoSeeds: return "no seeds";
    case ErrorCode::kSeedOutOfBounds: return "seed out of bounds";
    case ErrorCode::kDuplicateSeed: return "duplicate seed";
    case ErrorCode::kNoMarkers: return "no markers";
    case ErrorCode::kInvalidGeometry: return "invalid geometry";
    case ErrorCode::kManifest: return "manifest error";
  }
  return "unknown";
}

}  // namespace tumorseg
