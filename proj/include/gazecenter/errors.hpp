#ifndef GAZECENTER_ERRORS_HPP
#define GAZECENTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gazecenter {

enum class ErrorCode {
  FEWER_THAN_3_VERTICES,
  EMPTY_RASTER,
  OUT_OF_BOUNDS,
  EMPTY_SET,
  K_NONPOSITIVE,
  PARSE_ERROR,
  UNKNOWN_COLUMN,
  DUPLICATE_IMAGE_ID,
  INVALID_POLYGON,
  MISSING_IMAGE,
  NO_FIXATIONS,
  MAGIC_MISMATCH,
  DIM_MISMATCH,
  NO_OBJECTS,
  NO_IN_BOUNDS_FIXATIONS,
  NEGATIVE_SIGMA,
  BETA_OUT_OF_RANGE,
  ALL_ZERO,
  EMPTY_IMAGE,
  NO_OBJECT_FIXATIONS,
  LENGTH_MISMATCH,
  TOO_FEW_SAMPLES,
  UNNORMALIZED_MAP,
  EMPTY_DATASET,
  IO_ERROR,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::FEWER_THAN_3_VERTICES: return "FEWER_THAN_3_VERTICES";
    case ErrorCode::EMPTY_RASTER: return "EMPTY_RASTER";
    case ErrorCode::OUT_OF_BOUNDS: return "OUT_OF_BOUNDS";
    case ErrorCode::EMPTY_SET: return "EMPTY_SET";
    case ErrorCode::K_NONPOSITIVE: return "K_NONPOSITIVE";
    case ErrorCode::PARSE_ERROR: return "PARSE_ERROR";
    case ErrorCode::UNKNOWN_COLUMN: return "UNKNOWN_COLUMN";
    case ErrorCode::DUPLICATE_IMAGE_ID: return "DUPLICATE_IMAGE_ID";
    case ErrorCode::INVALID_POLYGON: return "INVALID_POLYGON";
    case ErrorCode::MISSING_IMAGE: return "MISSING_IMAGE";
    case ErrorCode::NO_FIXATIONS: return "NO_FIXATIONS";
    case ErrorCode::MAGIC_MISMATCH: return "MAGIC_MISMATCH";
    case ErrorCode::DIM_MISMATCH: return "DIM_MISMATCH";
    case ErrorCode::NO_OBJECTS: return "NO_OBJECTS";
    case ErrorCode::NO_IN_BOUNDS_FIXATIONS: return "NO_IN_BOUNDS_FIXATIONS";
    case ErrorCode::NEGATIVE_SIGMA: return "NEGATIVE_SIGMA";
    case ErrorCode::BETA_OUT_OF_RANGE: return "BETA_OUT_OF_RANGE";
    case ErrorCode::ALL_ZERO: return "ALL_ZERO";
    case ErrorCode::EMPTY_IMAGE: return "EMPTY_IMAGE";
    case ErrorCode::NO_OBJECT_FIXATIONS: return "NO_OBJECT_FIXATIONS";
    case ErrorCode::LENGTH_MISMATCH: return "LENGTH_MISMATCH";
    case ErrorCode::TOO_FEW_SAMPLES: return "TOO_FEW_SAMPLES";
    case ErrorCode::UNNORMALIZED_MAP: return "UNNORMALIZED_MAP";
    case ErrorCode::EMPTY_DATASET: return "EMPTY_DATASET";
    case ErrorCode::IO_ERROR: return "IO_ERROR";
  }
  return "UNKNOWN";
}

/// Library-wide exception carrying a machine-parsable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gazecenter

#endif  // GAZECENTER_ERRORS_HPP
