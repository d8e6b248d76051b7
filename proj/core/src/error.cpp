#include "kfsd/error.hpp"

namespace kfsd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NotEquidistant: return "NotEquidistant";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::NonPositiveBandwidth: return "NonPositiveBandwidth";
    case ErrorCode::NonSymmetricCovariance: return "NonSymmetricCovariance";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::ZeroWeightSum: return "ZeroWeightSum";
    case ErrorCode::EmptyDepths: return "EmptyDepths";
    case ErrorCode::EmptyPeripheralSet: return "EmptyPeripheralSet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace kfsd
