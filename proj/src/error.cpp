#include "specstream/error.hpp"

namespace specstream {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::DegenerateUpdate: return "DegenerateUpdate";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ImageMismatch: return "ImageMismatch";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BarrierViolation: return "BarrierViolation";
    case ErrorCode::EmptyStream: return "EmptyStream";
    case ErrorCode::EmptySketch: return "EmptySketch";
    case ErrorCode::ConstApproxFailure: return "ConstApproxFailure";
    case ErrorCode::CapacityCollapse: return "CapacityCollapse";
    case ErrorCode::AllZeroStream: return "AllZeroStream";
    case ErrorCode::MissingScoreLog: return "MissingScoreLog";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
  }
  return "Unknown";
}

}  // namespace specstream
