#include "bqs/error.hpp"

namespace bqs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::TimeOrder: return "TimeOrder";
    case ErrorCode::ToleranceOrder: return "ToleranceOrder";
    case ErrorCode::StorageExhausted: return "StorageExhausted";
    case ErrorCode::NoSuchGeneration: return "NoSuchGeneration";
    case ErrorCode::NeedsVelocity: return "NeedsVelocity";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownShape: return "UnknownShape";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

} // namespace bqs
