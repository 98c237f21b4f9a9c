#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bqs {

enum class ErrorCode {
    DegenerateAngle,
    TimeOrder,
    ToleranceOrder,
    StorageExhausted,
    NoSuchGeneration,
    NeedsVelocity,
    EmptyInput,
    OutOfRange,
    UnknownShape,
    InvalidConfig,
    MalformedInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace bqs
