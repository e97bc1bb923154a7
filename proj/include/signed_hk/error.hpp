#ifndef SIGNED_HK_ERROR_HPP
#define SIGNED_HK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace signed_hk {

enum class ErrorCode {
    index_out_of_range,
    conflicting_edge_sign,
    self_loop_rejected,
    invalid_probability,
    invalid_group_count,
    dimension_mismatch,
    negative_edge_present,
    invalid_parameter,
    degenerate_initial_state,
    single_group,
    zero_out_group_distance,
    unknown_parameter,
    io_failure,
    parse_error,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::conflicting_edge_sign: return "ConflictingEdgeSign";
    case ErrorCode::self_loop_rejected: return "SelfLoopRejected";
    case ErrorCode::invalid_probability: return "InvalidProbability";
    case ErrorCode::invalid_group_count: return "InvalidGroupCount";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::negative_edge_present: return "NegativeEdgePresent";
    case ErrorCode::invalid_parameter: return "InvalidParameter";
    case ErrorCode::degenerate_initial_state: return "DegenerateInitialState";
    case ErrorCode::single_group: return "SingleGroup";
    case ErrorCode::zero_out_group_distance: return "ZeroOutGroupDistance";
    case ErrorCode::unknown_parameter: return "UnknownParameter";
    case ErrorCode::io_failure: return "IoFailure";
    case ErrorCode::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    /// Message without the code prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

} // namespace signed_hk

#endif // SIGNED_HK_ERROR_HPP
