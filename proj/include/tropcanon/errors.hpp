#ifndef TROPCANON_ERRORS_HPP
#define TROPCANON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tropcanon {

enum class ErrorKind {
    InvalidArgument,
    InvalidCurve,
    InvalidQuery,
    InvalidEnhancement,
    InvalidDepths,
    NonEffective,
    NotStable,
    WrongGraph,
    WrongType,
    SizeLimit,
    SlopeBoundExceeded,
    Schema,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidCurve: return "InvalidCurve";
        case ErrorKind::InvalidQuery: return "InvalidQuery";
        case ErrorKind::InvalidEnhancement: return "InvalidEnhancement";
        case ErrorKind::InvalidDepths: return "InvalidDepths";
        case ErrorKind::NonEffective: return "NonEffective";
        case ErrorKind::NotStable: return "NotStable";
        case ErrorKind::WrongGraph: return "WrongGraph";
        case ErrorKind::WrongType: return "WrongType";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::SlopeBoundExceeded: return "SlopeBoundExceeded";
        case ErrorKind::Schema: return "Schema";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tropcanon

#endif  // TROPCANON_ERRORS_HPP
