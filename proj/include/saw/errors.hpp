#ifndef SAW_ERRORS_HPP
#define SAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace saw {

enum class ErrorKind {
    UnknownLattice,
    ParseError,
    InvalidSpec,
    NotCubic,
    NotSimple,
    NotBipartite,
    NotPeriodic,
    BlackNotCubic,
    NotInGraph,
    InsufficientRadius,
    NoOriginTags,
    ResourceLimit,
    OutOfDomain,
    WrongSeriesKind,
    DegreeUnavailable,
    EmptySeries,
    InsufficientData,
    UnsupportedKind,
};

/// Library error carrying a machine-readable kind; the message names the
/// violated precondition or rule.
class SawError : public std::runtime_error {
public:
    SawError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const { return kind_name(kind_); }

    static const char* kind_name(ErrorKind k) {
        switch (k) {
            case ErrorKind::UnknownLattice: return "UnknownLattice";
            case ErrorKind::ParseError: return "ParseError";
            case ErrorKind::InvalidSpec: return "InvalidSpec";
            case ErrorKind::NotCubic: return "NotCubic";
            case ErrorKind::NotSimple: return "NotSimple";
            case ErrorKind::NotBipartite: return "NotBipartite";
            case ErrorKind::NotPeriodic: return "NotPeriodic";
            case ErrorKind::BlackNotCubic: return "BlackNotCubic";
            case ErrorKind::NotInGraph: return "NotInGraph";
            case ErrorKind::InsufficientRadius: return "InsufficientRadius";
            case ErrorKind::NoOriginTags: return "NoOriginTags";
            case ErrorKind::ResourceLimit: return "ResourceLimit";
            case ErrorKind::OutOfDomain: return "OutOfDomain";
            case ErrorKind::WrongSeriesKind: return "WrongSeriesKind";
            case ErrorKind::DegreeUnavailable: return "DegreeUnavailable";
            case ErrorKind::EmptySeries: return "EmptySeries";
            case ErrorKind::InsufficientData: return "InsufficientData";
            case ErrorKind::UnsupportedKind: return "UnsupportedKind";
        }
        return "Unknown";
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw SawError(kind, std::string(SawError::kind_name(kind)) + ": " + message);
}

} // namespace saw

#endif // SAW_ERRORS_HPP
