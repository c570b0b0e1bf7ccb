#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadwg {

enum class ErrorKind {
    InvalidEnvelope,
    InvalidCoupling,
    InvalidGrid,
    InvalidInput,
    Truncation,
    UnsupportedConfiguration,
    EmptyPostselection,
    InvalidOverlap,
    UndefinedCorrelation,
    IntegrationFailure,
    NotAsymptotic,
    Config,
};

std::string_view to_string(ErrorKind kind);

/// Numerical or configuration failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

    /// Configuration problems map to CLI exit 1, everything else to exit 2.
    bool is_numerical() const noexcept { return kind_ != ErrorKind::Config; }

private:
    ErrorKind kind_;
};

}  // namespace quadwg
