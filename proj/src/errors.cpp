#include "quadwg/errors.hpp"

namespace quadwg {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidEnvelope: return "InvalidEnvelope";
    case ErrorKind::InvalidCoupling: return "InvalidCoupling";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Truncation: return "Truncation";
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorKind::EmptyPostselection: return "EmptyPostselection";
    case ErrorKind::InvalidOverlap: return "InvalidOverlap";
    case ErrorKind::UndefinedCorrelation: return "UndefinedCorrelation";
    case ErrorKind::IntegrationFailure: return "IntegrationFailure";
    case ErrorKind::NotAsymptotic: return "NotAsymptotic";
    case ErrorKind::Config: return "ConfigError";
    }
    return "Error";
}

}  // namespace quadwg
