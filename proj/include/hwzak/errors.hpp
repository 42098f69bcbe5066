#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hwzak {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public Error { using Error::Error; };
class NonCommensurateDisplacement : public Error { using Error::Error; };
class NonCommensurateOffset : public Error { using Error::Error; };
class ConventionMismatch : public Error { using Error::Error; };
class OutOfRectangle : public Error { using Error::Error; };
class BandOutOfRange : public Error { using Error::Error; };
class BandwidthTooLarge : public Error { using Error::Error; };
class NonvanishingViolated : public Error { using Error::Error; };
class InvalidLattice : public Error { using Error::Error; };
class EpsilonTooLarge : public Error { using Error::Error; };
/// Unreadable, malformed or unwritable file.
class IoError : public Error { using Error::Error; };

/// Non-fatal diagnostic. Operations that may degrade silently append these
/// to a caller-supplied sink instead of throwing.
struct Warning {
    std::string code;
    std::string message;
};

using WarningSink = std::vector<Warning>;

inline void warn(WarningSink* sink, std::string code, std::string message)
{
    if (sink != nullptr) sink->push_back({std::move(code), std::move(message)});
}

} // namespace hwzak
