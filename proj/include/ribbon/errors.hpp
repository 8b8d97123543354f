#pragma once

#include <stdexcept>
#include <string>

namespace ribbon {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Curve construction / validation.
struct TooFewSamples : Error { using Error::Error; };
struct DegenerateSegment : Error { using Error::Error; };
struct SelfIntersecting : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };
struct ZeroDerivative : Error { using Error::Error; };

// Framings.
struct ParallelToTangent : Error { using Error::Error; };
struct DiscontinuousFraming : Error { using Error::Error; };
struct UndefinedNormal : Error { using Error::Error; };
struct UnwrapAmbiguity : Error { using Error::Error; };

// Direction-sphere geometry.
struct AntipodalEdge : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };

// Linking / projections / Monte Carlo.
struct CurvesTooClose : Error { using Error::Error; };
struct DegenerateDirection : Error { using Error::Error; };
struct TooManyRetries : Error { using Error::Error; };

}  // namespace ribbon
