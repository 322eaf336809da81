#pragma once

#include <stdexcept>
#include <string>

namespace superint {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ChartMismatch : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct DerivativeSingular : Error { using Error::Error; };
struct SingularTransform : Error { using Error::Error; };
struct UnknownSystem : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct SamplingFailed : Error { using Error::Error; };
struct NewtonDivergence : Error { using Error::Error; };
struct AngularSingularity : Error { using Error::Error; };
struct ZeroModulus : Error { using Error::Error; };
struct NegativeCoupling : Error { using Error::Error; };
struct NoEuclideanLimit : Error { using Error::Error; };

}  // namespace superint
