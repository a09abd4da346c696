#pragma once

#include <stdexcept>
#include <string>

namespace decaykit {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// special
class PoleOfGamma : public Error { using Error::Error; };
class BranchCutViolation : public Error { using Error::Error; };
class NonfiniteResult : public Error { using Error::Error; };
class ZeroBase : public Error { using Error::Error; };

// dos
class GaussianRejected : public Error { using Error::Error; };
class NuOutOfRange : public Error { using Error::Error; };
class SingleResonanceConstantFF : public Error { using Error::Error; };
class NegativeDensity : public Error { using Error::Error; };
class NormalizationMismatch : public Error { using Error::Error; };

// quadrature-backed operations
class QuadratureNonconvergence : public Error { using Error::Error; };
class InsufficientSampling : public Error { using Error::Error; };

// autocorr / moments
class WeightsNotNormalized : public Error { using Error::Error; };
class MomentDivergent : public Error { using Error::Error; };
class NegativeVariance : public Error { using Error::Error; };

// regions
class NoIntersection : public Error { using Error::Error; };
class SinglePole : public Error { using Error::Error; };
class DegenerateDenominator : public Error { using Error::Error; };

// cli
class ConfigError : public Error { using Error::Error; };
class ComputeError : public Error { using Error::Error; };

} // namespace decaykit
