#pragma once

#include <stdexcept>
#include <string>

namespace mok {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroInputError : Error {
    explicit ZeroInputError(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfRangeError : Error {
    explicit IndexOutOfRangeError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

/// Input matrix is not in the required model subspace (skew, symmetric, Hermitian).
struct ModelViolationError : Error {
    explicit ModelViolationError(const std::string& msg) : Error(msg) {}
};

struct UnsupportedConventionError : Error {
    explicit UnsupportedConventionError(const std::string& msg) : Error(msg) {}
};

/// Invalid product specification or zero curvature-type tensor.
struct SpecError : Error {
    explicit SpecError(const std::string& msg) : Error(msg) {}
};

/// Operator does not have the block structure required by a decomposition.
struct StructureError : Error {
    explicit StructureError(const std::string& msg) : Error(msg) {}
};

struct WitnessNotRankOneError : Error {
    explicit WitnessNotRankOneError(const std::string& msg) : Error(msg) {}
};

/// Empirical verification of a candidate could not be concluded.
struct InconclusiveSampleError : Error {
    explicit InconclusiveSampleError(const std::string& msg) : Error(msg) {}
};

/// Dimension pair matches no rank >= 2 domain and is not a disc pair.
struct UnrecognizedPairError : Error {
    explicit UnrecognizedPairError(const std::string& msg) : Error(msg) {}
};

/// Two distinct canonical domain types share the same dimension pair.
struct AmbiguousPairError : Error {
    explicit AmbiguousPairError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// The unit disc has no first characteristic variety entry in the table.
struct DiscHasNoS1Error : Error {
    explicit DiscHasNoS1Error(const std::string& msg) : Error(msg) {}
};

} // namespace mok
