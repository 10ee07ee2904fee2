#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

// Carried by the validation errors below: the offending residual, so callers
// can judge near-misses.
struct ResidualError : Error {
    double residual;
    ResidualError(const std::string& what, double r)
        : Error(what + " (residual " + std::to_string(r) + ")"), residual(r) {}
};

struct NotHermitian : ResidualError {
    using ResidualError::ResidualError;
};

struct NotSelfAdjoint : ResidualError {
    using ResidualError::ResidualError;
};

struct NotBimodule : ResidualError {
    using ResidualError::ResidualError;
};

struct NotIrreflexive : ResidualError {
    using ResidualError::ResidualError;
};

struct DecompositionResidualTooLarge : ResidualError {
    using ResidualError::ResidualError;
};

struct GraphNotIrreflexive : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct ImproperColoring : Error {
    int u, v;
    ImproperColoring(int u_, int v_)
        : Error("vertices " + std::to_string(u_) + " and " + std::to_string(v_) +
                " are adjacent but share a color"),
          u(u_), v(v_) {}
};

struct ConstructionFailed : ResidualError {
    using ResidualError::ResidualError;
};

namespace io {

struct ParseError : Error {
    using Error::Error;
};

struct MalformedHeader : ParseError {
    using ParseError::ParseError;
};

struct VertexOutOfRange : ParseError {
    using ParseError::ParseError;
};

struct SelfLoop : ParseError {
    using ParseError::ParseError;
};

}  // namespace io

}  // namespace qgraph
