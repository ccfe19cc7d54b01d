#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfs {

// Base class for everything the library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error { using Error::Error; };       // mismatched tensor/grid shapes
struct NumericError : Error { using Error::Error; };     // non-finite input data
struct SymmetryError : Error { using Error::Error; };    // spectrum not conjugate symmetric
struct GeometryError : Error { using Error::Error; };    // patch/cell geometry violations
struct FormatError : Error { using Error::Error; };      // malformed binary file
struct ConfigError : Error { using Error::Error; };      // bad or unknown configuration
struct IoError : Error { using Error::Error; };          // missing/unreadable files
struct ParseError : Error { using Error::Error; };       // unparsable text content
struct ConsistencyError : Error { using Error::Error; }; // e.g. frame/ground-truth count mismatch
struct SingularError : Error { using Error::Error; };    // unregularised singular system
struct InputError : Error { using Error::Error; };       // invalid runtime arguments
struct SpecError : Error { using Error::Error; };        // invalid synthetic-sequence spec

// ADMM objective kept increasing; carries the trace for post-mortem.
struct DivergenceError : Error {
    std::vector<double> trace;
    DivergenceError(const std::string& what, std::vector<double> t)
        : Error(what), trace(std::move(t)) {}
};

} // namespace gfs
