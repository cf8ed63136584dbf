#pragma once

#include <stdexcept>
#include <string>

namespace systl {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file or stream.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Connectivity is not a valid oriented surface (non-manifold edge,
// pinched vertex, inconsistent orientation, wrong genus for the call, ...).
struct TopologyError : Error {
  explicit TopologyError(const std::string& msg) : Error(msg) {}
};

// Geometry below the degeneracy floor (zero-area face, repeated vertex, ...).
struct DegeneracyError : Error {
  explicit DegeneracyError(const std::string& msg) : Error(msg) {}
};

// Parameter outside its documented range.
struct ParamError : Error {
  explicit ParamError(const std::string& msg) : Error(msg) {}
};

// Operation called on an input that violates its precondition.
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// A construction step that can legitimately fail at runtime (e.g. curves
// that were expected to cross do not).
struct ConstructionError : Error {
  explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

}  // namespace systl
