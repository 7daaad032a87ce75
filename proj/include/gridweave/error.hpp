#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridweave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (edge lists, embedding JSON, configs).
/// `line()` is 1-based, or 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Structurally invalid graph (self-loop, duplicate edge, id out of range).
class GraphError : public Error {
public:
    using Error::Error;
};

/// Geometric precondition violated by the caller (degenerate segment,
/// coordinate outside the supported range, vertex equal to an endpoint).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Requested parameters cannot be satisfied (n > m^3, t = 0, odd d*n, or a
/// census too large to run).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A drawing was not found within the attempt and escalation budget.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// Embedding does not describe a placement of the graph: missing vertices,
/// repeated points, coordinates outside [0, m), or a graph hash mismatch.
class MalformedEmbedding : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gridweave
