#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracdi {

/// Base of every error thrown by the library. `kind()` is a stable short
/// identifier used in the CLI's JSON diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Invalid argument values (ranges, counts, malformed input).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error("InputError", what) {}
};

// Mathematical domain violations: branch point, singular point, etc.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

class GammaPoleError : public Error {
public:
    explicit GammaPoleError(const std::string& what) : Error("GammaPoleError", what) {}
};

// Kernel of a non-negative integer order is a derivative of delta.
class NotAFunction : public Error {
public:
    explicit NotAFunction(const std::string& what) : Error("NotAFunction", what) {}
};

// Points on cuts, tangential crossings, self-intersecting polylines.
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& what) : Error("GeometryError", what) {}
};

class PoleAtEvaluationPoint : public Error {
public:
    PoleAtEvaluationPoint(const std::string& what, double where)
        : Error("PoleAtEvaluationPoint", what), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

// Growth condition fails or an integral diverges.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error("ConvergenceError", what) {}
};

// Quadrature did not reach the requested tolerance.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double est_error)
        : Error("AccuracyError", what), est_error_(est_error) {}
    double est_error() const noexcept { return est_error_; }

private:
    double est_error_;
};

class BoundaryError : public Error {
public:
    explicit BoundaryError(const std::string& what) : Error("BoundaryError", what) {}
};

class DCError : public Error {
public:
    explicit DCError(const std::string& what) : Error("DCError", what) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset, std::vector<std::string> expected)
        : Error("SyntaxError", what), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace fracdi
