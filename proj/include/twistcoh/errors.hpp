#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistcoh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ambient or shape mismatch between operands.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A documented precondition did not hold. Inside the cohomology code this
/// signals a broken complex identity (for example a failed containment).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Model rejected (integrability, J^2 != -1, unknown fixture, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Something outside the decidable fragment (irrational eigenvalues, oversized
/// rational-root searches).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// (t - lambda) failed to be invertible on some homogeneous degree.
class SingularityError : public Error {
public:
    SingularityError(const std::string& message, int degree, std::optional<std::vector<int>> witness)
        : Error(message), degree_(degree), witness_(std::move(witness)) {}

    int degree() const { return degree_; }
    const std::optional<std::vector<int>>& witness() const { return witness_; }

private:
    int degree_;
    std::optional<std::vector<int>> witness_;
};

}  // namespace twistcoh
