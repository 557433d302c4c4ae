#pragma once

#include <stdexcept>
#include <string>

namespace qnd {

// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model-level violations (bad POVMs, shapes, ranges); the CLI maps these to
// its "invalid model" exit code.
struct ModelError : Error {
    using Error::Error;
};

struct NotPsdError : ModelError {
    using ModelError::ModelError;
};
struct InvalidPovmError : ModelError {
    using ModelError::ModelError;
};
struct OutcomeRangeError : ModelError {
    using ModelError::ModelError;
};
struct PartitionError : ModelError {
    using ModelError::ModelError;
};
struct ShapeError : ModelError {
    using ModelError::ModelError;
};
struct DomainError : ModelError {
    using ModelError::ModelError;
};
struct RegionTargetError : ModelError {
    using ModelError::ModelError;
};
struct SamplerError : ModelError {
    using ModelError::ModelError;
};
struct BudgetError : ModelError {
    using ModelError::ModelError;
};

// I/O-level failures, mapped to dedicated CLI exit codes.
struct FileError : Error {
    using Error::Error;
};
struct ParseError : Error {
    ParseError(const std::string& field, const std::string& what)
        : Error("parse error at '" + field + "': " + what), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

}  // namespace qnd
