#ifndef IMPLODE_ERRORS_HPP
#define IMPLODE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace implode {

// Base class for all library errors. Validation-type errors derive from
// ValidationError; solver breakdowns derive from SolverError. The CLI maps
// the former to exit code 2 and the latter to exit code 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct SolverError : Error {
    using Error::Error;
};

struct ShapeMismatch final : ValidationError {
    using ValidationError::ValidationError;
};
struct SubgroupViolation final : ValidationError {
    using ValidationError::ValidationError;
};
struct FormViolation final : ValidationError {
    using ValidationError::ValidationError;
};
struct ModeError final : ValidationError {
    using ValidationError::ValidationError;
};
struct NonUnit final : ValidationError {
    using ValidationError::ValidationError;
};
struct OddSymplectic final : ValidationError {
    using ValidationError::ValidationError;
};
struct NotIsotropic final : ValidationError {
    using ValidationError::ValidationError;
};
struct RankDeficient final : ValidationError {
    using ValidationError::ValidationError;
};
struct WrongComponent final : ValidationError {
    using ValidationError::ValidationError;
};
struct NotMaximalIsotropic final : ValidationError {
    using ValidationError::ValidationError;
};
struct NotOrdered final : ValidationError {
    using ValidationError::ValidationError;
};
struct NotPolystable final : ValidationError {
    using ValidationError::ValidationError;
};
struct AmbiguousRank final : ValidationError {
    using ValidationError::ValidationError;
};
struct OutsideChamber final : ValidationError {
    using ValidationError::ValidationError;
};
struct BoundaryPoint final : ValidationError {
    using ValidationError::ValidationError;
};
struct NotStableHere final : ValidationError {
    using ValidationError::ValidationError;
};
struct NotNormalForm final : ValidationError {
    using ValidationError::ValidationError;
};
struct SchemaError final : ValidationError {
    using ValidationError::ValidationError;
};
struct PreconditionViolated final : SolverError {
    using SolverError::SolverError;
};
struct SolverFailed final : SolverError {
    using SolverError::SolverError;
};

}  // namespace implode

#endif
