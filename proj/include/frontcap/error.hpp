#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontcap {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (shape mismatch, bad parameter).
class ContractViolation : public Error {
public:
    using Error::Error;
};

// A physical or discrete invariant failed during a run (negative density,
// boundary contact, species-sum drift).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// Time step too large for a hard stability condition.
class CflViolation : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

// Linear solver failures.
class SolverError : public Error {
public:
    using Error::Error;
};

class SingularSystem : public SolverError {
public:
    SingularSystem(std::size_t pivot, const std::string& what)
        : SolverError(what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class ConvergenceFailure : public SolverError {
public:
    ConvergenceFailure(const std::string& what, std::vector<double> best_iterate,
                       std::vector<double> residual_history)
        : SolverError(what), best_(std::move(best_iterate)),
          history_(std::move(residual_history)) {}

    const std::vector<double>& best_iterate() const noexcept { return best_; }
    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> best_;
    std::vector<double> history_;
};

}  // namespace frontcap
