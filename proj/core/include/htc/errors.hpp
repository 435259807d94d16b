#pragma once

#include <stdexcept>
#include <string>

namespace htc {

// Invalid argument values (CLI maps these to exit code 2).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A stated precondition of a closed-form bound does not hold.
class PreconditionError : public ParameterError {
 public:
  explicit PreconditionError(const std::string& what) : ParameterError(what) {}
};

// Invalid input data: empty vectors, shape mismatches, degenerate samples.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class DegenerateSampleError : public DomainError {
 public:
  explicit DegenerateSampleError(const std::string& what) : DomainError(what) {}
};

// Numerical failures: non-convergence, divergence (CLI maps these to exit code 3).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class DivergenceError : public NumericError {
 public:
  explicit DivergenceError(const std::string& what) : NumericError(what) {}
};

// Malformed persisted files (bad magic, truncation, shape-chain mismatch).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace htc
