#pragma once

#include <stdexcept>
#include <string>

namespace nugap {

// Numerical failure inside a factorization step (indefinite para-hermitian
// sum, spectrum touching the imaginary axis, residual out of tolerance).
class FactorizationError : public std::runtime_error {
 public:
  explicit FactorizationError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation hit a degenerate point: denominator modulus under the pole
// floor, or a non-finite sample where a finite one is required.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// A winding computation found the function vanishing on the contour.
class WindingError : public std::runtime_error {
 public:
  explicit WindingError(const std::string& what) : std::runtime_error(what) {}
};

// The invertibility margin passed but the winding sequence did not
// stabilize; the verdict is neither 1 nor the norm branch. Callers must
// surface this, never map it to a value.
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nugap
