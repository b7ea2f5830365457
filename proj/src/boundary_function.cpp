#include "nugap/boundary_function.hpp"

#include <stdexcept>

namespace nugap {

BoundaryFunction BoundaryFunction::scalar(Coordinate coord, ScalarFn f) {
  if (!f) throw std::invalid_argument("boundary function needs an evaluator");
  BoundaryFunction out;
  out.coord_ = coord;
  out.rows_ = 1;
  out.cols_ = 1;
  out.scalar_fn_ = std::move(f);
  return out;
}

BoundaryFunction BoundaryFunction::matrix(Coordinate coord, int rows, int cols, MatrixFn f) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("boundary function shape must be positive");
  if (!f) throw std::invalid_argument("boundary function needs an evaluator");
  BoundaryFunction out;
  out.coord_ = coord;
  out.rows_ = rows;
  out.cols_ = cols;
  out.matrix_fn_ = std::move(f);
  return out;
}

BoundaryFunction::Scalar BoundaryFunction::eval_scalar(Scalar point) const {
  if (scalar_fn_) return scalar_fn_(point);
  if (rows_ != 1 || cols_ != 1)
    throw std::invalid_argument("scalar evaluation of a non-scalar boundary function");
  return matrix_fn_(point)(0, 0);
}

Eigen::MatrixXcd BoundaryFunction::eval_matrix(Scalar point) const {
  if (matrix_fn_) return matrix_fn_(point);
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = scalar_fn_(point);
  return m;
}

}  // namespace nugap
