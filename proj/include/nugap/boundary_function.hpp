#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <optional>
#include <utility>

namespace nugap {

// Coordinate system a boundary function is expressed in. Disk functions are
// sampled at points of the open unit disk; half-plane functions at points
// with Re >= 0 and are composed with the Möbius transport when a disk
// contour is walked.
enum class Coordinate { disk, halfplane };

// Matrix-valued function on the boundary region, wrapped with shape and
// coordinate metadata. Evaluators must be pure: repeated evaluation at the
// same point yields bit-identical values, which is what makes the adaptive
// sampling loops deterministic and reusable across refinements.
class BoundaryFunction {
 public:
  using Scalar = std::complex<double>;
  using ScalarFn = std::function<Scalar(Scalar)>;
  using MatrixFn = std::function<Eigen::MatrixXcd(Scalar)>;

  static BoundaryFunction scalar(Coordinate coord, ScalarFn f);
  static BoundaryFunction matrix(Coordinate coord, int rows, int cols, MatrixFn f);

  Coordinate coordinate() const { return coord_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1 && scalar_fn_; }

  Scalar eval_scalar(Scalar point) const;
  Eigen::MatrixXcd eval_matrix(Scalar point) const;

  // Analytic hints, set by constructors that know the structure.
  //
  // oscillation_rate bounds |d arg / d Im(s)| of any delay-driven factor
  // (0 means no hint); sampling loops use it to seed an adequate density.
  double oscillation_rate = 0.0;
  // lim sup of sigma_max(F(i*omega)) as |omega| -> inf, when known.
  std::optional<double> tail_limit;
  // F(conj(s)) = conj(F(s)); lets norm searches scan omega >= 0 only.
  bool real_symmetric = false;

 private:
  Coordinate coord_ = Coordinate::halfplane;
  int rows_ = 1;
  int cols_ = 1;
  ScalarFn scalar_fn_;
  MatrixFn matrix_fn_;
};

}  // namespace nugap
