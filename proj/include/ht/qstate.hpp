#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ht {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

namespace tol {
// Algebraic identities (trace, hermiticity, X sparsity, population sums).
inline constexpr double kAlgebraic = 1e-12;
// Smallest admissible eigenvalue of a density matrix.
inline constexpr double kEigen = 1e-10;
}  // namespace tol

// Square complex matrix interpreted as a density operator. Construction only
// checks that the matrix is square; physical validity is reported by
// validate() so that diagnostics can be produced for invalid input.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix identity_mixed(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }
  Complex trace() const { return entries_.trace(); }

 private:
  ComplexMatrix entries_;
};

// X-type two-qubit state in the basis {|00>, |01>, |10>, |11>}:
//
//   [ r11   0     0    -r14 ]
//   [ 0     r22  -r23   0   ]
//   [ 0    -r23   r33   0   ]
//   [ -r14  0     0     r44 ]
//
// All six fields are real and nonnegative; the anti-diagonal coherences are
// carried with explicit minus signs in the matrix.
struct XState {
  double r11 = 0.0;
  double r22 = 0.0;
  double r33 = 0.0;
  double r44 = 0.0;
  double r14 = 0.0;
  double r23 = 0.0;

  friend bool operator==(const XState&, const XState&) = default;
};

struct StateReport {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  bool is_valid = false;
};

// Validated construction. Throws TraceError when the populations do not sum to
// one, PositivityError for negative fields or a non-PSD matrix. Never
// renormalizes.
XState make_x_state(double r11, double r22, double r33, double r44, double r14,
                    double r23);

DensityMatrix x_to_matrix(const XState& x);

// Inverse of x_to_matrix. Throws ShapeError when weight leaks outside the X
// pattern and ConventionError for complex or positive anti-diagonal entries.
XState matrix_to_x(const DensityMatrix& m);

// Reduced state over the factors listed in `keep`, in the order given.
// Factor 0 is the most significant index of the row-major tensor ordering.
DensityMatrix partial_trace(const DensityMatrix& m,
                            std::span<const int> factor_dims,
                            std::span<const int> keep);

StateReport validate(const DensityMatrix& m) noexcept;

bool is_entangled_x(const XState& x);

double max_abs_diff(const XState& a, const XState& b);

}  // namespace ht
