#include "ht/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ht/errors.hpp"

namespace ht {

namespace {

int factor_product(std::span<const int> dims) {
  long long prod = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("factor dimensions must be positive");
    prod *= d;
    if (prod > std::numeric_limits<int>::max()) {
      throw DimensionError("tensor dimension overflows int");
    }
  }
  return static_cast<int>(prod);
}

// Mixed-radix decomposition of a flat index, most significant factor first.
void unflatten(int index, std::span<const int> dims, std::vector<int>& digits) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
}

DensityMatrix DensityMatrix::identity_mixed(int dim) {
  if (dim <= 0) throw DimensionError("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / double(dim));
}

XState make_x_state(double r11, double r22, double r33, double r44, double r14,
                    double r23) {
  for (double v : {r11, r22, r33, r44, r14, r23}) {
    if (!std::isfinite(v)) throw DomainError("X-state fields must be finite");
  }
  const double sum = r11 + r22 + r33 + r44;
  if (std::abs(sum - 1.0) > tol::kAlgebraic) {
    std::ostringstream msg;
    msg << "X-state populations sum to " << sum << ", expected 1";
    throw TraceError(msg.str());
  }
  for (double v : {r11, r22, r33, r44, r14, r23}) {
    if (v < 0.0) throw PositivityError("X-state fields must be nonnegative");
  }
  // The X matrix splits into two 2x2 blocks, {|00>,|11>} and {|01>,|10>};
  // each is PSD iff its determinant is nonnegative.
  if (r22 * r33 < r23 * r23 - tol::kAlgebraic ||
      r11 * r44 < r14 * r14 - tol::kAlgebraic) {
    throw PositivityError("X-state is not positive semidefinite");
  }
  XState x{r11, r22, r33, r44, r14, r23};
  const StateReport report = validate(x_to_matrix(x));
  if (report.min_eigenvalue < -tol::kEigen) {
    throw PositivityError("X-state has a negative eigenvalue");
  }
  return x;
}

DensityMatrix x_to_matrix(const XState& x) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = x.r11;
  m(1, 1) = x.r22;
  m(2, 2) = x.r33;
  m(3, 3) = x.r44;
  m(0, 3) = m(3, 0) = -x.r14;
  m(1, 2) = m(2, 1) = -x.r23;
  return DensityMatrix(std::move(m));
}

XState matrix_to_x(const DensityMatrix& m) {
  if (m.dim() != 4) throw DimensionError("X-state requires a 4x4 matrix");
  const auto& a = m.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool on_x = (i == j) || (i + j == 3);
      if (!on_x && std::abs(a(i, j)) > tol::kAlgebraic) {
        std::ostringstream msg;
        msg << "entry (" << i + 1 << "," << j + 1 << ") = " << std::abs(a(i, j))
            << " lies outside the X pattern";
        throw ShapeError(msg.str());
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (std::abs(a(i, i).imag()) > tol::kAlgebraic) {
      throw ConventionError("diagonal entries must be real");
    }
  }
  auto coherence = [&](int i, int j) {
    const Complex upper = a(i, j);
    const Complex lower = a(j, i);
    if (std::abs(upper.imag()) > tol::kAlgebraic ||
        std::abs(lower.imag()) > tol::kAlgebraic) {
      throw ConventionError("anti-diagonal entries must be real");
    }
    if (upper.real() > tol::kAlgebraic || lower.real() > tol::kAlgebraic) {
      throw ConventionError("anti-diagonal entries must be nonpositive");
    }
    if (std::abs(upper.real() - lower.real()) > tol::kAlgebraic) {
      throw ConventionError("anti-diagonal entries must be symmetric");
    }
    return std::max(0.0, -0.5 * (upper.real() + lower.real()));
  };
  XState x;
  x.r11 = a(0, 0).real();
  x.r22 = a(1, 1).real();
  x.r33 = a(2, 2).real();
  x.r44 = a(3, 3).real();
  x.r14 = coherence(0, 3);
  x.r23 = coherence(1, 2);
  return x;
}

DensityMatrix partial_trace(const DensityMatrix& m,
                            std::span<const int> factor_dims,
                            std::span<const int> keep) {
  const int total = factor_product(factor_dims);
  if (total != m.dim()) {
    std::ostringstream msg;
    msg << "factor dimensions multiply to " << total << " but matrix has dim "
        << m.dim();
    throw DimensionError(msg.str());
  }
  const int nfactors = static_cast<int>(factor_dims.size());
  std::vector<bool> kept(nfactors, false);
  std::vector<int> kept_dims;
  for (int k : keep) {
    if (k < 0 || k >= nfactors) throw DimensionError("keep index out of range");
    if (kept[k]) throw DimensionError("keep index repeated");
    kept[k] = true;
    kept_dims.push_back(factor_dims[k]);
  }
  const int out_dim = kept_dims.empty() ? 1 : factor_product(kept_dims);

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  std::vector<int> row_digits(nfactors), col_digits(nfactors);
  const auto& a = m.matrix();
  for (int row = 0; row < total; ++row) {
    unflatten(row, factor_dims, row_digits);
    for (int col = 0; col < total; ++col) {
      unflatten(col, factor_dims, col_digits);
      bool diagonal_in_traced = true;
      for (int k = 0; k < nfactors; ++k) {
        if (!kept[k] && row_digits[k] != col_digits[k]) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (!diagonal_in_traced) continue;
      int out_row = 0, out_col = 0;
      for (std::size_t s = 0; s < keep.size(); ++s) {
        out_row = out_row * kept_dims[s] + row_digits[keep[s]];
        out_col = out_col * kept_dims[s] + col_digits[keep[s]];
      }
      out(out_row, out_col) += a(row, col);
    }
  }
  return DensityMatrix(std::move(out));
}

StateReport validate(const DensityMatrix& m) noexcept {
  StateReport report;
  const auto& a = m.matrix();
  report.trace_error = std::abs(a.trace() - Complex(1.0, 0.0));
  report.hermiticity_error = (a - a.adjoint()).cwiseAbs().maxCoeff();
  const ComplexMatrix hermitian_part = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    report.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.is_valid = false;
    return report;
  }
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.is_valid = report.trace_error <= tol::kAlgebraic &&
                    report.hermiticity_error <= tol::kAlgebraic &&
                    report.min_eigenvalue >= -tol::kEigen;
  return report;
}

bool is_entangled_x(const XState& x) {
  return x.r22 * x.r33 < x.r14 * x.r14 || x.r11 * x.r44 < x.r23 * x.r23;
}

double max_abs_diff(const XState& a, const XState& b) {
  return std::max({std::abs(a.r11 - b.r11), std::abs(a.r22 - b.r22),
                   std::abs(a.r33 - b.r33), std::abs(a.r44 - b.r44),
                   std::abs(a.r14 - b.r14), std::abs(a.r23 - b.r23)});
}

}  // namespace ht
