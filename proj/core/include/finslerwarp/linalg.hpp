#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "finslerwarp/errors.hpp"
#include "finslerwarp/jet.hpp"

namespace fw {

// Dense row-major matrix sized for tangent-space work (n is the manifold
// dimension, so single digits).
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  friend double max_abs_diff(const Mat& a, const Mat& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      m = std::max(m, std::abs(a.a_[k] - b.a_[k]));
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Cholesky feasibility test for symmetric positive definiteness.
bool is_positive_definite(const Mat& m);

// LU with partial pivoting. solve/invert throw Error(singular_tensor) when
// the pivot collapses.
std::vector<double> lu_solve(Mat a, std::vector<double> b);
Mat lu_invert(const Mat& a);
double lu_det(Mat a);

std::vector<double> mat_vec(const Mat& a, const std::vector<double>& x);

// Scalar magnitude used for pivot selection in the generic elimination.
inline double pivot_magnitude(double x) { return std::abs(x); }
inline double pivot_magnitude(const Jet& x) { return std::abs(x.value()); }

// Gaussian elimination over any field-like scalar (double, or Jet for
// derivative-carrying solves). A and b are consumed. Throws
// Error(singular_tensor) when no usable pivot remains.
template <typename T>
std::vector<T> gauss_solve(std::vector<std::vector<T>> a, std::vector<T> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = pivot_magnitude(a[col][col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      double mag = pivot_magnitude(a[row][col]);
      if (mag > best_mag) {
        best = row;
        best_mag = mag;
      }
    }
    if (!(best_mag > 0.0)) {
      throw Error(ErrorCode::singular_tensor,
                  "singular system in gaussian elimination");
    }
    std::swap(a[col], a[best]);
    std::swap(b[col], b[best]);
    for (std::size_t row = col + 1; row < n; ++row) {
      T factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k)
        a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<T> x(b);
  for (std::size_t i = n; i-- > 0;) {
    T acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace fw
