#include "finslerwarp/linalg.hpp"

namespace fw {

bool is_positive_definite(const Mat& m) {
  const std::size_t n = m.rows();
  Mat l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = m(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(acc > 0.0) || !std::isfinite(acc)) return false;
        l(i, i) = std::sqrt(acc);
      } else {
        l(i, j) = acc / l(j, j);
      }
    }
  }
  return true;
}

namespace {

// In-place LU with partial pivoting; returns pivot rows and sign, throws on
// singular input.
int lu_decompose(Mat& a, std::vector<std::size_t>& piv) {
  const std::size_t n = a.rows();
  piv.resize(n);
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = std::abs(a(col, col));
    for (std::size_t row = col + 1; row < n; ++row) {
      double mag = std::abs(a(row, col));
      if (mag > best_mag) {
        best = row;
        best_mag = mag;
      }
    }
    if (!(best_mag > 0.0)) {
      throw Error(ErrorCode::singular_tensor, "singular matrix in LU");
    }
    if (best != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(col, k), a(best, k));
      std::swap(piv[col], piv[best]);
      sign = -sign;
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      a(row, col) /= a(col, col);
      for (std::size_t k = col + 1; k < n; ++k)
        a(row, k) -= a(row, col) * a(col, k);
    }
  }
  return sign;
}

}  // namespace

std::vector<double> lu_solve(Mat a, std::vector<double> b) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv;
  lu_decompose(a, piv);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) x[i] -= a(i, k) * x[k];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) x[i] -= a(i, k) * x[k];
    x[i] /= a(i, i);
  }
  return x;
}

Mat lu_invert(const Mat& a) {
  const std::size_t n = a.rows();
  Mat inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> e(n, 0.0);
    e[col] = 1.0;
    std::vector<double> x = lu_solve(a, std::move(e));
    for (std::size_t row = 0; row < n; ++row) inv(row, col) = x[row];
  }
  return inv;
}

double lu_det(Mat a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> piv;
  int sign;
  try {
    sign = lu_decompose(a, piv);
  } catch (const Error&) {
    return 0.0;
  }
  double det = sign;
  for (std::size_t i = 0; i < n; ++i) det *= a(i, i);
  return det;
}

std::vector<double> mat_vec(const Mat& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace fw
