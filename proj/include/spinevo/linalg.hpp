#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "spinevo/errors.hpp"

namespace spinevo {

// Dense row-major matrix, just large enough for the needs of this library
// (eigenvector tables and the brute-force register Hamiltonians).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
  double* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    double s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

namespace detail {

inline double pythag(double a, double b) {
  // sqrt(a^2+b^2) without destructive overflow or underflow
  double aa = std::fabs(a), ab = std::fabs(b);
  if (aa > ab) {
    double r = ab / aa;
    return aa * std::sqrt(1.0 + r * r);
  }
  if (ab == 0.0) return 0.0;
  double r = aa / ab;
  return ab * std::sqrt(1.0 + r * r);
}

// Implicit-shift QL for a symmetric tridiagonal matrix, derived from the
// Algol procedures tql1/tql2 (Bowdler, Martin, Reinsch, Wilkinson) via the
// usual 0-based restatement. d holds the diagonal, e the subdiagonal in
// e[0..n-2]; on return d holds eigenvalues (unordered). When z is non-null
// its columns accumulate the rotations; pass the identity to get
// eigenvectors of the tridiagonal itself, or the Householder transform to
// get eigenvectors of a full symmetric matrix.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z,
                           int max_sweeps = 50) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  std::vector<double> sub(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) sub[i] = e[i];

  // negligibility combines the neighbour test with a whole-matrix scale;
  // the neighbour test alone spins on blocks of near-zero diagonals, a
  // running scale alone spins when the reduction front-loads tiny rows
  const double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::fabs(d[i]) + std::fabs(sub[i]));
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(sub[m]) <= eps * dd || std::fabs(sub[m]) <= eps * anorm) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw convergence_failure("tridiagonal QL exceeded its sweep budget");
        double g = (d[l + 1] - d[l]) / (2.0 * sub[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + sub[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * sub[i];
          double b = c * sub[i];
          r = pythag(f, g);
          sub[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            sub[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (int k = 0; k < z->rows(); ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        sub[l] = g;
        sub[m] = 0.0;
      }
    } while (m != l);
  }
}

// Householder reduction of a symmetric matrix to tridiagonal form (tred2).
// On return `a` holds the accumulated orthogonal transform, d the diagonal
// and e[0..n-2] the subdiagonal of the reduced matrix.
inline void householder_tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e) {
  const int n = a.rows();
  d.assign(n, 0.0);
  std::vector<double> ee(n, 0.0);

  for (int i = n - 1; i > 0; --i) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(a(i, k));
      if (scale == 0.0) {
        ee[i] = a(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
        ee[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          a(j, i) = a(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          ee[j] = g / h;
          f += ee[j] * a(i, j);
        }
        double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a(i, j);
          ee[j] = g = ee[j] - hh * f;
          for (int k = 0; k <= j; ++k) a(j, k) -= (f * ee[k] + g * a(i, k));
        }
      }
    } else {
      ee[i] = a(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  ee[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
        for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
      }
    }
    d[i] = a(i, i);
    a(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) a(j, i) = a(i, j) = 0.0;
  }
  e.assign(n > 1 ? n - 1 : 0, 0.0);
  for (int i = 1; i < n; ++i) e[i - 1] = ee[i];
}

// Sort eigenvalues ascending, permuting the matching eigenvector columns.
inline void sort_eigen(std::vector<double>& values, Matrix* vectors) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = values[idx[i]];
  values = v;
  if (vectors != nullptr) {
    Matrix sorted(vectors->rows(), vectors->cols());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < vectors->rows(); ++i) sorted(i, j) = (*vectors)(i, idx[j]);
    *vectors = sorted;
  }
}

}  // namespace detail

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]
};

// Full eigensystem of a symmetric tridiagonal matrix (diag size n,
// offdiag size n-1).
inline EigenSystem tridiagonal_eigensystem(std::vector<double> diag, std::vector<double> offdiag,
                                           bool want_vectors = true, int max_sweeps = 50) {
  if (offdiag.size() + 1 != diag.size() && !(diag.size() <= 1 && offdiag.empty()))
    throw dimension_mismatch("offdiagonal length must be one less than the diagonal length");
  EigenSystem s;
  Matrix z;
  Matrix* zp = nullptr;
  if (want_vectors) {
    z = Matrix::identity(static_cast<int>(diag.size()));
    zp = &z;
  }
  detail::tridiagonal_ql(diag, offdiag, zp, max_sweeps);
  s.values = std::move(diag);
  detail::sort_eigen(s.values, zp);
  if (want_vectors) s.vectors = std::move(z);
  return s;
}

// Full eigensystem of a dense symmetric matrix (Householder + QL).
inline EigenSystem symmetric_eigensystem(Matrix a, int max_sweeps = 50) {
  std::vector<double> d, e;
  detail::householder_tridiagonalize(a, d, e);
  detail::tridiagonal_ql(d, e, &a, max_sweeps);
  detail::sort_eigen(d, &a);
  return EigenSystem{std::move(d), std::move(a)};
}

// Eigenvalues of a complex Hermitian matrix via the standard real embedding
// [[Re, -Im], [Im, Re]]; each eigenvalue of the original appears twice.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, int n) {
  Matrix m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& z = h[static_cast<size_t>(i) * n + j];
      m(i, j) = z.real();
      m(n + i, n + j) = z.real();
      m(i, n + j) = -z.imag();
      m(n + i, j) = z.imag();
    }
  }
  EigenSystem s = symmetric_eigensystem(std::move(m));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (s.values[2 * i] + s.values[2 * i + 1]);
  return out;
}

}  // namespace spinevo
