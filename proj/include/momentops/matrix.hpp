#ifndef MOMENTOPS_MATRIX_HPP
#define MOMENTOPS_MATRIX_HPP

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "momentops/scalar.hpp"

namespace momentops {

// Dense matrix over an exact or floating scalar. Sizes here are tiny
// (block dimensions r_n^d), so plain Gaussian elimination is used
// throughout; over Q it is exact.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: bad size");
  }
  Matrix(int rows, int cols, std::initializer_list<T> vals)
      : rows_(rows), cols_(cols), a_(vals) {
    if (static_cast<int>(a_.size()) != rows * cols)
      throw std::invalid_argument("Matrix: wrong number of entries");
  }

  static Matrix identity(int n) {
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = T(1);
    return I;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix D(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
      D(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return D;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) { return a_[r * cols_ + c]; }
  const T& operator()(int r, int c) const { return a_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& v = (*this)(i, k);
        if (v == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }
  Matrix operator*(const T& s) const {
    Matrix r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& v : a_)
      if (!scalar_traits<T>::is_zero(v, tol)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, scalar_traits<T>::magnitude(v));
    return m;
  }

  void set_block(int r0, int c0, const Matrix& b) {
    for (int r = 0; r < b.rows_; ++r)
      for (int c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix b(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  T determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
    Matrix m = *this;
    T det(1);
    for (int col = 0; col < cols_; ++col) {
      int piv = m.pivot_row(col, col);
      if (piv < 0) return T(0);
      if (piv != col) {
        m.swap_rows(piv, col);
        det = -det;
      }
      det *= m(col, col);
      for (int r = col + 1; r < rows_; ++r) {
        if (m(r, col) == T(0)) continue;
        T f = m(r, col) / m(col, col);
        for (int c = col; c < cols_; ++c) m(r, c) -= f * m(col, c);
      }
    }
    return det;
  }

  int rank(double tol = 0.0) const {
    Matrix m = *this;
    int rk = 0;
    for (int col = 0; col < cols_ && rk < rows_; ++col) {
      int piv = -1;
      double best = tol;
      for (int r = rk; r < rows_; ++r) {
        double mag = scalar_traits<T>::magnitude(m(r, col));
        if (!scalar_traits<T>::is_zero(m(r, col), tol) && mag > best - 1e-300) {
          if (piv < 0 || mag > best) {
            piv = r;
            best = mag;
          }
        }
      }
      if (piv < 0) continue;
      m.swap_rows(piv, rk);
      for (int r = rk + 1; r < rows_; ++r) {
        if (m(r, col) == T(0)) continue;
        T f = m(r, col) / m(rk, col);
        for (int c = col; c < cols_; ++c) m(r, c) -= f * m(rk, c);
      }
      ++rk;
    }
    return rk;
  }

  // Solve A X = B. Throws std::domain_error on singular A.
  Matrix solve(const Matrix& b) const {
    if (rows_ != cols_ || b.rows_ != rows_)
      throw std::invalid_argument("solve: shape mismatch");
    Matrix m = *this;
    Matrix x = b;
    for (int col = 0; col < cols_; ++col) {
      int piv = m.pivot_row(col, col);
      if (piv < 0) throw std::domain_error("solve: singular matrix");
      if (piv != col) {
        m.swap_rows(piv, col);
        x.swap_rows(piv, col);
      }
      for (int r = 0; r < rows_; ++r) {
        if (r == col || m(r, col) == T(0)) continue;
        T f = m(r, col) / m(col, col);
        for (int c = col; c < cols_; ++c) m(r, c) -= f * m(col, c);
        for (int c = 0; c < x.cols_; ++c) x(r, c) -= f * x(col, c);
      }
    }
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < x.cols_; ++c) x(r, c) /= m(r, r);
    return x;
  }

  Matrix inverse() const { return solve(identity(rows_)); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }
  void swap_rows(int r1, int r2) {
    for (int c = 0; c < cols_; ++c) std::swap((*this)(r1, c), (*this)(r2, c));
  }
  // Largest-magnitude nonzero pivot at or below `from` in `col`.
  // Over Q any nonzero pivot is fine; magnitude keeps floats stable.
  int pivot_row(int col, int from) const {
    int best = -1;
    double mag = 0.0;
    for (int r = from; r < rows_; ++r) {
      const T& v = (*this)(r, col);
      if (v == T(0)) continue;
      double m = scalar_traits<T>::magnitude(v);
      if (best < 0 || m > mag) {
        best = r;
        mag = m;
      }
    }
    return best;
  }

  int rows_, cols_;
  std::vector<T> a_;
};

template <typename T>
Matrix<T> operator*(const T& s, const Matrix<T>& m) {
  return m * s;
}

// Smallest singular value via cyclic Jacobi on A^t A. Used only by the
// float backend for quasi-definiteness verdicts.
inline double smallest_singular_value(const Matrix<double>& a) {
  int n = a.cols();
  Matrix<double> s = a.transpose() * a;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off < 1e-300) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(s(p, q)) < 1e-300) continue;
        double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (int k = 0; k < n; ++k) {
          double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
  }
  double mn = s(0, 0);
  for (int i = 1; i < n; ++i) mn = std::min(mn, s(i, i));
  return std::sqrt(std::max(mn, 0.0));
}

}  // namespace momentops

#endif
