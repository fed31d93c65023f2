#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "loopforge/catalog.hpp"
#include "loopforge/lie_algebra.hpp"

// Reference computations that do not go through the library code paths under test.
namespace oracle {

using Cx = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXcd expm(const MatrixXcd& x) { return x.exp(); }

inline Matrix2cd K() { return (Matrix2cd() << 1, 0, 0, -1).finished(); }
inline Matrix2cd T() { return (Matrix2cd() << 0, 1, 1, 0).finished(); }
inline Matrix2cd U() { return (Matrix2cd() << 0, 1, -1, 0).finished(); }
inline Matrix2cd I2() { return Matrix2cd::Identity(); }

// Solution at t = 1 of g' = -Y g + g Y + Z, g(0) = 0, read off the exponential of the
// augmented linear system on vec(g) (column-major).
inline Matrix2cd ode_translation(const Matrix2cd& y, const Matrix2cd& z) {
  MatrixXcd m = MatrixXcd::Zero(5, 5);
  const MatrixXcd id = MatrixXcd::Identity(2, 2);
  MatrixXcd left(4, 4), right(4, 4);
  // vec(Y g) = (I kron Y) vec g, vec(g Y) = (Y^T kron I) vec g.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      left.block(2 * i, 2 * j, 2, 2) = id(i, j) * y;
      right.block(2 * i, 2 * j, 2, 2) = y(j, i) * id;
    }
  m.topLeftCorner(4, 4) = -left + right;
  for (int k = 0; k < 4; ++k) m(k, 4) = z(k % 2, k / 2);
  const MatrixXcd e = m.exp();
  Matrix2cd out;
  for (int k = 0; k < 4; ++k) out(k % 2, k / 2) = e(k, 4);
  return out;
}

// Coordinates of a matrix in the span of the given matrices (least squares over the reals).
inline VectorXd coords(const std::vector<MatrixXcd>& basis, const MatrixXcd& m, double* residual = nullptr) {
  const Eigen::Index n = m.size();
  MatrixXd a(2 * n, static_cast<Eigen::Index>(basis.size()));
  for (size_t k = 0; k < basis.size(); ++k) {
    const MatrixXcd& b = basis[k];
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, static_cast<Eigen::Index>(k)) = b(i).real();
      a(n + i, static_cast<Eigen::Index>(k)) = b(i).imag();
    }
  }
  VectorXd rhs(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = m(i).real();
    rhs(n + i) = m(i).imag();
  }
  const VectorXd c = a.colPivHouseholderQr().solve(rhs);
  if (residual) *residual = (a * c - rhs).norm();
  return c;
}

inline MatrixXcd combo(const std::vector<MatrixXcd>& basis, const VectorXd& c) {
  MatrixXcd out = MatrixXcd::Zero(basis[0].rows(), basis[0].cols());
  for (size_t k = 0; k < basis.size(); ++k) out += c[static_cast<Eigen::Index>(k)] * basis[k];
  return out;
}

// ad matrix built from the stored structure constants, column j = [x, b_j].
inline MatrixXd ad(const loopforge::LieAlgebra& g, const VectorXd& x) {
  const int n = g.dim();
  MatrixXd a = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.col(j) += x[i] * g.structure(i, j);
  return a;
}

// Distance from v to the column span of m.
inline double span_gap(const MatrixXd& m, const VectorXd& v) {
  const VectorXd c = m.colPivHouseholderQr().solve(v);
  return (m * c - v).norm();
}

inline bool same_span(const MatrixXd& a, const MatrixXd& b, double tol) {
  for (int k = 0; k < b.cols(); ++k)
    if (span_gap(a, b.col(k)) > tol) return false;
  for (int k = 0; k < a.cols(); ++k)
    if (span_gap(b, a.col(k)) > tol) return false;
  return true;
}

inline double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
