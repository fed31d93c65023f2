#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "loopforge/groups.hpp"
#include "loopforge/lie_algebra.hpp"

namespace loopforge {

class RangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ExpBranch { hyperbolic, trigonometric, degenerate_series };

const char* branch_name(ExpBranch b);

struct ExpResult {
  Eigen::Matrix2cd value;
  ExpBranch branch;
  std::complex<double> killing;
};

inline constexpr double kDegenerateKilling = 1e-8;

// C(k) and S(k) with exp X = C(k) I + S(k) X whenever X^2 = k I.
std::complex<double> exp_c(std::complex<double> k);
std::complex<double> exp_s(std::complex<double> k);

// Closed-form exponential of a traceless 2x2 matrix.
ExpResult exp_traceless(const Eigen::Matrix2cd& x);

// The 2x2 matrix of x in sl2(R) (K, T, U), sl2(C) (K, T, U, iK, iT, iU) or su2 (iK, U, iT).
Eigen::Matrix2cd sl2_matrix(const AlgebraVector& x);
ExpResult exp_closed(const AlgebraVector& x);

// Scaling-and-squaring Taylor exponential, used as the oracle.
Eigen::MatrixXcd exp_series(const Eigen::MatrixXcd& x);

// Translation part of exp(Y, Z) in a semidirect factor: sum_n L^n(Z)/(n+1)!, L(W) = [W, Y].
Eigen::Matrix2cd semidirect_translation(const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z);

// Group exponential of a realized algebra: closed form on 2x2 factors, the series above on
// semidirect factors, Taylor on 3x3 factors, componentwise on direct products.
GroupElement exp_model(const GroupModel& model, const Eigen::VectorXd& x);
GroupElement exp_semidirect(const GroupModel& model, const AlgebraVector& x);
GroupElement exp_direct_product(const GroupModel& model, const AlgebraVector& x);

// RK4 integration of gamma' = -Y gamma + gamma Y + Z, gamma(0) = 0, up to t = 1.
Eigen::Matrix2cd rk4_translation(const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z, double step = 1e-3);

}  // namespace loopforge
