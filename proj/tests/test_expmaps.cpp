#include <doctest.h>

#include <cmath>

#include "loopforge/catalog.hpp"
#include "loopforge/expmaps.hpp"
#include "loopforge/rng.hpp"
#include "oracles.hpp"

using namespace loopforge;
using oracle::Cx;

namespace {

Eigen::VectorXd ball(Rng& rng, int dim, double radius) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-1, 1);
  const double r = radius * rng.unit();
  return v.norm() > 0 ? Eigen::VectorXd(v * (r / v.norm())) : v;
}

// Coordinates of (linear part, translation part) in a semidirect model's basis.
Eigen::VectorXd semi_coords(const GroupModel& m, const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z) {
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = 0; i < m.algebra()->dim(); ++i) {
    const FactorAlg f = m.components(m.algebra()->unit(i))[0];
    Eigen::MatrixXcd b(4, 2);
    b << f.y, f.z;
    basis.push_back(b);
  }
  Eigen::MatrixXcd target(4, 2);
  target << y, z;
  double res = 0;
  const Eigen::VectorXd c = oracle::coords(basis, target, &res);
  REQUIRE(res <= 1e-12);
  return c;
}

}  // namespace

TEST_CASE("C and S reproduce exp on X^2 = k I") {
  for (const Cx k : {Cx(2.5, 0), Cx(-1.7, 0), Cx(0, 0), Cx(1e-12, 0), Cx(0.3, 1.1)}) {
    const Cx r = std::sqrt(k);
    Eigen::Matrix2cd x;
    x << r, 0, 0, -r;
    const Eigen::Matrix2cd e = exp_c(k) * oracle::I2() + exp_s(k) * x;
    CHECK(oracle::max_abs(e - oracle::expm(x)) <= 1e-13);
  }
}

TEST_CASE("closed-form exponential matches the oracle on the simple algebras") {
  // Radius 2 ball, 1000 inputs per algebra.
  std::uint64_t salt = 0;
  for (const auto& model : {sl2r_model(), sl2c_model(), su2_model()}) {
    const auto alg = model->algebra();
    Rng rng(splitmix64(++salt));
    double worst = 0;
    for (int s = 0; s < 1000; ++s) {
      const AlgebraVector x(alg, ball(rng, alg->dim(), 2.0));
      worst = std::max(worst, oracle::max_abs(exp_closed(x).value - oracle::expm(sl2_matrix(x))));
    }
    CAPTURE(alg->name());
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("closed-form branches") {
  const auto alg = sl2r_model()->algebra();
  CHECK(exp_closed(AlgebraVector(alg, Eigen::Vector3d(1, 0, 0))).branch == ExpBranch::hyperbolic);
  CHECK(exp_closed(AlgebraVector(alg, Eigen::Vector3d(0, 0, 1))).branch == ExpBranch::trigonometric);
  // K + U is nilpotent.
  const auto nil = exp_closed(AlgebraVector(alg, Eigen::Vector3d(1, 0, 1)));
  CHECK(nil.branch == ExpBranch::degenerate_series);
  CHECK(oracle::max_abs(nil.value - (oracle::I2() + oracle::K() + oracle::U())) <= 1e-14);
  // exp(t U) = rot(t)
  CHECK(oracle::max_abs(exp_closed(AlgebraVector(alg, Eigen::Vector3d(0, 0, 0.9))).value - mat::rot(0.9)) <= 1e-14);
}

TEST_CASE("series exponential relative accuracy up to norm 8") {
  Rng rng(5);
  for (int s = 0; s < 200; ++s) {
    Eigen::MatrixXcd x(3, 3);
    for (int i = 0; i < 9; ++i) x(i) = Cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    x *= 8.0 * rng.unit() / x.cwiseAbs().colwise().sum().maxCoeff();
    const Eigen::MatrixXcd want = oracle::expm(x);
    CHECK((exp_series(x) - want).norm() / want.norm() <= 1e-13);
  }
}

TEST_CASE("semidirect translation matches the ODE oracle and RK4") {
  std::uint64_t salt = 100;
  for (const auto& model : {alpha_model(), gamma_model()}) {
    Rng rng(splitmix64(++salt));
    double series = 0, rk4 = 0;
    for (int s = 0; s < 200; ++s) {
      const AlgebraVector x(model->algebra(), ball(rng, 6, 2.0));
      const FactorAlg f = model->components(x.c)[0];
      const Eigen::Matrix2cd y = f.y;
      const GroupElement g = exp_semidirect(*model, x);
      const Eigen::Matrix2cd want = oracle::ode_translation(y, f.z);
      series = std::max(series, oracle::max_abs(g.f[0].x - want));
      rk4 = std::max(rk4, oracle::max_abs(rk4_translation(y, f.z) - want));
      CHECK(oracle::max_abs(g.f[0].a - oracle::expm(y)) <= 1e-10);
    }
    CHECK(series <= 1e-10);
    CHECK(rk4 <= 1e-8);
  }
}

TEST_CASE("semidirect series signals its truncation cap") {
  const Eigen::Matrix2cd y = 40.0 * oracle::K();
  CHECK_THROWS_AS(semidirect_translation(y, oracle::T()), RangeError);
  CHECK_THROWS_AS(exp_semidirect(*sl2r_model(), AlgebraVector::zero(sl2r_model()->algebra())), UnsupportedError);
}

TEST_CASE("alpha first component display") {
  const double l1 = 1.0, l2 = 0.5, l3 = 0.25, A = l2 * l2 + l3 * l3, s = std::sqrt(A);
  Eigen::Matrix2cd y, z, first;
  y << l2, l3, l3, -l2;
  z << -l2, -l1 - l3, l1 - l3, l2;
  first << std::cosh(s) + std::sinh(s) / s * l2, std::sinh(s) / s * l3, std::sinh(s) / s * l3,
      std::cosh(s) - std::sinh(s) / s * l2;
  const GroupElement g = exp_semidirect(*alpha_model(), AlgebraVector(alpha_model()->algebra(), semi_coords(*alpha_model(), y, z)));
  CHECK(std::min(oracle::max_abs(g.f[0].a - first), oracle::max_abs(g.f[0].a + first)) <= 1e-12);
}

TEST_CASE("alpha second component display is the translation conjugated by the first component") {
  for (const auto& [l1, l2, l3] : {std::tuple{1.0, 0.5, 0.25}, std::tuple{-0.7, 0.3, -0.9}, std::tuple{0.4, -1.2, 0.1}}) {
    const double A = l2 * l2 + l3 * l3, s = std::sqrt(A);
    const double q = std::pow(std::exp(s) - std::exp(-s), 2), w = std::exp(2 * s) - std::exp(-2 * s);
    const double r = l3 * l1 / (4 * A) * q - l2;
    const double sv = -l1 / (4 * s) * w - l2 * l1 / (4 * A) * q - l3;
    const double v = l1 / (4 * s) * w - l2 * l1 / (4 * A) * q - l3;
    Eigen::Matrix2cd y, z, shown;
    y << l2, l3, l3, -l2;
    z << -l2, -l1 - l3, l1 - l3, l2;
    shown << r, sv, v, -r;
    const GroupElement g = exp_semidirect(*alpha_model(), AlgebraVector(alpha_model()->algebra(), semi_coords(*alpha_model(), y, z)));
    const Eigen::Matrix2cd a = g.f[0].a, gam = g.f[0].x;
    CHECK(oracle::max_abs(a * gam * a.inverse() - shown) <= 1e-9);
  }
}

TEST_CASE("gamma first component display") {
  const double a = 0.3, b = 0.5, c = 0.2, k = a * a + b * b + c * c, sk = std::sqrt(k);
  const Cx i(0, 1);
  Eigen::Matrix2cd y, z, first;
  y << -c * i, -a + b * i, a + b * i, c * i;
  z << -c, a * i + b, -a * i + b, c;
  first << std::cos(sk) - c * i * std::sin(sk) / sk, (-a + b * i) * std::sin(sk) / sk, (a + b * i) * std::sin(sk) / sk,
      std::cos(sk) + c * i * std::sin(sk) / sk;
  const GroupElement g = exp_semidirect(*gamma_model(), AlgebraVector(gamma_model()->algebra(), semi_coords(*gamma_model(), y, z)));
  CHECK(oracle::max_abs(g.f[0].a - first) <= 1e-12);
  CHECK(oracle::max_abs(g.f[0].x - oracle::ode_translation(y, z)) <= 1e-12);
}

TEST_CASE("gamma translation commutes through when linear and translation parts are parallel") {
  // On m_1 with b = c = 0: linear part -a U, translation a iU, so exp has translation a iU.
  const double a = 1.3;
  const Cx i(0, 1);
  const Eigen::Matrix2cd y = -a * oracle::U(), z = a * i * oracle::U();
  const GroupElement g = exp_semidirect(*gamma_model(), AlgebraVector(gamma_model()->algebra(), semi_coords(*gamma_model(), y, z)));
  CHECK(oracle::max_abs(g.f[0].x - z) <= 1e-13);
}
