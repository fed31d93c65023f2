#include "loopforge/expmaps.hpp"

#include <cmath>

namespace loopforge {

using C = std::complex<double>;

const char* branch_name(ExpBranch b) {
  switch (b) {
    case ExpBranch::hyperbolic:
      return "hyperbolic";
    case ExpBranch::trigonometric:
      return "trigonometric";
    default:
      return "degenerate-series";
  }
}

C exp_c(C k) {
  if (std::abs(k) < kDegenerateKilling) return 1.0 + k / 2.0 + k * k / 24.0 + k * k * k / 720.0;
  if (k.imag() == 0.0) {
    const double r = k.real();
    return r > 0 ? std::cosh(std::sqrt(r)) : std::cos(std::sqrt(-r));
  }
  return std::cosh(std::sqrt(k));
}

C exp_s(C k) {
  if (std::abs(k) < kDegenerateKilling) return 1.0 + k / 6.0 + k * k / 120.0 + k * k * k / 5040.0;
  if (k.imag() == 0.0) {
    const double r = k.real();
    if (r > 0) {
      const double w = std::sqrt(r);
      return std::sinh(w) / w;
    }
    const double w = std::sqrt(-r);
    return std::sin(w) / w;
  }
  const C w = std::sqrt(k);
  return std::sinh(w) / w;
}

ExpResult exp_traceless(const Eigen::Matrix2cd& x) {
  const C k = -(x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0));
  ExpResult r;
  r.killing = k;
  if (std::abs(k) < kDegenerateKilling)
    r.branch = ExpBranch::degenerate_series;
  else
    r.branch = k.real() > 0 ? ExpBranch::hyperbolic : ExpBranch::trigonometric;
  r.value = exp_c(k) * Eigen::Matrix2cd::Identity() + exp_s(k) * x;
  return r;
}

Eigen::Matrix2cd sl2_matrix(const AlgebraVector& x) {
  const auto& c = x.c;
  const C i(0, 1);
  switch (x.alg->kind()) {
    case AlgebraKind::sl2r:
      return c[0] * mat::K() + c[1] * mat::T() + c[2] * mat::U();
    case AlgebraKind::sl2c:
      return C(c[0], c[3]) * mat::K() + C(c[1], c[4]) * mat::T() + C(c[2], c[5]) * mat::U();
    case AlgebraKind::su2:
      return c[0] * i * mat::K() + c[1] * mat::U() + c[2] * i * mat::T();
    default:
      throw UnsupportedError("closed-form exponential needs sl2(R), sl2(C) or su2");
  }
}

ExpResult exp_closed(const AlgebraVector& x) {
  ExpResult r = exp_traceless(sl2_matrix(x));
  r.killing = killing_normalized(x, x);
  return r;
}

Eigen::MatrixXcd exp_series(const Eigen::MatrixXcd& x) {
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.25) s = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Eigen::MatrixXcd a = x / std::ldexp(1.0, s);
  const Eigen::Index n = x.rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

Eigen::Matrix2cd semidirect_translation(const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z) {
  Eigen::Matrix2cd sum = z;
  Eigen::Matrix2cd term = z;
  for (int n = 1; n <= 60; ++n) {
    term = (term * y - y * term) / static_cast<double>(n + 1);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-15 * std::max(1.0, sum.cwiseAbs().maxCoeff())) return sum;
  }
  throw RangeError("semidirect exponential series did not converge within 60 terms");
}

GroupElement exp_model(const GroupModel& model, const Eigen::VectorXd& x) {
  const auto comps = model.components(x);
  const auto& group = model.group();
  GroupElement g{group, std::vector<Factor>(comps.size())};
  for (size_t k = 0; k < comps.size(); ++k) {
    const auto kind = group->factors[k].kind;
    switch (kind) {
      case FactorKind::sl2r:
      case FactorKind::sl2c:
      case FactorKind::su2:
        g.f[k].a = exp_traceless(comps[k].y).value;
        break;
      case FactorKind::semi_sl2r:
      case FactorKind::semi_su2: {
        const Eigen::Matrix2cd y = comps[k].y;
        g.f[k].a = exp_traceless(y).value;
        g.f[k].x = semidirect_translation(y, comps[k].z);
        break;
      }
      case FactorKind::mat3:
        g.f[k].a = exp_series(comps[k].y);
        break;
      case FactorKind::line:
        g.f[k].a = comps[k].y;
        break;
      case FactorKind::circle: {
        // The algebra image is s*U, so exp is the rotation by s.
        g.f[k].a = mat::rot(comps[k].y(0, 1).real());
        break;
      }
    }
  }
  return g;
}

GroupElement exp_semidirect(const GroupModel& model, const AlgebraVector& x) {
  bool any = false;
  for (const auto& f : model.group()->factors)
    any = any || f.kind == FactorKind::semi_sl2r || f.kind == FactorKind::semi_su2 || f.kind == FactorKind::mat3;
  if (!any) throw UnsupportedError("exp_semidirect needs a semidirect model");
  return exp_model(model, x.c);
}

GroupElement exp_direct_product(const GroupModel& model, const AlgebraVector& x) {
  return exp_model(model, x.c);
}

Eigen::Matrix2cd rk4_translation(const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z, double step) {
  auto rhs = [&](const Eigen::Matrix2cd& g) -> Eigen::Matrix2cd { return -y * g + g * y + z; };
  const int n = static_cast<int>(std::lround(1.0 / step));
  const double h = 1.0 / n;
  Eigen::Matrix2cd g = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < n; ++i) {
    const Eigen::Matrix2cd k1 = rhs(g);
    const Eigen::Matrix2cd k2 = rhs(g + 0.5 * h * k1);
    const Eigen::Matrix2cd k3 = rhs(g + 0.5 * h * k2);
    const Eigen::Matrix2cd k4 = rhs(g + h * k3);
    g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return g;
}

}  // namespace loopforge
