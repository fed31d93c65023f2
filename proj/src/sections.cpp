#include "loopforge/sections.hpp"

#include <cmath>
#include <numbers>

#include "loopforge/expmaps.hpp"

namespace loopforge {

using C = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

bool is_semi(FactorKind k) { return k == FactorKind::semi_sl2r || k == FactorKind::semi_su2; }

std::vector<int> choose_signs(const GroupElement& l, const GroupElement& r) {
  std::vector<int> s(l.f.size(), 1);
  for (size_t k = 0; k < l.f.size(); ++k) {
    if (!l.group->factors[k].mod_sign) continue;
    const double plus = (l.f[k].a - r.f[k].a).norm();
    const double minus = (l.f[k].a + r.f[k].a).norm();
    s[k] = plus <= minus ? 1 : -1;
  }
  return s;
}

VectorXd diff_vector(const GroupElement& l, const GroupElement& r, const std::vector<int>& signs) {
  std::vector<double> out;
  for (size_t k = 0; k < l.f.size(); ++k) {
    const Eigen::MatrixXcd d = l.f[k].a - static_cast<double>(signs[k]) * r.f[k].a;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      out.push_back(d(i).real());
      out.push_back(d(i).imag());
    }
    if (is_semi(l.group->factors[k].kind)) {
      const Eigen::Matrix2cd dx = l.f[k].x - r.f[k].x;
      for (Eigen::Index i = 0; i < 4; ++i) {
        out.push_back(dx(i).real());
        out.push_back(dx(i).imag());
      }
    }
  }
  return Eigen::Map<VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

double wrap(double t) {
  const double two_pi = 2 * std::numbers::pi;
  t = std::fmod(t, two_pi);
  if (t > std::numbers::pi) t -= two_pi;
  if (t <= -std::numbers::pi) t += two_pi;
  return t;
}

Eigen::Matrix2d real2(const Eigen::MatrixXcd& m) { return m.real(); }

double u_coeff(const Eigen::Matrix2cd& m) { return 0.5 * (m(0, 1) - m(1, 0)).real(); }

}  // namespace

Eigen::Matrix2cd polar_log(const Eigen::Matrix2cd& g, Eigen::Matrix2cd* unitary) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(g * g.adjoint());
  const Eigen::Matrix2cd V = es.eigenvectors();
  const Eigen::Vector2d ev = es.eigenvalues().cwiseMax(1e-300);
  const Eigen::Matrix2cd logp = V * Eigen::Vector2cd(0.5 * ev.array().log().matrix().cast<C>()).asDiagonal() *
                                V.adjoint();
  if (unitary) {
    const Eigen::Matrix2cd pinv =
        V * Eigen::Vector2cd(ev.array().rsqrt().matrix().cast<C>()).asDiagonal() * V.adjoint();
    *unitary = pinv * g;
  }
  return logp;
}

double hyperbolic_eq1(double a1, double b1, double a2, double b2, double l2, double l3) {
  const double A = l2 * l2 + l3 * l3;
  const double sh = exp_s(A).real(), ch = exp_c(A).real();
  return sh * (l2 * (a1 + a2 * a2 / a1) + l3 * (b1 + b2 * a2 / a1)) + ch * (a1 - a2 * a2 / a1);
}

double hyperbolic_eq2(double a1, double b1, double a2, double b2, double l2, double l3) {
  const double A = l2 * l2 + l3 * l3;
  const double sh = exp_s(A).real(), ch = exp_c(A).real();
  // Off-diagonal symmetry of L2^-1 P L1, multiplied by a2.
  return sh * (l3 * (a1 * a2 * a2 + 1.0 / a1) - l2 * (a1 * a2 * b2 + a2 * a2 * b1) - l3 * a2 * b1 * b2) +
         ch * (a2 * a2 * b1 - a1 * a2 * b2);
}

double hyperbolic_eq2_displayed(double a1, double b1, double a2, double b2, double l2, double l3) {
  const double A = l2 * l2 + l3 * l3;
  const double sh = exp_s(A).real(), ch = exp_c(A).real();
  return sh * (l2 * (b2 * a2 / a1 - b1) + l3 * (a1 * a1 + b2 * b2) / a1) + ch * (b1 - b2 * a2 / a1);
}

double lambda1_formula(double u, double l2, double l3) {
  const double s = std::sqrt(l2 * l2 + l3 * l3);
  if (s < 1e-12) return -u;
  return -4.0 * u * s / (std::exp(2 * s) - std::exp(-2 * s));
}

SectionModel::SectionModel(ReductivePair pair, SolverConfig cfg) : pair_(std::move(pair)), cfg_(cfg) {}

AlgebraVector SectionModel::m_vector(const VectorXd& lambda) const {
  return {pair_.alg(), pair_.m.basis * lambda};
}

GroupElement SectionModel::exp_m(const VectorXd& lambda) const {
  return exp_model(*pair_.model, pair_.m.basis * lambda);
}

GroupElement SectionModel::exp_h(const VectorXd& eta) const {
  return exp_model(*pair_.model, pair_.h.basis * eta);
}

SectionPoint SectionModel::point(const VectorXd& lambda) const { return {lambda, exp_m(lambda)}; }

SectionPoint SectionModel::identity_point() const { return point(VectorXd::Zero(dim_m())); }

VectorXd SectionModel::sample_lambda(Rng& rng, double radius) const {
  VectorXd v(dim_m());
  for (int i = 0; i < dim_m(); ++i) v[i] = rng.uniform(-radius, radius);
  return v;
}

GroupElement SectionModel::sample_element(Rng& rng, double range) const {
  VectorXd y1(dim_m()), y2(dim_h());
  for (int i = 0; i < dim_m(); ++i) y1[i] = rng.uniform(-range, range);
  for (int i = 0; i < dim_h(); ++i) y2[i] = rng.uniform(-range, range);
  return loopforge::multiply(exp_m(y1), exp_h(y2));
}

std::optional<TriangularSolution> SectionModel::triangular_pipeline(const GroupElement& g, Decomposition* out) const {
  if (pair_.entry != "C2") return std::nullopt;
  const double b1 = pair_.params.at("b1"), b2 = pair_.params.at("b2");
  const Eigen::Matrix2d A = real2(g.f[0].a);
  const Eigen::Matrix2d X = real2(g.f[0].x);
  TriangularSolution s;
  s.a = A.row(0).norm();
  const double ct = A(0, 0) / s.a, st = A(0, 1) / s.a;
  s.t = std::atan2(st, ct);
  s.b = A(1, 0) * ct + A(1, 1) * st;
  s.u = 0.5 * (X(0, 1) - X(1, 0));

  // Hyperbolic-plane equations for exp(l2 K + l3 T) = [[a,0],[b,1/a]] rot(t'), started at the polar factor.
  Eigen::Matrix2cd Lc;
  Lc << s.a, 0, s.b, 1.0 / s.a;
  const Eigen::Matrix2cd lp = polar_log(Lc);
  Eigen::Vector2d l(lp(0, 0).real(), lp(0, 1).real());
  auto F = [&](const Eigen::Vector2d& v) {
    return Eigen::Vector2d(hyperbolic_eq1(1, 0, s.a, s.b, v[0], v[1]), hyperbolic_eq2(1, 0, s.a, s.b, v[0], v[1]));
  };
  for (int it = 0; it < 50; ++it) {
    const Eigen::Vector2d f = F(l);
    if (f.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::Matrix2d J;
    const double h = 1e-7;
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d p = l, m = l;
      p[j] += h;
      m[j] -= h;
      J.col(j) = (F(p) - F(m)) / (2 * h);
    }
    l -= J.partialPivLu().solve(f);
  }
  s.eq1 = F(l)[0];
  s.eq2 = F(l)[1];

  const Eigen::Matrix2cd Y = l[0] * mat::K() + l[1] * mat::T();
  const Eigen::Matrix2cd P = exp_traceless(Y).value;
  const Eigen::Matrix2cd Rh = P.inverse() * g.f[0].a;
  // The U-part of the translation is linear in lambda_1.
  const Eigen::Matrix2cd S0 = -(l[0] * b2 + l[1] * b1) * mat::K() + (l[0] * b1 - l[1] * b2) * mat::T();
  const double g0 = u_coeff(semidirect_translation(Y, S0));
  const double g1 = u_coeff(semidirect_translation(Y, -mat::U()));
  const double l1 = (s.u - g0) / g1;
  s.lambda = Eigen::Vector3d(l1, l[0], l[1]);

  const VectorXd lam = s.lambda;
  const GroupElement m = exp_m(lam);
  GroupElement h = identity(g.group);
  h.f[0].a = Rh;
  h.f[0].x = g.f[0].x - Rh.inverse() * m.f[0].x * Rh;
  s.residual = group_distance(loopforge::multiply(m, h), g);
  if (out) {
    out->lambda = lam;
    out->x = m_vector(lam);
    out->m = m;
    out->h = h;
    out->residual = s.residual;
  }
  return s;
}

std::vector<SectionModel::Start> SectionModel::initial_guesses(const GroupElement& g) const {
  std::vector<Start> starts;
  const auto& id = pair_.entry;
  if (id == "C1" || id == "HYP2") {
    Eigen::Matrix2cd W;
    const Eigen::Matrix2cd lp = polar_log(g.f[0].a, &W);
    VectorXd c = VectorXd::Zero(pair_.alg()->dim());
    if (id == "C1") {
      c[0] = lp(0, 0).real();
      c[1] = lp(0, 1).real();
      c[5] = lp(0, 1).imag();
    } else {
      c[0] = lp(0, 0).real();
      c[1] = lp(0, 1).real();
      W = W.real().cast<C>();
    }
    GroupElement h = identity(g.group);
    h.f[0].a = W;
    starts.push_back({coordinates_in(pair_.m, c), h});
  } else if (id == "DIM4-3") {
    Eigen::Matrix2cd W;
    const Eigen::Matrix2cd lp = polar_log(g.f[0].a, &W);
    const double t = std::atan2(W(0, 1).real(), W(0, 0).real());
    const double s = std::atan2(g.f[1].a(0, 1).real(), g.f[1].a(0, 0).real());
    const int n = pair_.H.n;
    VectorXd c = VectorXd::Zero(4);
    c[0] = lp(0, 0).real();
    c[1] = lp(0, 1).real();
    c[3] = wrap(s - n * t);
    VectorXd eta(1);
    eta[0] = t;
    starts.push_back({coordinates_in(pair_.m, c), exp_h(eta)});
  } else if (id == "C2") {
    Decomposition d;
    if (triangular_pipeline(g, &d)) starts.push_back({d.lambda, d.h});
  }
  starts.push_back({VectorXd::Zero(dim_m()), identity(g.group)});
  return starts;
}

bool SectionModel::newton(const Residual& f, Start& s, double& residual, int& iterations) const {
  const int dm = dim_m(), dh = dim_h();
  auto [L, R] = f(s.lambda, s.h);
  std::vector<int> signs = choose_signs(L, R);
  VectorXd F = diff_vector(L, R, signs);
  residual = group_distance(L, R);
  double mu = 1e-6;
  iterations = 0;
  for (; iterations < cfg_.max_iter && residual > cfg_.tol; ++iterations) {
    if (!std::isfinite(residual)) return false;
    MatrixXd J(F.size(), dm + dh);
    const double e = cfg_.fd_step;
    for (int i = 0; i < dm; ++i) {
      VectorXd p = s.lambda, m = s.lambda;
      p[i] += e;
      m[i] -= e;
      auto [Lp, Rp] = f(p, s.h);
      auto [Lm, Rm] = f(m, s.h);
      J.col(i) = (diff_vector(Lp, Rp, signs) - diff_vector(Lm, Rm, signs)) / (2 * e);
    }
    for (int j = 0; j < dh; ++j) {
      VectorXd d = VectorXd::Zero(dh);
      d[j] = e;
      auto [Lp, Rp] = f(s.lambda, loopforge::multiply(s.h, exp_h(d)));
      auto [Lm, Rm] = f(s.lambda, loopforge::multiply(s.h, exp_h(-d)));
      J.col(dm + j) = (diff_vector(Lp, Rp, signs) - diff_vector(Lm, Rm, signs)) / (2 * e);
    }
    const MatrixXd JtJ = J.transpose() * J;
    const VectorXd grad = J.transpose() * F;
    bool improved = false;
    for (int tries = 0; tries < 14; ++tries) {
      MatrixXd A = JtJ;
      A.diagonal().array() += mu * (JtJ.diagonal().array() + 1e-12);
      const VectorXd delta = -A.ldlt().solve(grad);
      Start t;
      std::pair<GroupElement, GroupElement> trial;
      try {
        t = {s.lambda + delta.head(dm), loopforge::multiply(s.h, exp_h(delta.tail(dh)))};
        trial = f(t.lambda, t.h);
      } catch (const RangeError&) {
        // Step left the range of the exponential; damp harder.
        mu *= 10;
        continue;
      }
      auto& [L2, R2] = trial;
      const std::vector<int> sg2 = choose_signs(L2, R2);
      const VectorXd F2 = diff_vector(L2, R2, sg2);
      if (F2.allFinite() && F2.norm() < F.norm()) {
        s = std::move(t);
        F = F2;
        signs = sg2;
        residual = group_distance(L2, R2);
        mu = std::max(mu / 10, 1e-12);
        improved = true;
        break;
      }
      mu *= 10;
    }
    if (!improved) break;
  }
  return residual <= cfg_.accept;
}

Decomposition SectionModel::finish(const GroupElement& g, const Start& s, int start, int iterations) const {
  Decomposition d;
  d.lambda = s.lambda;
  d.x = m_vector(s.lambda);
  d.m = exp_m(s.lambda);
  d.h = s.h;
  d.residual = group_distance(loopforge::multiply(d.m, d.h), g);
  d.start = start;
  d.iterations = iterations;
  return d;
}

Decomposition SectionModel::decompose(const GroupElement& g) const {
  Residual f = [&](const VectorXd& lam, const GroupElement& h) { return std::make_pair(loopforge::multiply(exp_m(lam), h), g); };
  std::vector<Start> starts = initial_guesses(g);
  Rng rng(cfg_.seed);
  const Start base = starts.front();
  for (int k = 0; k < cfg_.multistarts; ++k) {
    const double spread = 0.5 * (k + 1);
    VectorXd dl(dim_m()), dh(dim_h());
    for (int i = 0; i < dim_m(); ++i) dl[i] = rng.uniform(-spread, spread);
    for (int i = 0; i < dim_h(); ++i) dh[i] = rng.uniform(-spread, spread);
    starts.push_back({base.lambda + dl, loopforge::multiply(base.h, exp_h(dh))});
  }
  std::optional<Decomposition> best;
  for (size_t k = 0; k < starts.size(); ++k) {
    Start s = starts[k];
    double r = 0;
    int it = 0;
    try {
      newton(f, s, r, it);
    } catch (const RangeError&) {
      continue;
    }
    if (!std::isfinite(r)) continue;
    Decomposition d = finish(g, s, static_cast<int>(k), it);
    if (!best || d.residual < best->residual) best = d;
    if (d.residual <= cfg_.tol) break;
  }
  if (!best || best->residual > cfg_.accept)
    throw NoConvergence(pair_.entry + ": no decomposition g = exp(X) h found from any start");
  return *best;
}

std::vector<Decomposition> SectionModel::decompose_perturbed(const GroupElement& g, int count, double spread) const {
  Residual f = [&](const VectorXd& lam, const GroupElement& h) { return std::make_pair(loopforge::multiply(exp_m(lam), h), g); };
  std::vector<Decomposition> out;
  const Decomposition d0 = decompose(g);
  out.push_back(d0);
  Rng rng(cfg_.seed ^ 0x5bd1e995ULL);
  for (int k = 0; k < count; ++k) {
    VectorXd dl(dim_m()), dh(dim_h());
    for (int i = 0; i < dim_m(); ++i) dl[i] = rng.uniform(-spread, spread);
    for (int i = 0; i < dim_h(); ++i) dh[i] = rng.uniform(-spread, spread);
    Start s{d0.lambda + dl, loopforge::multiply(d0.h, exp_h(dh))};
    double r = 0;
    int it = 0;
    try {
      if (newton(f, s, r, it)) out.push_back(finish(g, s, k + 1, it));
    } catch (const RangeError&) {
    }
  }
  return out;
}

SectionPoint SectionModel::multiply(const SectionPoint& x, const SectionPoint& y) const {
  const Decomposition d = decompose(loopforge::multiply(x.g, y.g));
  return {d.lambda, d.m};
}

SectionPoint SectionModel::left_divide(const SectionPoint& a, const SectionPoint& b) const {
  const Decomposition d = decompose(loopforge::multiply(inverse(a.g), b.g));
  return {d.lambda, d.m};
}

SectionPoint SectionModel::right_divide(const SectionPoint& a, const SectionPoint& b) const {
  // x * a = b  <=>  exp(X) a = b h for some h in H.
  const GroupElement ag = a.g, bg = b.g;
  Residual f = [&](const VectorXd& lam, const GroupElement& h) {
    return std::make_pair(loopforge::multiply(exp_m(lam), ag), loopforge::multiply(bg, h));
  };
  std::vector<Start> starts;
  const GroupElement id = identity(ag.group);
  try {
    const Decomposition d = decompose(loopforge::multiply(bg, inverse(ag)));
    starts.push_back({d.lambda, id});
  } catch (const NoConvergence&) {
  }
  starts.push_back({b.lambda - a.lambda, id});
  starts.push_back({VectorXd::Zero(dim_m()), id});
  Rng rng(cfg_.seed ^ 0x2545f4914f6cdd1dULL);
  const Start base = starts.front();
  for (int k = 0; k < cfg_.multistarts; ++k) {
    const double spread = 0.5 * (k + 1);
    VectorXd dl(dim_m()), dh(dim_h());
    for (int i = 0; i < dim_m(); ++i) dl[i] = rng.uniform(-spread, spread);
    for (int i = 0; i < dim_h(); ++i) dh[i] = rng.uniform(-spread, spread);
    starts.push_back({base.lambda + dl, exp_h(dh)});
  }
  double best_r = INFINITY;
  std::optional<Start> best;
  for (auto s : starts) {
    double r = 0;
    int it = 0;
    newton(f, s, r, it);
    if (std::isfinite(r) && r < best_r) {
      best_r = r;
      best = s;
    }
    if (r <= cfg_.tol) break;
  }
  if (!best || best_r > cfg_.accept) throw NoConvergence(pair_.entry + ": right division did not converge");
  return point(best->lambda);
}

Decomposition decompose(const SectionModel& model, const GroupElement& g) { return model.decompose(g); }

SectionPoint loop_multiply(const SectionModel& model, const SectionPoint& x, const SectionPoint& y) {
  return model.multiply(x, y);
}

SectionPoint left_divide(const SectionModel& model, const SectionPoint& a, const SectionPoint& b) {
  return model.left_divide(a, b);
}

SectionPoint right_divide(const SectionModel& model, const SectionPoint& a, const SectionPoint& b) {
  return model.right_divide(a, b);
}

}  // namespace loopforge
