#include "loopforge/groups.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace loopforge {

using C = std::complex<double>;

namespace mat {
Eigen::Matrix2cd I2() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd K() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
Eigen::Matrix2cd T() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd U() {
  Eigen::Matrix2cd m;
  m << 0, 1, -1, 0;
  return m;
}
Eigen::Matrix2cd rot(double t) {
  Eigen::Matrix2cd m;
  m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  return m;
}
}  // namespace mat

static bool is_semi(FactorKind k) { return k == FactorKind::semi_sl2r || k == FactorKind::semi_su2; }

static std::array<Eigen::Matrix2cd, 3> module_basis(FactorKind kind) {
  if (kind == FactorKind::semi_su2) return {mat::K(), mat::T(), C(0, 1) * mat::U()};
  return {mat::K(), mat::T(), mat::U()};
}

Eigen::Vector3d module_coords(FactorKind kind, const Eigen::Matrix2cd& x) {
  if (kind == FactorKind::semi_su2)
    return {x(0, 0).real(), 0.5 * (x(0, 1) + x(1, 0)).real(), 0.5 * (x(0, 1) - x(1, 0)).imag()};
  return {x(0, 0).real(), 0.5 * (x(0, 1) + x(1, 0)).real(), 0.5 * (x(0, 1) - x(1, 0)).real()};
}

Eigen::Matrix2cd module_matrix(FactorKind kind, const Eigen::Vector3d& v) {
  auto b = module_basis(kind);
  return v[0] * b[0] + v[1] * b[1] + v[2] * b[2];
}

static Eigen::Matrix2cd inv2(const Eigen::Matrix2cd& a) {
  Eigen::Matrix2cd r;
  const C det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  r << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return r / det;
}

// Row-vector affine representation of (A, X) acting by v -> A^-1 v A + X.
static Eigen::MatrixXcd semi_block(FactorKind kind, const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& x) {
  auto b = module_basis(kind);
  const Eigen::Matrix2cd ai = inv2(a);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 3; ++i) m.block(i, 0, 1, 3) = module_coords(kind, ai * b[i] * a).transpose().cast<C>();
  m.block(3, 0, 1, 3) = module_coords(kind, x).transpose().cast<C>();
  m(3, 3) = 1.0;
  return m;
}

static Eigen::MatrixXcd semi_alg_block(FactorKind kind, const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z) {
  auto b = module_basis(kind);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 3; ++i)
    m.block(i, 0, 1, 3) = module_coords(kind, b[i] * y - y * b[i]).transpose().cast<C>();
  m.block(3, 0, 1, 3) = module_coords(kind, z).transpose().cast<C>();
  return m;
}

static Eigen::MatrixXcd factor_block(const FactorSpec& s, const Factor& f) {
  if (is_semi(s.kind)) return semi_block(s.kind, f.a, f.x);
  if (s.kind == FactorKind::line) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 1) = f.a(0, 0);
    return m;
  }
  return f.a;
}

static Eigen::MatrixXcd factor_alg_block(const FactorSpec& s, const FactorAlg& f) {
  if (is_semi(s.kind)) return semi_alg_block(s.kind, f.y, f.z);
  if (s.kind == FactorKind::line) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = f.y(0, 0);
    return m;
  }
  return f.y;
}

static Eigen::MatrixXcd block_diag(const std::vector<Eigen::MatrixXcd>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index o = 0;
  for (const auto& b : blocks) {
    m.block(o, o, b.rows(), b.cols()) = b;
    o += b.rows();
  }
  return m;
}

static Eigen::VectorXd realify(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      v[r * m.cols() + c] = m(r, c).real();
      v[n + r * m.cols() + c] = m(r, c).imag();
    }
  return v;
}

GroupModel::GroupModel(AlgebraPtr alg, GroupPtr group, std::vector<std::vector<FactorAlg>> images)
    : alg_(std::move(alg)), group_(std::move(group)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != alg_->dim())
    throw DomainError("realization must give one image per basis vector");
  for (const auto& im : images_)
    if (im.size() != group_->factors.size()) throw DomainError("realization factor count mismatch");
  const int n = alg_->dim();
  Eigen::VectorXd first = realify(algebra_matrix(alg_->unit(0)));
  basis_.resize(first.size(), n);
  for (int i = 0; i < n; ++i) basis_.col(i) = realify(algebra_matrix(alg_->unit(i)));
  qr_.compute(basis_);
  if (qr_.rank() != n) throw DomainError("realization is not faithful on the algebra");
}

std::vector<FactorAlg> GroupModel::components(const Eigen::VectorXd& x) const {
  const size_t nf = group_->factors.size();
  std::vector<FactorAlg> out(nf);
  for (size_t f = 0; f < nf; ++f) {
    out[f].y = Eigen::MatrixXcd::Zero(images_[0][f].y.rows(), images_[0][f].y.cols());
    out[f].z.setZero();
  }
  for (int i = 0; i < alg_->dim(); ++i) {
    if (x[i] == 0.0) continue;
    for (size_t f = 0; f < nf; ++f) {
      out[f].y += x[i] * images_[i][f].y;
      out[f].z += x[i] * images_[i][f].z;
    }
  }
  return out;
}

Eigen::MatrixXcd GroupModel::algebra_matrix(const Eigen::VectorXd& x) const {
  auto comps = components(x);
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t f = 0; f < comps.size(); ++f) blocks.push_back(factor_alg_block(group_->factors[f], comps[f]));
  return block_diag(blocks);
}

Eigen::VectorXd GroupModel::fit(const Eigen::MatrixXcd& m, double* res) const {
  Eigen::VectorXd target = realify(m);
  Eigen::VectorXd co = qr_.solve(target);
  if (res) *res = (basis_ * co - target).norm() / std::max(1.0, target.norm());
  return co;
}

GroupElement identity(const GroupPtr& group) {
  GroupElement g{group, {}};
  for (const auto& s : group->factors) {
    Factor f;
    if (s.kind == FactorKind::line)
      f.a = Eigen::MatrixXcd::Zero(1, 1);
    else
      f.a = Eigen::MatrixXcd::Identity(s.kind == FactorKind::mat3 ? 3 : 2, s.kind == FactorKind::mat3 ? 3 : 2);
    g.f.push_back(f);
  }
  return g;
}

static void same_group(const GroupElement& a, const GroupElement& b) {
  if (a.group != b.group && (a.group->tag != b.group->tag))
    throw DomainError("group elements belong to different groups");
}

GroupElement multiply(const GroupElement& g1, const GroupElement& g2) {
  same_group(g1, g2);
  GroupElement out{g1.group, std::vector<Factor>(g1.f.size())};
  for (size_t k = 0; k < g1.f.size(); ++k) {
    const auto kind = g1.group->factors[k].kind;
    const auto& a = g1.f[k];
    const auto& b = g2.f[k];
    if (kind == FactorKind::line) {
      out.f[k].a = a.a + b.a;
    } else if (is_semi(kind)) {
      const Eigen::Matrix2cd A1 = a.a, A2 = b.a;
      out.f[k].a = A1 * A2;
      out.f[k].x = inv2(A2) * a.x * A2 + b.x;
    } else {
      out.f[k].a = a.a * b.a;
    }
  }
  return out;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out{g.group, std::vector<Factor>(g.f.size())};
  for (size_t k = 0; k < g.f.size(); ++k) {
    const auto kind = g.group->factors[k].kind;
    const auto& a = g.f[k];
    if (kind == FactorKind::line) {
      out.f[k].a = -a.a;
    } else if (is_semi(kind)) {
      const Eigen::Matrix2cd A = a.a;
      out.f[k].a = inv2(A);
      out.f[k].x = -A * a.x * inv2(A);
    } else if (a.a.rows() == 2) {
      out.f[k].a = inv2(a.a);
    } else {
      out.f[k].a = a.a.inverse();
    }
  }
  return out;
}

GroupElement normalize(const GroupElement& g) {
  GroupElement out = g;
  for (size_t k = 0; k < g.f.size(); ++k) {
    if (!g.group->factors[k].mod_sign) continue;
    auto& a = out.f[k].a;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const C v = a(i / a.cols(), i % a.cols());
      if (std::abs(v) <= 1e-8) continue;
      const bool flip = std::abs(v.real()) > 1e-8 ? v.real() < 0 : v.imag() < 0;
      if (flip) a = -a;
      break;
    }
  }
  return out;
}

Eigen::MatrixXcd faithful_matrix(const GroupElement& g) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t k = 0; k < g.f.size(); ++k) blocks.push_back(factor_block(g.group->factors[k], g.f[k]));
  return block_diag(blocks);
}

AlgebraVector adjoint(const GroupModel& model, const GroupElement& g, const AlgebraVector& x) {
  if (x.alg != model.algebra()) throw DomainError("vector does not belong to the model algebra");
  const Eigen::MatrixXcd G = faithful_matrix(g);
  const Eigen::MatrixXcd conj = G.inverse() * model.algebra_matrix(x.c) * G;
  double res = 0.0;
  Eigen::VectorXd co = model.fit(conj, &res);
  if (res > 1e-10 * std::max(1.0, x.c.norm()))
    throw DomainError("adjoint image is not in the realized algebra (representation mismatch)");
  return {x.alg, co};
}

static double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double group_distance(const GroupElement& g1, const GroupElement& g2) {
  same_group(g1, g2);
  double d = 0.0;
  for (size_t k = 0; k < g1.f.size(); ++k) {
    const auto& s = g1.group->factors[k];
    const double dx = max_abs(g1.f[k].x - g2.f[k].x);
    double da = max_abs(g1.f[k].a - g2.f[k].a);
    if (s.mod_sign) da = std::min(da, max_abs(g1.f[k].a + g2.f[k].a));
    d = std::max(d, std::max(da, dx));
  }
  return d;
}

bool equal_mod_center(const GroupElement& g1, const GroupElement& g2, double tol) {
  return group_distance(g1, g2) <= tol;
}

double identity_distance(const GroupElement& g) { return group_distance(g, identity(g.group)); }

static double wrap_angle(double t) {
  const double two_pi = 2.0 * std::numbers::pi;
  t = std::fmod(t, two_pi);
  if (t > std::numbers::pi) t -= two_pi;
  if (t < -std::numbers::pi) t += two_pi;
  return t;
}

static bool real_rotation(const Eigen::MatrixXcd& a, double tol) {
  if (a.rows() != 2) return false;
  if (a.imag().cwiseAbs().maxCoeff() > tol) return false;
  const Eigen::Matrix2d r = a.real();
  return (r * r.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

// Sign representative with positive (0,0) entry, or the matrix itself if not a quotient.
static Eigen::MatrixXcd positive_rep(const Eigen::MatrixXcd& a, bool mod_sign) {
  if (mod_sign && a(0, 0).real() < 0) return -a;
  return a;
}

bool in_subgroup(const SubgroupSpec& h, const GroupElement& g, double tol) {
  if (h.group->tag != g.group->tag) throw DomainError("subgroup and element belong to different groups");
  const auto& fs = g.group->factors;
  const auto& f0 = g.f[0];
  switch (h.kind) {
    case SubgroupKind::unitary: {
      const Eigen::MatrixXcd& a = f0.a;
      if ((a * a.adjoint() - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() > tol) return false;
      if (is_semi(fs[0].kind)) return max_abs(f0.x) <= tol;
      return true;
    }
    case SubgroupKind::diagonal_pair: {
      const double d = max_abs(f0.a - g.f[1].a);
      const double e = fs[0].mod_sign ? max_abs(f0.a + g.f[1].a) : d;
      return std::min(d, e) <= tol;
    }
    case SubgroupKind::winding: {
      if (!real_rotation(f0.a, tol) || !real_rotation(g.f[1].a, tol)) return false;
      const double t = std::atan2(f0.a(0, 1).real(), f0.a(0, 0).real());
      const double s = std::atan2(g.f[1].a(0, 1).real(), g.f[1].a(0, 0).real());
      return std::abs(wrap_angle(s - h.n * t)) <= tol;
    }
    case SubgroupKind::dim4_split: {
      const Eigen::MatrixXcd a = positive_rep(f0.a, fs[0].mod_sign);
      if (std::abs(a(0, 1)) > tol || std::abs(a(1, 0)) > tol || max_abs(a.imag()) > tol) return false;
      if (a(0, 0).real() <= 0) return false;
      const double t = std::log(a(0, 0).real());
      return std::abs(a(1, 1).real() - std::exp(-t)) <= tol && std::abs(g.f[1].a(0, 0).real() - t) <= tol;
    }
    case SubgroupKind::dim4_unipotent: {
      const Eigen::MatrixXcd a = positive_rep(f0.a, fs[0].mod_sign);
      if (max_abs(a.imag()) > tol) return false;
      return std::abs(a(0, 0).real() - 1) <= tol && std::abs(a(1, 1).real() - 1) <= tol &&
             std::abs(a(1, 0)) <= tol && std::abs(g.f[1].a(0, 0).real() - a(0, 1).real()) <= tol;
    }
    case SubgroupKind::dim5_stab: {
      const Eigen::MatrixXcd& m = f0.a;
      if (max_abs(m.imag()) > tol) return false;
      return std::abs(m(0, 0).real() - 1) <= tol && std::abs(m(0, 2)) <= tol && std::abs(m(1, 0)) <= tol &&
             std::abs(m(2, 0)) <= tol && std::abs(m(1, 2)) <= tol && std::abs(m(2, 1)) <= tol &&
             m(1, 1).real() > 0 && std::abs(m(1, 1).real() * m(2, 2).real() - 1) <= tol;
    }
    case SubgroupKind::dim6i_stab: {
      const Eigen::MatrixXcd& a = f0.a;
      if (std::abs(a(0, 1)) > tol || std::abs(a(1, 0)) > tol || max_abs(a.imag()) > tol) return false;
      return std::abs(module_coords(fs[0].kind, f0.x)[0]) <= tol && max_abs(f0.x.imag()) <= tol;
    }
    case SubgroupKind::linear_only:
      return max_abs(f0.x) <= tol;
    case SubgroupKind::c2_stab: {
      if (!real_rotation(f0.a, tol) && !real_rotation(-f0.a, tol)) return false;
      return std::abs(module_coords(fs[0].kind, f0.x)[2]) <= tol && max_abs(f0.x.imag()) <= tol;
    }
    case SubgroupKind::aff_stab: {
      const Eigen::MatrixXcd& m = f0.a;
      if (max_abs(m.imag()) > tol) return false;
      return std::abs(m(0, 0).real() - 1) <= tol && std::abs(m(0, 2)) <= tol && std::abs(m(1, 0)) <= tol &&
             std::abs(m(2, 0)) <= tol && std::abs(m(1, 2)) <= tol && std::abs(m(2, 1)) <= tol &&
             m(1, 1).real() > 0 && m(2, 2).real() > 0;
    }
    case SubgroupKind::rotation:
      return real_rotation(f0.a, tol) || (fs[0].mod_sign && real_rotation(-f0.a, tol));
  }
  return false;
}

}  // namespace loopforge
