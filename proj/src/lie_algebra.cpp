#include "loopforge/lie_algebra.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace loopforge {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_names,
                       std::vector<Eigen::VectorXd> structure, AlgebraKind kind)
    : name_(std::move(name)),
      dim_(static_cast<int>(basis_names.size())),
      names_(std::move(basis_names)),
      c_(std::move(structure)),
      kind_(kind) {
  if (dim_ <= 0) throw DomainError("algebra must have positive dimension");
  if (static_cast<int>(c_.size()) != dim_ * dim_)
    throw DomainError("structure table size does not match dimension");
  for (const auto& v : c_)
    if (v.size() != dim_) throw DomainError("structure vector has wrong length");
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == 0.0 || i == j) continue;
      out += (x[i] * y[j]) * c_[i * dim_ + j];
    }
  }
  return out;
}

Eigen::MatrixXd LieAlgebra::ad(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) m.col(j) = bracket(x, unit(j));
  return m;
}

Eigen::VectorXd LieAlgebra::unit(int i) const { return Eigen::VectorXd::Unit(dim_, i); }

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      r = std::max(r, (c_[i * dim_ + j] + c_[j * dim_ + i]).cwiseAbs().maxCoeff());
  return r;
}

double LieAlgebra::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const auto x = unit(i), y = unit(j), z = unit(k);
        Eigen::VectorXd s = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) +
                            bracket(bracket(z, x), y);
        r = std::max(r, s.norm());
      }
  return r;
}

AlgebraVector::AlgebraVector(AlgebraPtr a, Eigen::VectorXd coeffs)
    : alg(std::move(a)), c(std::move(coeffs)) {
  if (!alg) throw DomainError("algebra vector without algebra");
  if (c.size() != alg->dim()) throw DomainError("coefficient length differs from algebra dimension");
}

AlgebraVector AlgebraVector::zero(const AlgebraPtr& a) {
  return {a, Eigen::VectorXd::Zero(a->dim())};
}

AlgebraVector AlgebraVector::basis(const AlgebraPtr& a, int i) { return {a, a->unit(i)}; }

static void same_alg(const AlgebraVector& a, const AlgebraVector& b) {
  if (a.alg != b.alg) throw DomainError("vectors belong to different algebras");
}

AlgebraVector AlgebraVector::operator+(const AlgebraVector& o) const {
  same_alg(*this, o);
  return {alg, c + o.c};
}

AlgebraVector AlgebraVector::operator-(const AlgebraVector& o) const {
  same_alg(*this, o);
  return {alg, c - o.c};
}

AlgebraVector AlgebraVector::operator*(double s) const { return {alg, c * s}; }

Subspace::Subspace(AlgebraPtr a, Eigen::MatrixXd cols) : alg(std::move(a)), basis(std::move(cols)) {
  if (basis.rows() != alg->dim()) throw DomainError("subspace basis has wrong length");
}

Subspace::Subspace(AlgebraPtr a, const std::vector<Eigen::VectorXd>& vecs) : alg(std::move(a)) {
  basis.resize(alg->dim(), static_cast<Eigen::Index>(vecs.size()));
  for (size_t k = 0; k < vecs.size(); ++k) {
    if (vecs[k].size() != alg->dim()) throw DomainError("subspace basis has wrong length");
    basis.col(static_cast<Eigen::Index>(k)) = vecs[k];
  }
}

int numeric_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * s[0]) ++r;
  return r;
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m, double tol) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s[0] > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > tol * s[0]) ++r;
  return svd.matrixU().leftCols(r);
}

double span_residual(const Eigen::MatrixXd& cols, const Eigen::VectorXd& v) {
  const double scale = std::max(1.0, v.norm());
  if (cols.cols() == 0) return v.norm() / scale;
  Eigen::MatrixXd q = orthonormal_basis(cols);
  Eigen::VectorXd r = v - q * (q.transpose() * v);
  return r.norm() / scale;
}

bool in_span(const Subspace& s, const Eigen::VectorXd& v, double tol) {
  return span_residual(s.basis, v) <= tol;
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  if (a.alg != b.alg) return false;
  const int ra = numeric_rank(a.basis), rb = numeric_rank(b.basis);
  if (ra != rb) return false;
  for (int k = 0; k < a.size(); ++k)
    if (!in_span(b, a.basis.col(k), tol)) return false;
  for (int k = 0; k < b.size(); ++k)
    if (!in_span(a, b.basis.col(k), tol)) return false;
  return true;
}

Eigen::VectorXd coordinates_in(const Subspace& s, const Eigen::VectorXd& v) {
  return s.basis.colPivHouseholderQr().solve(v);
}

AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) {
  same_alg(x, y);
  return {x.alg, x.alg->bracket(x.c, y.c)};
}

std::complex<double> killing_normalized(const AlgebraVector& x, const AlgebraVector& y) {
  same_alg(x, y);
  const auto& a = x.c;
  const auto& b = y.c;
  switch (x.alg->kind()) {
    case AlgebraKind::sl2r:
      return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
    case AlgebraKind::su2:
      return -(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
    case AlgebraKind::sl2c: {
      using C = std::complex<double>;
      const C z1(a[0], a[3]), z2(a[1], a[4]), z3(a[2], a[5]);
      const C w1(b[0], b[3]), w2(b[1], b[4]), w3(b[2], b[5]);
      return z1 * w1 + z2 * w2 - z3 * w3;
    }
    default:
      throw UnsupportedError("Killing form is only provided for sl2(R), sl2(C) and su2");
  }
}

double killing_real(const AlgebraVector& x, const AlgebraVector& y) {
  return killing_normalized(x, y).real();
}

double killing_trace(const AlgebraVector& x, const AlgebraVector& y) {
  same_alg(x, y);
  const double t = (x.alg->ad(x.c) * x.alg->ad(y.c)).trace();
  // The realified trace of a complex-linear map is twice the real part of its complex trace.
  return x.alg->kind() == AlgebraKind::sl2c ? t / 16.0 : t / 8.0;
}

Subspace generated_subalgebra(const Subspace& s) {
  const auto& alg = s.alg;
  Eigen::MatrixXd cur = orthonormal_basis(s.basis);
  int rank = static_cast<int>(cur.cols());
  for (int iter = 0; iter <= alg->dim(); ++iter) {
    std::vector<Eigen::VectorXd> cols;
    for (int i = 0; i < cur.cols(); ++i) cols.emplace_back(cur.col(i));
    for (int i = 0; i < cur.cols(); ++i)
      for (int j = i + 1; j < cur.cols(); ++j) cols.push_back(alg->bracket(cur.col(i), cur.col(j)));
    Eigen::MatrixXd all(alg->dim(), static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) all.col(static_cast<Eigen::Index>(k)) = cols[k];
    Eigen::MatrixXd next = orthonormal_basis(all);
    if (next.cols() == rank) return Subspace(alg, cur);
    cur = next;
    rank = static_cast<int>(cur.cols());
  }
  throw std::logic_error("generated_subalgebra: closure did not stabilize");
}

ReductiveReport check_reductive_pair(const Subspace& h, const Subspace& m) {
  if (h.alg != m.alg) throw DomainError("subspaces belong to different algebras");
  const auto& alg = h.alg;
  ReductiveReport rep;
  Eigen::MatrixXd both(alg->dim(), h.size() + m.size());
  both << h.basis, m.basis;
  rep.direct_sum = h.size() + m.size() == alg->dim() && numeric_rank(both) == alg->dim();

  rep.h_subalgebra = true;
  for (int i = 0; i < h.size(); ++i)
    for (int j = i + 1; j < h.size(); ++j)
      if (span_residual(h.basis, alg->bracket(h.basis.col(i), h.basis.col(j))) > kRankTol)
        rep.h_subalgebra = false;

  rep.bracket_condition = true;
  for (int i = 0; i < h.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (span_residual(m.basis, alg->bracket(h.basis.col(i), m.basis.col(j))) > kRankTol)
        rep.bracket_condition = false;

  rep.generates = generated_subalgebra(m).size() == alg->dim();
  return rep;
}

AlgebraPtr load_algebra_json(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid algebra JSON: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("names") || !j.contains("brackets"))
    throw DomainError("algebra JSON needs dim, names and brackets");
  const int n = j.at("dim").get<int>();
  auto names = j.at("names").get<std::vector<std::string>>();
  if (n <= 0 || static_cast<int>(names.size()) != n) throw DomainError("names do not match dim");
  std::vector<Eigen::VectorXd> c(static_cast<size_t>(n * n), Eigen::VectorXd::Zero(n));
  for (const auto& entry : j.at("brackets")) {
    const int i = entry.at(0).get<int>();
    const int k = entry.at(1).get<int>();
    auto coeffs = entry.at(2).get<std::vector<double>>();
    if (i < 0 || k < 0 || i >= n || k >= n || i >= k)
      throw DomainError("bracket entries must list pairs i < j inside the basis");
    if (static_cast<int>(coeffs.size()) != n) throw DomainError("bracket coefficient list has wrong length");
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(coeffs.data(), n);
    c[static_cast<size_t>(i * n + k)] = v;
    c[static_cast<size_t>(k * n + i)] = -v;
  }
  return std::make_shared<LieAlgebra>(name, std::move(names), std::move(c));
}

AlgebraPtr load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open algebra file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_algebra_json(ss.str(), path);
}

static Eigen::VectorXd realify(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v[k] = m(k / m.cols(), k % m.cols()).real();
    v[n + k] = m(k / m.cols(), k % m.cols()).imag();
  }
  return v;
}

AlgebraPtr algebra_from_matrices(const std::string& name, const std::vector<std::string>& names,
                                 const std::vector<Eigen::MatrixXcd>& mats, double scale,
                                 AlgebraKind kind) {
  const int n = static_cast<int>(mats.size());
  Eigen::MatrixXd basis(realify(mats[0]).size(), n);
  for (int i = 0; i < n; ++i) basis.col(i) = realify(mats[i]);
  auto qr = basis.colPivHouseholderQr();
  std::vector<Eigen::VectorXd> c(static_cast<size_t>(n * n), Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Eigen::VectorXd target = realify(mats[i] * mats[j] - mats[j] * mats[i]) * scale;
      Eigen::VectorXd co = qr.solve(target);
      if ((basis * co - target).norm() > 1e-9 * std::max(1.0, target.norm()))
        throw DomainError("matrices are not closed under the commutator: " + name);
      // Tables are small rationals; snap to multiples of 1/4 to keep brackets exact.
      for (int k = 0; k < n; ++k) co[k] = std::round(co[k] * 4.0) / 4.0;
      c[static_cast<size_t>(i * n + j)] = co;
    }
  return std::make_shared<LieAlgebra>(name, names, std::move(c), kind);
}

}  // namespace loopforge
