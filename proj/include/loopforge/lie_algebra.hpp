#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace loopforge {

class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Tag used by the Killing form and the closed-form exponential.
enum class AlgebraKind { generic, sl2r, sl2c, su2 };

class LieAlgebra {
public:
  // structure[i * dim + j] holds the coefficients of [b_i, b_j].
  LieAlgebra(std::string name, std::vector<std::string> basis_names,
             std::vector<Eigen::VectorXd> structure, AlgebraKind kind = AlgebraKind::generic);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  AlgebraKind kind() const { return kind_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Eigen::VectorXd& structure(int i, int j) const { return c_[i * dim_ + j]; }

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  Eigen::VectorXd unit(int i) const;

  double antisymmetry_residual() const;
  double jacobi_residual() const;

private:
  std::string name_;
  int dim_;
  std::vector<std::string> names_;
  std::vector<Eigen::VectorXd> c_;
  AlgebraKind kind_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

struct AlgebraVector {
  AlgebraPtr alg;
  Eigen::VectorXd c;

  AlgebraVector() = default;
  AlgebraVector(AlgebraPtr a, Eigen::VectorXd coeffs);

  static AlgebraVector zero(const AlgebraPtr& a);
  static AlgebraVector basis(const AlgebraPtr& a, int i);

  AlgebraVector operator+(const AlgebraVector& o) const;
  AlgebraVector operator-(const AlgebraVector& o) const;
  AlgebraVector operator*(double s) const;
  double norm() const { return c.norm(); }
};

inline AlgebraVector operator*(double s, const AlgebraVector& v) { return v * s; }

struct Subspace {
  AlgebraPtr alg;
  Eigen::MatrixXd basis;  // columns

  Subspace() = default;
  Subspace(AlgebraPtr a, Eigen::MatrixXd cols);
  Subspace(AlgebraPtr a, const std::vector<Eigen::VectorXd>& vecs);

  int size() const { return static_cast<int>(basis.cols()); }
  AlgebraVector vec(int k) const { return {alg, basis.col(k)}; }
};

inline constexpr double kRankTol = 1e-10;

// Numerical rank relative to the largest singular value.
int numeric_rank(const Eigen::MatrixXd& m, double tol = kRankTol);
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m, double tol = kRankTol);
// Distance from v to span(cols), measured relative to max(1, |v|).
double span_residual(const Eigen::MatrixXd& cols, const Eigen::VectorXd& v);
bool in_span(const Subspace& s, const Eigen::VectorXd& v, double tol = kRankTol);
bool same_subspace(const Subspace& a, const Subspace& b, double tol = kRankTol);
// Coordinates of v in the (not necessarily orthonormal) basis of s, least squares.
Eigen::VectorXd coordinates_in(const Subspace& s, const Eigen::VectorXd& v);

AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y);

// Normalized Killing form 1/8 tr(ad x ad y) in closed form. For sl2(C) the
// complex form is returned; its real part is the real restriction.
std::complex<double> killing_normalized(const AlgebraVector& x, const AlgebraVector& y);
double killing_real(const AlgebraVector& x, const AlgebraVector& y);
// Reference definition from the trace of the adjoint maps (real algebras).
double killing_trace(const AlgebraVector& x, const AlgebraVector& y);

Subspace generated_subalgebra(const Subspace& s);

struct ReductiveReport {
  bool direct_sum = false;
  bool h_subalgebra = false;
  bool bracket_condition = false;
  bool generates = false;
  bool all() const { return direct_sum && h_subalgebra && bracket_condition && generates; }
};

ReductiveReport check_reductive_pair(const Subspace& h, const Subspace& m);

// Structure-constant JSON: {"dim": n, "names": [...], "brackets": [[i, j, [c...]], ...]}.
AlgebraPtr load_algebra_json(const std::string& text, const std::string& name = "custom");
AlgebraPtr load_algebra_file(const std::string& path);

// Builds the constant table from matrix images of the basis: [M_i, M_j] = scale * sum c_k M_k.
AlgebraPtr algebra_from_matrices(const std::string& name, const std::vector<std::string>& names,
                                 const std::vector<Eigen::MatrixXcd>& mats, double scale = 1.0,
                                 AlgebraKind kind = AlgebraKind::generic);

}  // namespace loopforge
