#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loopforge/lie_algebra.hpp"

namespace loopforge {

// One factor of a (direct product) group.
//   sl2r, sl2c, su2 : 2x2 matrices
//   semi_sl2r       : pairs (A, X), A in SL2(R), X real traceless
//   semi_su2        : pairs (A, X), A in SU2, X traceless Hermitian
//   mat3            : 3x3 real matrices
//   line            : (R, +), payload is a 1x1 matrix
//   circle          : SO2 as 2x2 rotations
enum class FactorKind { sl2r, sl2c, su2, semi_sl2r, semi_su2, mat3, line, circle };

struct FactorSpec {
  FactorKind kind;
  bool mod_sign = false;  // PSL/PSU quotient by -I on the matrix part
};

struct GroupSpec {
  std::string tag;
  std::vector<FactorSpec> factors;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;

struct Factor {
  Eigen::MatrixXcd a;
  Eigen::Matrix2cd x = Eigen::Matrix2cd::Zero();
};

struct GroupElement {
  GroupPtr group;
  std::vector<Factor> f;
};

// Algebra image of a basis element inside one factor.
struct FactorAlg {
  Eigen::MatrixXcd y;
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
};

// Fixed 2x2 matrices used everywhere.
namespace mat {
Eigen::Matrix2cd I2();
Eigen::Matrix2cd K();
Eigen::Matrix2cd T();
Eigen::Matrix2cd U();
Eigen::Matrix2cd rot(double t);  // [[cos t, sin t], [-sin t, cos t]] = exp(tU)
}  // namespace mat

// Coordinates of a translation part in the module basis of a semidirect factor:
// (K, T, U) for semi_sl2r and (K, T, iU) for semi_su2.
Eigen::Vector3d module_coords(FactorKind kind, const Eigen::Matrix2cd& x);
Eigen::Matrix2cd module_matrix(FactorKind kind, const Eigen::Vector3d& v);

// A concrete realization of a Lie algebra inside a group: images[i][f] is the
// component of basis vector i in factor f.
class GroupModel {
public:
  GroupModel(AlgebraPtr alg, GroupPtr group, std::vector<std::vector<FactorAlg>> images);

  const AlgebraPtr& algebra() const { return alg_; }
  const GroupPtr& group() const { return group_; }
  std::vector<FactorAlg> components(const Eigen::VectorXd& x) const;
  Eigen::MatrixXcd algebra_matrix(const Eigen::VectorXd& x) const;
  // Least-squares coordinates of a faithful algebra matrix; residual returned through res.
  Eigen::VectorXd fit(const Eigen::MatrixXcd& m, double* res) const;

private:
  AlgebraPtr alg_;
  GroupPtr group_;
  std::vector<std::vector<FactorAlg>> images_;
  Eigen::MatrixXd basis_;  // realified faithful images as columns
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

GroupElement identity(const GroupPtr& group);
GroupElement multiply(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);
// PSL factors are brought to a canonical sign.
GroupElement normalize(const GroupElement& g);

// Faithful block-diagonal matrix (semidirect factors use a 4x4 affine block).
Eigen::MatrixXcd faithful_matrix(const GroupElement& g);

// Ad_g(x) = g^-1 x g, computed in the faithful representation.
AlgebraVector adjoint(const GroupModel& model, const GroupElement& g, const AlgebraVector& x);

// Largest entrywise deviation, minimized over the center signs of PSL factors.
double group_distance(const GroupElement& g1, const GroupElement& g2);
bool equal_mod_center(const GroupElement& g1, const GroupElement& g2, double tol = 1e-10);
// Distance from the identity element.
double identity_distance(const GroupElement& g);

enum class SubgroupKind {
  unitary,        // SO3 = PSU2 inside PSL2(C), or SU2 x {0} inside a euclidean semidirect group
  diagonal_pair,  // {(x, x)} in PSL2(R) x PSL2(R)
  winding,        // H_n = {(x, x^n)}, x a rotation
  dim4_split,     // {(exp tK, t)} in PSL2(R) x R
  dim4_unipotent, // {(I + t(U+T), 2t)} in PSL2(R) x R
  dim5_stab,      // 3x3 [[1, x, 0], [0, e^t, 0], [0, 0, e^-t]]
  dim6i_stab,     // (diag, X) with X in span(T, U)
  linear_only,    // (A, 0)
  c2_stab,        // (rot, [[-x, y], [y, x]])
  aff_stab,       // 3x3 [[1, x, 0], [0, p, 0], [0, 0, q]], p, q > 0
  rotation        // SO2 inside PSL2(R)
};

struct SubgroupSpec {
  GroupPtr group;
  SubgroupKind kind;
  int n = 1;
};

bool in_subgroup(const SubgroupSpec& h, const GroupElement& g, double tol = 1e-9);

}  // namespace loopforge
