#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "loopforge/catalog.hpp"
#include "loopforge/groups.hpp"
#include "loopforge/rng.hpp"

namespace loopforge {

class NoConvergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  double tol = 1e-10;     // Newton stopping tolerance on the residual
  double accept = 1e-8;   // largest residual returned as a solution
  int max_iter = 80;
  int multistarts = 8;
  double fd_step = 1e-6;  // central-difference step of the Jacobian
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

// A section point: its m-coordinates are authoritative, the element is exp of them.
struct SectionPoint {
  Eigen::VectorXd lambda;
  GroupElement g;
};

struct Decomposition {
  Eigen::VectorXd lambda;  // coordinates in the m basis
  AlgebraVector x;         // the same vector in the algebra basis
  GroupElement m;          // exp(x)
  GroupElement h;          // element of H
  double residual = 0.0;   // group distance between m h and the input
  int start = 0;           // index of the successful start
  int iterations = 0;
};

// Result of the explicit pipeline for the sl2 x R^3 complements.
struct TriangularSolution {
  double a = 0, b = 0, t = 0, u = 0;  // first component = [[a,0],[b,1/a]] rot(t), U-part u
  Eigen::Vector3d lambda = Eigen::Vector3d::Zero();
  double eq1 = 0, eq2 = 0;             // residuals of the two hyperbolic-plane equations
  double residual = 0;
};

class SectionModel {
public:
  explicit SectionModel(ReductivePair pair, SolverConfig cfg = {});

  const ReductivePair& pair() const { return pair_; }
  const SolverConfig& config() const { return cfg_; }
  const std::string& entry() const { return pair_.entry; }
  int dim_m() const { return pair_.m.size(); }
  int dim_h() const { return pair_.h.size(); }

  AlgebraVector m_vector(const Eigen::VectorXd& lambda) const;
  GroupElement exp_m(const Eigen::VectorXd& lambda) const;
  GroupElement exp_h(const Eigen::VectorXd& eta) const;
  SectionPoint point(const Eigen::VectorXd& lambda) const;
  SectionPoint identity_point() const;

  // g = exp(X) h with X in m and h in H. Throws NoConvergence.
  Decomposition decompose(const GroupElement& g) const;
  // Solutions from the canonical start followed by `count` perturbed starts (for uniqueness checks).
  std::vector<Decomposition> decompose_perturbed(const GroupElement& g, int count, double spread) const;

  SectionPoint multiply(const SectionPoint& x, const SectionPoint& y) const;
  SectionPoint left_divide(const SectionPoint& a, const SectionPoint& b) const;
  SectionPoint right_divide(const SectionPoint& a, const SectionPoint& b) const;

  // g = exp(Y1) exp(Y2), Y1 in m, Y2 in h, basis coefficients uniform in [-range, range].
  GroupElement sample_element(Rng& rng, double range = 1.5) const;
  Eigen::VectorXd sample_lambda(Rng& rng, double radius) const;

  // Explicit pipeline for the entry C2 (first component factored as lower-triangular times rotation).
  std::optional<TriangularSolution> triangular_pipeline(const GroupElement& g, Decomposition* out) const;

private:
  using Residual = std::function<std::pair<GroupElement, GroupElement>(const Eigen::VectorXd&, const GroupElement&)>;
  struct Start {
    Eigen::VectorXd lambda;
    GroupElement h;
  };

  std::vector<Start> initial_guesses(const GroupElement& g) const;
  bool newton(const Residual& f, Start& s, double& residual, int& iterations) const;
  Decomposition finish(const GroupElement& g, const Start& s, int start, int iterations) const;

  ReductivePair pair_;
  SolverConfig cfg_;
};

Decomposition decompose(const SectionModel& model, const GroupElement& g);
SectionPoint loop_multiply(const SectionModel& model, const SectionPoint& x, const SectionPoint& y);
SectionPoint left_divide(const SectionModel& model, const SectionPoint& a, const SectionPoint& b);
SectionPoint right_divide(const SectionModel& model, const SectionPoint& a, const SectionPoint& b);

// Signed residuals of the two hyperbolic-plane equations for z g1 = g2 h with
// g_i = [[a_i, 0], [b_i, 1/a_i]]: the first as displayed, the second in corrected form.
double hyperbolic_eq1(double a1, double b1, double a2, double b2, double l2, double l3);
double hyperbolic_eq2(double a1, double b1, double a2, double b2, double l2, double l3);
// The second equation exactly as displayed.
double hyperbolic_eq2_displayed(double a1, double b1, double a2, double b2, double l2, double l3);
// lambda_1 = -4 u sqrt(A) / (e^{2 sqrt A} - e^{-2 sqrt A}), A = l2^2 + l3^2 (limit -u at A = 0).
double lambda1_formula(double u, double l2, double l3);

// Hermitian polar factor: g = P W with P positive Hermitian, W unitary; returns log P.
Eigen::Matrix2cd polar_log(const Eigen::Matrix2cd& g, Eigen::Matrix2cd* unitary = nullptr);

}  // namespace loopforge
