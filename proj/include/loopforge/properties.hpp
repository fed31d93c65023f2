#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/catalog.hpp"
#include "loopforge/report.hpp"
#include "loopforge/sections.hpp"

namespace loopforge {

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v);

struct PropertyReport {
  std::string property;
  std::string entry;
  Params params;
  int samples = 0;
  int inconclusive = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  double radius = 0.0;
  Verdict verdict = Verdict::pass;
  std::vector<json> witnesses;

  json to_json() const;
};

struct CheckConfig {
  int samples = 200;
  double tol = 1e-6;
  double radius = 1.0;  // coefficient radius of sampled m-vectors
  std::uint64_t seed = 1;
};

// Two distinct section elements exp(x1), exp(x2) (m-coordinates) with exp(x1) p H = exp(x2) p H.
// Either the section is not a transversal (p = e) or a left translation has a fixed point.
struct TransversalWitness {
  std::string source;
  Eigen::VectorXd x1;
  Eigen::VectorXd x2;
  GroupElement p;
};

// Identity laws, division round trips, sampled sharp transitivity and the supplied witnesses.
PropertyReport check_loop_axioms(const SectionModel& model, const CheckConfig& cfg,
                                 const std::vector<TransversalWitness>& witnesses = {});
// Algebra layer (bracket condition) and loop layer (lambda_{x,y} automorphic), plus lambda_{e,y} = id.
PropertyReport check_left_A(const SectionModel& model, const CheckConfig& cfg);
PropertyReport check_bol(const SectionModel& model, const CheckConfig& cfg);
PropertyReport check_strong_left_alternative(const SectionModel& model, const CheckConfig& cfg);
PropertyReport check_bruck_tangent(const ReductivePair& pair);
PropertyReport check_killing_orthogonal(const ReductivePair& pair);
// Orthogonality of two arbitrary subspaces (for instance h against itself).
PropertyReport check_killing_orthogonal(const Subspace& a, const Subspace& b, const std::string& label);

// Components of [x, y] and [[x, y]_h, z] in the direct sum g = m + h.
struct SplitVector {
  AlgebraVector m;
  AlgebraVector h;
};
SplitVector split(const ReductivePair& pair, const AlgebraVector& v);
std::pair<AlgebraVector, AlgebraVector> lie_triple_ops(const ReductivePair& pair, const AlgebraVector& x,
                                                       const AlgebraVector& y, const AlgebraVector& z);

}  // namespace loopforge
