#pragma once

#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "loopforge/catalog.hpp"
#include "loopforge/groups.hpp"
#include "loopforge/lie_algebra.hpp"

namespace loopforge {

using json = nlohmann::ordered_json;

// Matrices are written row-major as [re, im] pairs: {"rows", "cols", "data"}.
json matrix_json(const Eigen::MatrixXcd& m);
json vector_json(const Eigen::VectorXd& v);
json element_json(const GroupElement& g);
json algebra_vector_json(const AlgebraVector& x);
json params_json(const Params& p);
std::string factor_kind_name(FactorKind k);

// Non-finite numbers become null in JSON; residuals use this.
json number_json(double x);

}  // namespace loopforge
