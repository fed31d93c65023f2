#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loopforge/groups.hpp"
#include "loopforge/lie_algebra.hpp"

namespace loopforge {

using Params = std::map<std::string, double>;

enum class Status { global_left_A, global_bruck, global_bol_scheerer, not_global, helper };

const char* status_name(Status s);

struct ExcludedValue {
  Params params;
  std::string flag;  // reductive flag that fails there
};

struct ReductivePair {
  std::string entry;
  Params params;
  ModelPtr model;
  Subspace h;
  Subspace m;
  SubgroupSpec H;
  AlgebraPtr alg() const { return model->algebra(); }
};

struct CatalogEntry {
  std::string id;
  std::string algebra;  // short description of g
  std::string anchor;   // what the entry encodes
  std::vector<std::string> param_names;
  Params defaults;
  std::string domain;  // human-readable constraint
  int dim_g = 0;
  int dim_h = 0;
  int dim_m = 0;
  std::vector<Params> samples;  // in-domain points used by the reductivity checks
  std::vector<ExcludedValue> excluded;
  std::function<std::optional<std::string>(const Params&)> violation;
  std::function<Status(const Params&)> status;
  std::function<ReductivePair(const Params&)> build;
};

const std::vector<CatalogEntry>& list_entries();
const CatalogEntry& find_entry(const std::string& id);  // DomainError if unknown

// Fills defaults, checks the domain and builds the pair. With strict = false, documented
// excluded values are accepted (the pair then fails its reductive flag).
ReductivePair instantiate(const CatalogEntry& entry, const Params& params, bool strict = true);
ReductivePair instantiate(const std::string& id, const Params& params, bool strict = true);

// Shared algebras and realizations.
ModelPtr sl2r_model();
ModelPtr sl2c_model();
ModelPtr su2_model();
ModelPtr alpha_model();  // sl2 x R^3 with the basis e1..e6
ModelPtr gamma_model();  // su2 x R^3 with X, Y, Z, V1, V2, V3
ModelPtr aff_model();
ModelPtr dim5_model();
// sl2 + R with the second factor realized as the line (R, +) or the circle SO2.
ModelPtr dim4_model(bool circle);
ModelPtr compact_model();
ModelPtr diag_model();

// Matrix realization of the alpha and gamma bases (unscaled); the stored tables equal
// 1/2 of their commutators.
std::vector<Eigen::MatrixXcd> alpha_matrices();
std::vector<Eigen::MatrixXcd> gamma_matrices();

enum class AutomorphismId { conj_phi, beta, euc_phi };

std::optional<AutomorphismId> parse_automorphism(const std::string& s);

// Matrix (columns = images of basis vectors) of the automorphism for the given parameters:
//   conj_phi: no parameters
//   beta: b1, b2 (b2 != 0), optional angle (c = r cos angle, d = r sin angle)
//   euc_phi: a (a != 0)
Eigen::MatrixXd automorphism_matrix(AutomorphismId id, const Params& params);
Subspace automorphism_image(AutomorphismId id, const Params& params, const ReductivePair& pair);
// The map exactly as displayed, without the sign and scaling repairs described in the notes.
Eigen::MatrixXd automorphism_matrix_displayed(AutomorphismId id, const Params& params);

}  // namespace loopforge
