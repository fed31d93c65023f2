#include "loopforge/report.hpp"

#include <cmath>

namespace loopforge {

json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string factor_kind_name(FactorKind k) {
  switch (k) {
    case FactorKind::sl2r: return "sl2r";
    case FactorKind::sl2c: return "sl2c";
    case FactorKind::su2: return "su2";
    case FactorKind::semi_sl2r: return "semi_sl2r";
    case FactorKind::semi_su2: return "semi_su2";
    case FactorKind::mat3: return "mat3";
    case FactorKind::line: return "line";
    case FactorKind::circle: return "circle";
  }
  return "unknown";
}

json element_json(const GroupElement& g) {
  json factors = json::array();
  for (std::size_t i = 0; i < g.f.size(); ++i) {
    const FactorSpec& spec = g.group->factors[i];
    json f = {{"kind", factor_kind_name(spec.kind)}, {"mod_sign", spec.mod_sign}, {"a", matrix_json(g.f[i].a)}};
    if (spec.kind == FactorKind::semi_sl2r || spec.kind == FactorKind::semi_su2) f["x"] = matrix_json(g.f[i].x);
    factors.push_back(f);
  }
  return {{"group", g.group->tag}, {"factors", factors}};
}

json algebra_vector_json(const AlgebraVector& x) {
  return {{"algebra", x.alg ? x.alg->name() : std::string()}, {"coords", vector_json(x.c)}};
}

json params_json(const Params& p) {
  json out = json::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

}  // namespace loopforge
