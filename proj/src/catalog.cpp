#include "loopforge/catalog.hpp"

#include <cmath>
#include <sstream>

namespace loopforge {

using C = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

const char* status_name(Status s) {
  switch (s) {
    case Status::global_left_A:
      return "global_left_A";
    case Status::global_bruck:
      return "global_bruck";
    case Status::global_bol_scheerer:
      return "global_bol_scheerer";
    case Status::not_global:
      return "not_global";
    default:
      return "helper";
  }
}

namespace {

const C I1(0, 1);

MatrixXcd m2(const Eigen::Matrix2cd& m) { return m; }

MatrixXcd e3(int r, int c) {
  MatrixXcd m = MatrixXcd::Zero(3, 3);
  m(r, c) = 1;
  return m;
}

MatrixXcd blocks(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd m = MatrixXcd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

FactorAlg fa(const MatrixXcd& y, const Eigen::Matrix2cd& z = Eigen::Matrix2cd::Zero()) { return {y, z}; }

FactorAlg zero2() { return fa(MatrixXcd::Zero(2, 2)); }

// Table given as (i, j, k, coefficient) with 1-based indices meaning [b_i, b_j] += coef * b_k.
AlgebraPtr table_algebra(const std::string& name, const std::vector<std::string>& names,
                         const std::vector<std::tuple<int, int, int, double>>& rows) {
  const int n = static_cast<int>(names.size());
  std::vector<VectorXd> c(static_cast<size_t>(n * n), VectorXd::Zero(n));
  for (const auto& [i, j, k, coef] : rows) {
    c[static_cast<size_t>((i - 1) * n + (j - 1))][k - 1] += coef;
    c[static_cast<size_t>((j - 1) * n + (i - 1))][k - 1] -= coef;
  }
  return std::make_shared<LieAlgebra>(name, names, std::move(c));
}

GroupPtr group(const std::string& tag, std::vector<FactorSpec> fs) {
  return std::make_shared<GroupSpec>(GroupSpec{tag, std::move(fs)});
}

VectorXd vec(int dim, std::initializer_list<std::pair<int, double>> entries) {
  VectorXd v = VectorXd::Zero(dim);
  for (const auto& [i, c] : entries) v[i] += c;
  return v;
}

double param(const Params& p, const std::string& k) {
  auto it = p.find(k);
  if (it == p.end()) throw DomainError("missing parameter " + k);
  return it->second;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

std::optional<std::string> check_winding(double x, double n, const std::string& name) {
  if (n < 1 || std::abs(n - std::round(n)) > 1e-12) return "n must be a positive integer";
  if (std::abs(1 + x - n * x) <= 1e-9) return "1+" + name + " = n*" + name + " makes h lie in m";
  return std::nullopt;
}

}  // namespace

ModelPtr sl2r_model() {
  static const ModelPtr m = [] {
    auto alg = algebra_from_matrices("sl2(R)", {"K", "T", "U"}, {m2(mat::K()), m2(mat::T()), m2(mat::U())}, 1.0,
                                     AlgebraKind::sl2r);
    auto g = group("PSL2(R)", {{FactorKind::sl2r, true}});
    return std::make_shared<GroupModel>(alg, g,
                                        std::vector<std::vector<FactorAlg>>{{fa(mat::K())}, {fa(mat::T())}, {fa(mat::U())}});
  }();
  return m;
}

ModelPtr sl2c_model() {
  static const ModelPtr m = [] {
    std::vector<MatrixXcd> ms = {mat::K(), mat::T(), mat::U(), I1 * mat::K(), I1 * mat::T(), I1 * mat::U()};
    auto alg = algebra_from_matrices("sl2(C)", {"K", "T", "U", "iK", "iT", "iU"}, ms, 1.0, AlgebraKind::sl2c);
    auto g = group("PSL2(C)", {{FactorKind::sl2c, true}});
    std::vector<std::vector<FactorAlg>> im;
    for (const auto& x : ms) im.push_back({fa(x)});
    return std::make_shared<GroupModel>(alg, g, im);
  }();
  return m;
}

ModelPtr su2_model() {
  static const ModelPtr m = [] {
    std::vector<MatrixXcd> ms = {I1 * mat::K(), mat::U(), I1 * mat::T()};
    auto alg = algebra_from_matrices("su2", {"iK", "U", "iT"}, ms, 1.0, AlgebraKind::su2);
    auto g = group("PSU2", {{FactorKind::su2, true}});
    std::vector<std::vector<FactorAlg>> im;
    for (const auto& x : ms) im.push_back({fa(x)});
    return std::make_shared<GroupModel>(alg, g, im);
  }();
  return m;
}

ModelPtr diag_model() {
  static const ModelPtr m = [] {
    std::vector<MatrixXcd> sl = {mat::K(), mat::T(), mat::U()};
    std::vector<MatrixXcd> ms;
    std::vector<std::vector<FactorAlg>> im;
    for (const auto& x : sl) {
      ms.push_back(blocks(x, MatrixXcd::Zero(2, 2)));
      im.push_back({fa(x), zero2()});
    }
    for (const auto& x : sl) {
      ms.push_back(blocks(MatrixXcd::Zero(2, 2), x));
      im.push_back({zero2(), fa(x)});
    }
    auto alg = algebra_from_matrices("sl2(R)+sl2(R)", {"K1", "T1", "U1", "K2", "T2", "U2"}, ms);
    auto g = group("PSL2(R)xPSL2(R)", {{FactorKind::sl2r, true}, {FactorKind::sl2r, true}});
    return std::make_shared<GroupModel>(alg, g, im);
  }();
  return m;
}

ModelPtr compact_model() {
  static const ModelPtr m = [] {
    std::vector<MatrixXcd> su = {I1 * mat::K(), mat::U(), I1 * mat::T()};
    std::vector<MatrixXcd> ms;
    std::vector<std::vector<FactorAlg>> im;
    for (const auto& x : su) {
      ms.push_back(blocks(x, MatrixXcd::Zero(2, 2)));
      im.push_back({fa(x), zero2()});
    }
    ms.push_back(blocks(MatrixXcd::Zero(2, 2), mat::U()));
    im.push_back({zero2(), fa(mat::U())});
    auto alg = algebra_from_matrices("su2+R", {"iK", "U", "iT", "e1"}, ms);
    auto g = group("SU2xSO2", {{FactorKind::su2, false}, {FactorKind::circle, false}});
    return std::make_shared<GroupModel>(alg, g, im);
  }();
  return m;
}

ModelPtr dim4_model(bool circle) {
  static const AlgebraPtr alg = [] {
    std::vector<MatrixXcd> ms = {blocks(mat::K(), MatrixXcd::Zero(2, 2)), blocks(mat::T(), MatrixXcd::Zero(2, 2)),
                                 blocks(mat::U(), MatrixXcd::Zero(2, 2)), blocks(MatrixXcd::Zero(2, 2), mat::U())};
    return algebra_from_matrices("sl2(R)+R", {"K", "T", "U", "e1"}, ms);
  }();
  static const ModelPtr line_model = [] {
    auto g = group("PSL2(R)xR", {{FactorKind::sl2r, true}, {FactorKind::line, false}});
    const MatrixXcd z1 = MatrixXcd::Zero(1, 1);
    const MatrixXcd one = MatrixXcd::Ones(1, 1);
    return std::make_shared<GroupModel>(
        alg, g,
        std::vector<std::vector<FactorAlg>>{
            {fa(mat::K()), fa(z1)}, {fa(mat::T()), fa(z1)}, {fa(mat::U()), fa(z1)}, {zero2(), fa(one)}});
  }();
  static const ModelPtr circle_model = [] {
    auto g = group("SL2(R)xSO2", {{FactorKind::sl2r, false}, {FactorKind::circle, false}});
    return std::make_shared<GroupModel>(
        alg, g,
        std::vector<std::vector<FactorAlg>>{
            {fa(mat::K()), zero2()}, {fa(mat::T()), zero2()}, {fa(mat::U()), zero2()}, {zero2(), fa(mat::U())}});
  }();
  return circle ? circle_model : line_model;
}

ModelPtr dim5_model() {
  static const ModelPtr m = [] {
    MatrixXcd k = e3(1, 1) - e3(2, 2);
    MatrixXcd t = e3(1, 2) + e3(2, 1);
    MatrixXcd u = e3(1, 2) - e3(2, 1);
    std::vector<MatrixXcd> ms = {k, t, u, e3(0, 1), e3(0, 2)};
    auto alg = algebra_from_matrices("sl2(R)xR^2", {"K", "T", "U", "e1", "e2"}, ms);
    auto g = group("SL2(R)xR^2", {{FactorKind::mat3, false}});
    std::vector<std::vector<FactorAlg>> im;
    for (const auto& x : ms) im.push_back({fa(x)});
    return std::make_shared<GroupModel>(alg, g, im);
  }();
  return m;
}

std::vector<MatrixXcd> alpha_matrices() {
  // (linear, translation) pairs as 4x4 block matrices diag(Y, Z) purely for bookkeeping.
  std::vector<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> p = {
      {Eigen::Matrix2cd::Zero(), -mat::U()}, {mat::K(), Eigen::Matrix2cd::Zero()},
      {mat::T(), Eigen::Matrix2cd::Zero()},  {mat::U(), Eigen::Matrix2cd::Zero()},
      {Eigen::Matrix2cd::Zero(), -mat::K()}, {Eigen::Matrix2cd::Zero(), mat::T()}};
  std::vector<MatrixXcd> out;
  for (const auto& [y, z] : p) out.push_back(blocks(y, z));
  return out;
}

std::vector<MatrixXcd> gamma_matrices() {
  std::vector<std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd>> p = {
      {I1 * mat::K(), Eigen::Matrix2cd::Zero()}, {I1 * mat::T(), Eigen::Matrix2cd::Zero()},
      {-mat::U(), Eigen::Matrix2cd::Zero()},     {Eigen::Matrix2cd::Zero(), I1 * mat::U()},
      {Eigen::Matrix2cd::Zero(), mat::T()},      {Eigen::Matrix2cd::Zero(), -mat::K()}};
  std::vector<MatrixXcd> out;
  for (const auto& [y, z] : p) out.push_back(blocks(y, z));
  return out;
}

static std::vector<std::vector<FactorAlg>> semi_images(const std::vector<MatrixXcd>& ms) {
  std::vector<std::vector<FactorAlg>> im;
  for (const auto& b : ms) im.push_back({fa(b.topLeftCorner(2, 2), b.bottomRightCorner(2, 2))});
  return im;
}

ModelPtr alpha_model() {
  static const ModelPtr m = [] {
    auto alg = table_algebra("sl2(R)xR^3", {"e1", "e2", "e3", "e4", "e5", "e6"},
                             {{1, 2, 6, 1.0},
                              {1, 3, 5, 1.0},
                              {2, 3, 4, 1.0},
                              {5, 4, 6, -1.0},
                              {2, 6, 1, -1.0},
                              {3, 5, 1, -1.0},
                              {2, 4, 3, 1.0},
                              {3, 4, 2, -1.0},
                              {6, 4, 5, 1.0}});
    auto g = group("PSL2(R)xR^3", {{FactorKind::semi_sl2r, true}});
    return std::make_shared<GroupModel>(alg, g, semi_images(alpha_matrices()));
  }();
  return m;
}

ModelPtr gamma_model() {
  static const ModelPtr m = [] {
    auto alg = table_algebra("su2xR^3", {"X", "Y", "Z", "V1", "V2", "V3"},
                             {{1, 2, 3, 1.0},
                              {3, 1, 2, 1.0},
                              {2, 3, 1, 1.0},
                              {1, 4, 5, -1.0},
                              {3, 6, 5, -1.0},
                              {1, 5, 4, 1.0},
                              {2, 6, 4, 1.0},
                              {3, 5, 6, 1.0},
                              {2, 4, 6, -1.0}});
    auto g = group("PSU2xR^3", {{FactorKind::semi_su2, true}});
    return std::make_shared<GroupModel>(alg, g, semi_images(gamma_matrices()));
  }();
  return m;
}

ModelPtr aff_model() {
  static const ModelPtr m = [] {
    std::vector<MatrixXcd> ms = {e3(1, 1), e3(1, 2), e3(2, 1), e3(2, 2), e3(0, 1), e3(0, 2)};
    auto alg = algebra_from_matrices("aff(R^2)", {"e1", "e2", "e3", "e4", "e5", "e6"}, ms);
    auto g = group("Aff+(R^2)", {{FactorKind::mat3, false}});
    std::vector<std::vector<FactorAlg>> im;
    for (const auto& x : ms) im.push_back({fa(x)});
    return std::make_shared<GroupModel>(alg, g, im);
  }();
  return m;
}

namespace {

ReductivePair make_pair(const std::string& id, const Params& p, const ModelPtr& model,
                        const std::vector<VectorXd>& h, const std::vector<VectorXd>& m, SubgroupKind kind,
                        int n = 1) {
  return ReductivePair{id,
                       p,
                       model,
                       Subspace(model->algebra(), h),
                       Subspace(model->algebra(), m),
                       SubgroupSpec{model->group(), kind, n}};
}

std::vector<CatalogEntry> build_entries() {
  std::vector<CatalogEntry> out;
  auto none = [](const Params&) -> std::optional<std::string> { return std::nullopt; };

  {
    CatalogEntry e;
    e.id = "C1";
    e.algebra = "sl2(C) over so3";
    e.anchor = "complement family m_a = <T + a iT, iU - a U, K + a iK> in sl2(C), h = so3";
    e.param_names = {"a"};
    e.defaults = {{"a", 0.0}};
    e.domain = "a in R";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.samples = {{{"a", -1.3}}, {{"a", 0.0}}, {{"a", 0.6}}, {{"a", 2.0}}, {{"a", 1.0}}};
    e.violation = none;
    e.status = [](const Params& p) { return near(param(p, "a"), 0) ? Status::global_bruck : Status::global_left_A; };
    e.build = [](const Params& p) {
      const double a = param(p, "a");
      return make_pair("C1", p, sl2c_model(), {vec(6, {{2, 1}}), vec(6, {{4, 1}}), vec(6, {{3, 1}})},
                       {vec(6, {{1, 1}, {4, a}}), vec(6, {{5, 1}, {2, -a}}), vec(6, {{0, 1}, {3, a}})},
                       SubgroupKind::unitary);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIAG";
    e.algebra = "sl2(R)+sl2(R) over the diagonal";
    e.anchor = "diagonal complements m_lambda = {(X, lambda X)}";
    e.param_names = {"lambda"};
    e.defaults = {{"lambda", 2.0}};
    e.domain = "lambda in R \\ {0, 1}";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.samples = {{{"lambda", 2.0}}, {{"lambda", -1.0}}, {{"lambda", 0.5}}, {{"lambda", 3.0}}, {{"lambda", -2.5}}};
    e.excluded = {{{{"lambda", 0.0}}, "generates"}, {{{"lambda", 1.0}}, "direct_sum"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      const double l = param(p, "lambda");
      if (near(l, 0) || near(l, 1)) return "lambda must avoid 0 and 1";
      return std::nullopt;
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double l = param(p, "lambda");
      std::vector<VectorXd> h, m;
      for (int i = 0; i < 3; ++i) {
        h.push_back(vec(6, {{i, 1}, {i + 3, 1}}));
        m.push_back(vec(6, {{i, 1}, {i + 3, l}}));
      }
      return make_pair("DIAG", p, diag_model(), h, m, SubgroupKind::diagonal_pair);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "COMPACT";
    e.algebra = "su2+R over H_n";
    e.anchor = "compact complement m_a = <iK, iT, a U + (1+a) e1>, h = <U + n e1>";
    e.param_names = {"a", "n"};
    e.defaults = {{"a", 0.0}, {"n", 1.0}};
    e.domain = "a in R \\ {-1}, n positive integer, 1+a != n a";
    e.dim_g = 4, e.dim_h = 1, e.dim_m = 3;
    e.samples = {{{"a", 0.0}, {"n", 1}}, {{"a", 0.5}, {"n", 1}}, {{"a", -0.75}, {"n", 1}}, {{"a", 2.0}, {"n", 2}},
                 {{"a", -3.0}, {"n", 1}}};
    e.excluded = {{{{"a", -1.0}, {"n", 1}}, "generates"}, {{{"a", 1.0}, {"n", 2}}, "direct_sum"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      const double a = param(p, "a");
      if (near(a, -1)) return "a must differ from -1";
      return check_winding(a, param(p, "n"), "a");
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double a = param(p, "a"), n = param(p, "n");
      return make_pair("COMPACT", p, compact_model(), {vec(4, {{1, 1}, {3, n}})},
                       {vec(4, {{0, 1}}), vec(4, {{2, 1}}), vec(4, {{1, a}, {3, 1 + a}})}, SubgroupKind::winding,
                       static_cast<int>(std::lround(n)));
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIM4-1";
    e.algebra = "sl2(R)+R, h = <(K, e1)>";
    e.anchor = "m_a = <U, T, a K + (1+a) e1>";
    e.param_names = {"a"};
    e.defaults = {{"a", 0.0}};
    e.domain = "a in R \\ {-1}";
    e.dim_g = 4, e.dim_h = 1, e.dim_m = 3;
    e.samples = {{{"a", 0.0}}, {{"a", 1.0}}, {{"a", -0.5}}, {{"a", 2.0}}, {{"a", -3.0}}};
    e.excluded = {{{{"a", -1.0}}, "generates"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      if (near(param(p, "a"), -1)) return "a must differ from -1";
      return std::nullopt;
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double a = param(p, "a");
      return make_pair("DIM4-1", p, dim4_model(false), {vec(4, {{0, 1}, {3, 1}})},
                       {vec(4, {{2, 1}}), vec(4, {{1, 1}}), vec(4, {{0, a}, {3, 1 + a}})}, SubgroupKind::dim4_split);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIM4-2";
    e.algebra = "sl2(R)+R, h = <(U+T, 2 e1)>";
    e.anchor = "m_b = <U+T, K, U + 2b e1>";
    e.param_names = {"b"};
    e.defaults = {{"b", 1.0}};
    e.domain = "b in R \\ {0}";
    e.dim_g = 4, e.dim_h = 1, e.dim_m = 3;
    e.samples = {{{"b", 1.0}}, {{"b", -1.0}}, {{"b", 0.5}}, {{"b", -2.0}}, {{"b", 3.0}}};
    e.excluded = {{{{"b", 0.0}}, "generates"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      if (near(param(p, "b"), 0)) return "b must be nonzero";
      return std::nullopt;
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double b = param(p, "b");
      return make_pair("DIM4-2", p, dim4_model(false), {vec(4, {{2, 1}, {1, 1}, {3, 2}})},
                       {vec(4, {{2, 1}, {1, 1}}), vec(4, {{0, 1}}), vec(4, {{2, 1}, {3, 2 * b}})},
                       SubgroupKind::dim4_unipotent);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIM4-3";
    e.algebra = "sl2(R)+R over H_n";
    e.anchor = "m_c = <K, T, c U + (1+c) e1>, h = <U + n e1>; c = 0 gives the Scheerer extension";
    e.param_names = {"c", "n"};
    e.defaults = {{"c", 0.0}, {"n", 1.0}};
    e.domain = "c in R \\ {-1}, n positive integer, 1+c != n c";
    e.dim_g = 4, e.dim_h = 1, e.dim_m = 3;
    e.samples = {{{"c", 0.0}, {"n", 1}}, {{"c", 1.0}, {"n", 1}}, {{"c", -2.0}, {"n", 1}}, {{"c", 0.5}, {"n", 2}},
                 {{"c", -0.5}, {"n", 3}}};
    e.excluded = {{{{"c", -1.0}, {"n", 1}}, "generates"}, {{{"c", 1.0}, {"n", 2}}, "direct_sum"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      const double c = param(p, "c");
      if (near(c, -1)) return "c must differ from -1";
      return check_winding(c, param(p, "n"), "c");
    };
    e.status = [](const Params& p) {
      return near(param(p, "c"), 0) ? Status::global_bol_scheerer : Status::not_global;
    };
    e.build = [](const Params& p) {
      const double c = param(p, "c"), n = param(p, "n");
      return make_pair("DIM4-3", p, dim4_model(true), {vec(4, {{2, 1}, {3, n}})},
                       {vec(4, {{0, 1}}), vec(4, {{1, 1}}), vec(4, {{2, c}, {3, 1 + c}})}, SubgroupKind::winding,
                       static_cast<int>(std::lround(n)));
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIM5";
    e.algebra = "sl2(R)xR^2, h = <K, e1>";
    e.anchor = "m_b = <e2, U + b e1, T - b e1>";
    e.param_names = {"b"};
    e.defaults = {{"b", 0.0}};
    e.domain = "b = 0 (b != 0 is not reductive for the Jacobi-consistent table)";
    e.dim_g = 5, e.dim_h = 2, e.dim_m = 3;
    e.samples = {{{"b", 0.0}}};
    e.excluded = {{{{"b", 1.0}}, "bracket_condition"}, {{{"b", -0.5}}, "bracket_condition"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      if (!near(param(p, "b"), 0)) return "b must be 0";
      return std::nullopt;
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double b = param(p, "b");
      return make_pair("DIM5", p, dim5_model(), {vec(5, {{0, 1}}), vec(5, {{3, 1}})},
                       {vec(5, {{4, 1}}), vec(5, {{2, 1}, {3, b}}), vec(5, {{1, 1}, {3, -b}})},
                       SubgroupKind::dim5_stab);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIM6-i";
    e.algebra = "sl2(R)xR^3, h = <e1, e2, e6>";
    e.anchor = "m = <e5, e3 - b3 e1 - b2 e6, e4 + b2 e1 + b3 e6>";
    e.param_names = {"b2", "b3"};
    e.defaults = {{"b2", 0.0}, {"b3", 0.0}};
    e.domain = "b2, b3 in R";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.samples = {{{"b2", 0.0}, {"b3", 0.0}},
                 {{"b2", 1.0}, {"b3", 2.0}},
                 {{"b2", -0.5}, {"b3", 0.3}},
                 {{"b2", 2.0}, {"b3", -1.0}},
                 {{"b2", 0.0}, {"b3", 1.0}}};
    e.violation = none;
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double b2 = param(p, "b2"), b3 = param(p, "b3");
      return make_pair("DIM6-i", p, alpha_model(), {vec(6, {{0, 1}}), vec(6, {{1, 1}}), vec(6, {{5, 1}})},
                       {vec(6, {{4, 1}}), vec(6, {{2, 1}, {0, -b3}, {5, -b2}}), vec(6, {{3, 1}, {0, b2}, {5, b3}})},
                       SubgroupKind::dim6i_stab);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "DIM6-ii";
    e.algebra = "sl2(R)xR^3, h = <e2, e3, e4>";
    e.anchor = "m_a = <e1 + a e4, e6 - a e3, e5 + a e2>";
    e.param_names = {"a"};
    e.defaults = {{"a", 1.0}};
    e.domain = "a in R \\ {0}";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.samples = {{{"a", 1.0}}, {{"a", -2.0}}, {{"a", 0.5}}, {{"a", 3.0}}, {{"a", -0.7}}};
    e.excluded = {{{{"a", 0.0}}, "generates"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      if (near(param(p, "a"), 0)) return "a must be nonzero";
      return std::nullopt;
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double a = param(p, "a");
      return make_pair("DIM6-ii", p, alpha_model(), {vec(6, {{1, 1}}), vec(6, {{2, 1}}), vec(6, {{3, 1}})},
                       {vec(6, {{0, 1}, {3, a}}), vec(6, {{5, 1}, {2, -a}}), vec(6, {{4, 1}, {1, a}})},
                       SubgroupKind::linear_only);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "C2";
    e.algebra = "sl2(R)xR^3, h = <e4, e5, e6>";
    e.anchor = "m_{b1,b2} = <e1, e2 + b1 e6 + b2 e5, e3 - b2 e6 + b1 e5>";
    e.param_names = {"b1", "b2"};
    e.defaults = {{"b1", 0.0}, {"b2", 0.0}};
    e.domain = "b1, b2 in R";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.samples = {{{"b1", 0.0}, {"b2", 0.0}},
                 {{"b1", 0.0}, {"b2", 1.0}},
                 {{"b1", 2.0}, {"b2", -0.5}},
                 {{"b1", 1.2}, {"b2", -0.8}},
                 {{"b1", -1.0}, {"b2", 0.3}}};
    e.violation = none;
    e.status = [](const Params& p) { return near(param(p, "b2"), 0) ? Status::global_bruck : Status::global_left_A; };
    e.build = [](const Params& p) {
      const double b1 = param(p, "b1"), b2 = param(p, "b2");
      return make_pair("C2", p, alpha_model(), {vec(6, {{3, 1}}), vec(6, {{4, 1}}), vec(6, {{5, 1}})},
                       {vec(6, {{0, 1}}), vec(6, {{1, 1}, {5, b1}, {4, b2}}), vec(6, {{2, 1}, {5, -b2}, {4, b1}})},
                       SubgroupKind::c2_stab);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "AFF";
    e.algebra = "aff(R^2), h = <e1, e4, e5>";
    e.anchor = "m = <e2, e3, e6>";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.domain = "no parameters";
    e.samples = {{}};
    e.violation = none;
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      return make_pair("AFF", p, aff_model(), {vec(6, {{0, 1}}), vec(6, {{3, 1}}), vec(6, {{4, 1}})},
                       {vec(6, {{1, 1}}), vec(6, {{2, 1}}), vec(6, {{5, 1}})}, SubgroupKind::aff_stab);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "EUC";
    e.algebra = "su2xR^3, h = <X, Y, Z>";
    e.anchor = "m_a = <V1 + a Z, V2 + a Y, V3 - a X>";
    e.param_names = {"a"};
    e.defaults = {{"a", 1.0}};
    e.domain = "a in R \\ {0}";
    e.dim_g = 6, e.dim_h = 3, e.dim_m = 3;
    e.samples = {{{"a", 1.0}}, {{"a", -0.7}}, {{"a", 2.0}}, {{"a", 0.5}}, {{"a", -3.0}}};
    e.excluded = {{{{"a", 0.0}}, "generates"}};
    e.violation = [](const Params& p) -> std::optional<std::string> {
      if (near(param(p, "a"), 0)) return "a must be nonzero";
      return std::nullopt;
    };
    e.status = [](const Params&) { return Status::not_global; };
    e.build = [](const Params& p) {
      const double a = param(p, "a");
      return make_pair("EUC", p, gamma_model(), {vec(6, {{0, 1}}), vec(6, {{1, 1}}), vec(6, {{2, 1}})},
                       {vec(6, {{3, 1}, {2, a}}), vec(6, {{4, 1}, {1, a}}), vec(6, {{5, 1}, {0, -a}})},
                       SubgroupKind::linear_only);
    };
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.id = "HYP2";
    e.algebra = "sl2(R) over so2";
    e.anchor = "hyperbolic plane section m = <K, T>";
    e.domain = "no parameters";
    e.dim_g = 3, e.dim_h = 1, e.dim_m = 2;
    e.samples = {{}};
    e.violation = none;
    e.status = [](const Params&) { return Status::helper; };
    e.build = [](const Params& p) {
      return make_pair("HYP2", p, sl2r_model(), {vec(3, {{2, 1}})}, {vec(3, {{0, 1}}), vec(3, {{1, 1}})},
                       SubgroupKind::rotation);
    };
    out.push_back(e);
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& list_entries() {
  static const std::vector<CatalogEntry> entries = build_entries();
  return entries;
}

const CatalogEntry& find_entry(const std::string& id) {
  for (const auto& e : list_entries())
    if (e.id == id) return e;
  throw DomainError("unknown catalog entry " + id);
}

ReductivePair instantiate(const CatalogEntry& entry, const Params& params, bool strict) {
  Params p = entry.defaults;
  for (const auto& [k, v] : params) {
    bool known = false;
    for (const auto& n : entry.param_names) known = known || n == k;
    if (!known) throw DomainError("entry " + entry.id + " has no parameter " + k);
    p[k] = v;
  }
  if (auto why = entry.violation(p)) {
    bool documented = false;
    for (const auto& ex : entry.excluded) {
      bool match = true;
      for (const auto& [k, v] : ex.params) match = match && near(p.at(k), v);
      documented = documented || match;
    }
    if (strict || !documented) throw DomainError(entry.id + ": parameter outside the domain (" + *why + ")");
  }
  return entry.build(p);
}

ReductivePair instantiate(const std::string& id, const Params& params, bool strict) {
  return instantiate(find_entry(id), params, strict);
}

std::optional<AutomorphismId> parse_automorphism(const std::string& s) {
  if (s == "conj_phi") return AutomorphismId::conj_phi;
  if (s == "beta") return AutomorphismId::beta;
  if (s == "euc_phi") return AutomorphismId::euc_phi;
  return std::nullopt;
}

static double get_or(const Params& p, const std::string& k, double d) {
  auto it = p.find(k);
  return it == p.end() ? d : it->second;
}

static Eigen::MatrixXd beta_displayed(double b1, double b2, double angle) {
  if (near(b2, 0)) throw DomainError("beta needs b2 != 0");
  const double r = 1.0 / std::abs(b2);
  const double c = r * std::cos(angle), d = r * std::sin(angle);
  // Basis order e1..e6 -> indices 0..5; column j is the image of e_{j+1}.
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(6, 6);
  B(0, 0) = r;
  B(4, 5) = -d, B(5, 5) = c;
  B(4, 4) = c, B(5, 4) = d;
  B(3, 3) = 1;
  B(1, 1) = c / r, B(2, 1) = -d / r, B(5, 1) = -c * b1, B(4, 1) = d * b1;
  B(2, 2) = c / r, B(1, 2) = d / r, B(5, 2) = -d * b1, B(4, 2) = -c * b1;
  return B;
}

static Eigen::MatrixXd euc_phi_scaled(double s) {
  const double r3 = std::sqrt(3.0);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(6, 6);
  // X, Y, Z, V1, V2, V3 -> 0..5
  P(3, 3) = s / 2, P(4, 3) = r3 * s / 2;
  P(3, 4) = r3 * s / 2, P(4, 4) = -s / 2;
  P(5, 5) = -s;
  P(0, 0) = -1;
  P(1, 1) = -0.5, P(2, 1) = r3 / 2;
  P(1, 2) = r3 / 2, P(2, 2) = 0.5;
  return P;
}

Eigen::MatrixXd automorphism_matrix_displayed(AutomorphismId id, const Params& params) {
  switch (id) {
    case AutomorphismId::conj_phi:
      return Eigen::VectorXd((Eigen::VectorXd(6) << 1, 1, 1, -1, -1, -1).finished()).asDiagonal();
    case AutomorphismId::beta:
      return beta_displayed(param(params, "b1"), param(params, "b2"), get_or(params, "angle", 0.0));
    case AutomorphismId::euc_phi: {
      const double a = param(params, "a");
      if (near(a, 0)) throw DomainError("euc_phi needs a != 0");
      return euc_phi_scaled(1.0 / a);
    }
  }
  throw DomainError("unknown automorphism");
}

Eigen::MatrixXd automorphism_matrix(AutomorphismId id, const Params& params) {
  switch (id) {
    case AutomorphismId::conj_phi:
      return automorphism_matrix_displayed(id, params);
    case AutomorphismId::beta: {
      Eigen::MatrixXd B = automorphism_matrix_displayed(id, params);
      if (param(params, "b2") < 0) {
        // Compose with V -> -V so that negative b2 also lands on m_{0,1}.
        Eigen::VectorXd n(6);
        n << -1, 1, 1, 1, -1, -1;
        B = n.asDiagonal() * B;
      }
      return B;
    }
    case AutomorphismId::euc_phi: {
      const double a = param(params, "a");
      if (near(a, 0)) throw DomainError("euc_phi needs a != 0");
      return euc_phi_scaled(a);
    }
  }
  throw DomainError("unknown automorphism");
}

Subspace automorphism_image(AutomorphismId id, const Params& params, const ReductivePair& pair) {
  Params p = pair.params;
  for (const auto& [k, v] : params) p[k] = v;
  const std::string need = id == AutomorphismId::conj_phi ? "C1" : id == AutomorphismId::beta ? "C2" : "EUC";
  if (pair.entry != need) throw DomainError("automorphism does not apply to entry " + pair.entry);
  return Subspace(pair.alg(), automorphism_matrix(id, p) * pair.m.basis);
}

}  // namespace loopforge
