#include <doctest.h>

#include <string>

#include "loopforge/catalog.hpp"
#include "loopforge/lie_algebra.hpp"
#include "loopforge/rng.hpp"
#include "oracles.hpp"

using namespace loopforge;

namespace {

struct NamedModel {
  std::string name;
  ModelPtr model;
  double table_scale;  // [M_i, M_j] = table_scale * sum_k c_ij^k M_k
};

std::vector<NamedModel> all_models() {
  return {{"sl2r", sl2r_model(), 1.0},     {"sl2c", sl2c_model(), 1.0},         {"su2", su2_model(), 1.0},
          {"alpha", alpha_model(), 2.0},   {"gamma", gamma_model(), 2.0},       {"aff", aff_model(), 1.0},
          {"dim5", dim5_model(), 1.0},     {"dim4_line", dim4_model(false), 1.0}, {"dim4_circle", dim4_model(true), 1.0},
          {"compact", compact_model(), 1.0}, {"diag", diag_model(), 1.0}};
}

std::vector<Eigen::VectorXd> vecs(std::initializer_list<Eigen::VectorXd> v) { return v; }

}  // namespace

TEST_CASE("structure tables are antisymmetric and satisfy Jacobi") {
  for (const auto& nm : all_models()) {
    CAPTURE(nm.name);
    const auto& g = *nm.model->algebra();
    CHECK(g.antisymmetry_residual() <= 1e-12);
    CHECK(g.jacobi_residual() <= 1e-12);
    // Independent Jacobi sum on every basis triple.
    double worst = 0;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        for (int k = 0; k < g.dim(); ++k) {
          const auto a = g.unit(i), b = g.unit(j), c = g.unit(k);
          const Eigen::VectorXd s = g.bracket(a, g.bracket(b, c)) + g.bracket(b, g.bracket(c, a)) +
                                    g.bracket(c, g.bracket(a, b));
          worst = std::max(worst, s.cwiseAbs().maxCoeff());
        }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("tables match commutators of the group realization") {
  for (const auto& nm : all_models()) {
    CAPTURE(nm.name);
    const auto& g = *nm.model->algebra();
    std::vector<Eigen::MatrixXcd> mats;
    for (int i = 0; i < g.dim(); ++i) mats.push_back(nm.model->algebra_matrix(g.unit(i)));
    double worst = 0;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j) {
        const Eigen::MatrixXcd c = mats[i] * mats[j] - mats[j] * mats[i];
        const Eigen::MatrixXcd t = nm.table_scale * oracle::combo(mats, g.structure(i, j));
        worst = std::max(worst, oracle::max_abs(c - t));
      }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("alpha and gamma displays are the realization's components") {
  for (const auto& [mats, model] : {std::pair{alpha_matrices(), alpha_model()}, std::pair{gamma_matrices(), gamma_model()}}) {
    for (int i = 0; i < 6; ++i) {
      const FactorAlg f = model->components(model->algebra()->unit(i))[0];
      CHECK(oracle::max_abs(mats[i].topLeftCorner(2, 2) - f.y) == 0.0);
      CHECK(oracle::max_abs(mats[i].bottomRightCorner(2, 2) - f.z) == 0.0);
    }
  }
  // The stored tables are half the commutators (scale 2 above); e.g. [e1, e2] = e6 for alpha.
  const auto& a = *alpha_model()->algebra();
  CHECK((a.structure(0, 1) - a.unit(5)).norm() <= 1e-15);
}

TEST_CASE("Killing form agrees with trace oracles") {
  Rng rng(11);
  for (const auto& model : {sl2r_model(), sl2c_model(), su2_model()}) {
    const auto alg = model->algebra();
    const double ad_scale = alg->kind() == AlgebraKind::sl2c ? 16.0 : 8.0;
    for (int s = 0; s < 50; ++s) {
      Eigen::VectorXd x(alg->dim()), y(alg->dim());
      for (int i = 0; i < alg->dim(); ++i) x[i] = rng.uniform(-2, 2), y[i] = rng.uniform(-2, 2);
      const AlgebraVector ax(alg, x), ay(alg, y);
      const double k = killing_real(ax, ay);
      // ad trace from the structure constants.
      const double tr_ad = (oracle::ad(*alg, x) * oracle::ad(*alg, y)).trace() / ad_scale;
      // For sl2 the Killing form is 4 tr(XY), normalized by 1/8.
      const double tr_mat = 0.5 * (model->algebra_matrix(x) * model->algebra_matrix(y)).trace().real();
      CHECK(k == doctest::Approx(tr_ad).epsilon(1e-12));
      CHECK(k == doctest::Approx(tr_mat).epsilon(1e-12));
      CHECK(killing_trace(ax, ay) == doctest::Approx(k).epsilon(1e-12));
    }
  }
  CHECK(killing_real(AlgebraVector::basis(sl2r_model()->algebra(), 0), AlgebraVector::basis(sl2r_model()->algebra(), 0)) ==
        doctest::Approx(1.0));
  CHECK(killing_real(AlgebraVector::basis(sl2r_model()->algebra(), 2), AlgebraVector::basis(sl2r_model()->algebra(), 2)) ==
        doctest::Approx(-1.0));
}

TEST_CASE("Killing form is unsupported outside the simple algebras") {
  const auto alg = alpha_model()->algebra();
  CHECK_THROWS_AS(killing_real(AlgebraVector::basis(alg, 0), AlgebraVector::basis(alg, 1)), UnsupportedError);
}

TEST_CASE("reductive pair flags") {
  const auto alg = sl2r_model()->algebra();
  const Subspace h(alg, vecs({alg->unit(2)}));
  const Subspace m(alg, vecs({alg->unit(0), alg->unit(1)}));
  const auto r = check_reductive_pair(h, m);
  CHECK(r.all());
  // K + T lies in m, so h2 + m is not direct.
  const Subspace h2(alg, vecs({alg->unit(0) + alg->unit(1)}));
  const auto r2 = check_reductive_pair(h2, m);
  CHECK_FALSE(r2.direct_sum);
  const Subspace m3(alg, vecs({alg->unit(0)}));
  const auto r3 = check_reductive_pair(h, m3);
  CHECK_FALSE(r3.direct_sum);
}

TEST_CASE("generated subalgebra closure") {
  const auto alg = sl2r_model()->algebra();
  const Subspace k(alg, vecs({alg->unit(0)}));
  CHECK(generated_subalgebra(k).size() == 1);
  const Subspace kt(alg, vecs({alg->unit(0), alg->unit(1)}));
  CHECK(generated_subalgebra(kt).size() == 3);
}

TEST_CASE("structure-constant JSON round trip") {
  const std::string text = R"({"dim": 3, "names": ["K", "T", "U"],
    "brackets": [[0, 1, [0, 0, 2]], [0, 2, [0, 2, 0]], [1, 2, [-2, 0, 0]]]})";
  const auto alg = load_algebra_json(text, "sl2");
  CHECK(alg->dim() == 3);
  CHECK(alg->jacobi_residual() <= 1e-12);
  CHECK((alg->structure(1, 0) + alg->structure(0, 1)).norm() == 0.0);
  CHECK_THROWS(load_algebra_json(R"({"dim": 2})"));
}
