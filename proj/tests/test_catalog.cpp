#include <doctest.h>

#include <set>

#include "loopforge/catalog.hpp"
#include "oracles.hpp"

using namespace loopforge;

namespace {

bool flag(const ReductiveReport& r, const std::string& name) {
  if (name == "direct_sum") return r.direct_sum;
  if (name == "h_subalgebra") return r.h_subalgebra;
  if (name == "bracket_condition") return r.bracket_condition;
  if (name == "generates") return r.generates;
  FAIL("unknown flag " << name);
  return false;
}

// Dimension of the Lie algebra generated by the columns of m, computed from matrix commutators
// of the group realization.
int generated_dim(const GroupModel& model, const Eigen::MatrixXd& m) {
  const int n = model.algebra()->dim();
  std::vector<Eigen::MatrixXcd> mats;
  for (int i = 0; i < n; ++i) mats.push_back(model.algebra_matrix(model.algebra()->unit(i)));
  Eigen::MatrixXd span = m;
  for (int round = 0; round < n; ++round) {
    Eigen::MatrixXd next = span;
    for (int i = 0; i < span.cols(); ++i)
      for (int j = 0; j < span.cols(); ++j) {
        const Eigen::MatrixXcd a = oracle::combo(mats, span.col(i)), b = oracle::combo(mats, span.col(j));
        const Eigen::VectorXd c = oracle::coords(mats, a * b - b * a);
        next.conservativeResize(Eigen::NoChange, next.cols() + 1);
        next.col(next.cols() - 1) = c;
      }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(next, Eigen::ComputeThinU);
    const auto sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv[k] > 1e-9 * sv[0]) ++rank;
    const Eigen::MatrixXd basis = svd.matrixU().leftCols(rank);
    if (rank == span.cols()) return rank;
    span = basis;
  }
  return static_cast<int>(span.cols());
}

void check_automorphism(const Eigen::MatrixXd& a, const ReductivePair& pair) {
  const auto& g = *pair.alg();
  double hom = 0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      hom = std::max(hom, (a * g.structure(i, j) - g.bracket(a.col(i), a.col(j))).cwiseAbs().maxCoeff());
  CHECK(hom <= 1e-10);
  CHECK(std::abs(a.determinant()) > 1e-6);
  CHECK(oracle::same_span(a * pair.h.basis, pair.h.basis, 1e-10));
}

}  // namespace

TEST_CASE("catalog enumerates the classification entries and the helper") {
  std::set<std::string> ids;
  int helpers = 0;
  for (const auto& e : list_entries()) {
    ids.insert(e.id);
    if (e.status(e.defaults) == Status::helper) ++helpers;
    CHECK(e.dim_h + e.dim_m == e.dim_g);
  }
  const std::set<std::string> want = {"C1",     "DIAG",    "COMPACT", "DIM4-1", "DIM4-2", "DIM4-3", "DIM5",
                                      "DIM6-i", "DIM6-ii", "C2",      "AFF",    "EUC",    "HYP2"};
  CHECK(ids == want);
  CHECK(helpers == 1);
  CHECK(find_entry("C1").domain == "a in R");
  CHECK_THROWS_AS(find_entry("NOPE"), DomainError);
}

TEST_CASE("expected statuses") {
  CHECK(find_entry("C1").status({{"a", 0.0}}) == Status::global_bruck);
  CHECK(find_entry("C1").status({{"a", 0.5}}) == Status::global_left_A);
  CHECK(find_entry("C2").status({{"b1", 1.0}, {"b2", 0.0}}) == Status::global_bruck);
  CHECK(find_entry("C2").status({{"b1", 0.0}, {"b2", 1.0}}) == Status::global_left_A);
  CHECK(find_entry("DIM4-3").status({{"c", 0.0}, {"n", 1.0}}) == Status::global_bol_scheerer);
  CHECK(find_entry("DIM4-3").status({{"c", 2.0}, {"n", 1.0}}) == Status::not_global);
  for (const char* id : {"DIAG", "COMPACT", "DIM4-1", "DIM4-2", "DIM5", "DIM6-i", "DIM6-ii", "AFF", "EUC"})
    CHECK(find_entry(id).status(find_entry(id).defaults) == Status::not_global);
  CHECK(find_entry("HYP2").status({}) == Status::helper);
}

TEST_CASE("sampled in-domain parameters give reductive pairs") {
  for (const auto& e : list_entries()) {
    if (e.id == "AFF") continue;  // covered below
    CAPTURE(e.id);
    // DIM5 is reductive only at b = 0 and AFF has no parameters.
    const size_t need = e.param_names.empty() || e.id == "DIM5" ? 1 : 5;
    CHECK(e.samples.size() >= need);
    for (const auto& p : e.samples) {
      const ReductivePair pair = instantiate(e, p);
      const auto r = check_reductive_pair(pair.h, pair.m);
      CHECK(r.direct_sum);
      CHECK(r.h_subalgebra);
      CHECK(r.bracket_condition);
      CHECK(r.generates);
    }
  }
}

TEST_CASE("excluded parameters fail their documented flag") {
  for (const auto& e : list_entries()) {
    for (const auto& x : e.excluded) {
      CAPTURE(e.id);
      CAPTURE(x.flag);
      CHECK_THROWS_AS(instantiate(e, x.params, true), DomainError);
      const ReductivePair pair = instantiate(e, x.params, false);
      CHECK_FALSE(flag(check_reductive_pair(pair.h, pair.m), x.flag));
    }
  }
}

TEST_CASE("affine entry: m generates a 5-dimensional subalgebra") {
  const ReductivePair pair = instantiate("AFF", {});
  const auto r = check_reductive_pair(pair.h, pair.m);
  CHECK(r.direct_sum);
  CHECK(r.h_subalgebra);
  CHECK(r.bracket_condition);
  CHECK(generated_dim(*pair.model, pair.m.basis) == 5);
  CHECK_FALSE(r.generates);
}

TEST_CASE("domain violations") {
  CHECK_THROWS_AS(instantiate("DIAG", {{"lambda", 1.0}}), DomainError);
  CHECK_THROWS_AS(instantiate("COMPACT", {{"a", -1.0}}), DomainError);
  CHECK_THROWS_AS(instantiate("EUC", {{"a", 0.0}}), DomainError);
  CHECK_THROWS_AS(instantiate("C1", {{"b", 1.0}}), DomainError);
}

TEST_CASE("conj_phi maps m_a to m_-a and is an automorphism fixing h") {
  for (const double a : {-1.3, 0.6, 2.0}) {
    const ReductivePair p = instantiate("C1", {{"a", a}});
    const Subspace img = automorphism_image(AutomorphismId::conj_phi, {}, p);
    CHECK(oracle::same_span(img.basis, instantiate("C1", {{"a", -a}}).m.basis, 1e-10));
    check_automorphism(automorphism_matrix(AutomorphismId::conj_phi, {}), p);
  }
}

TEST_CASE("beta maps m_{b1,b2} to m_{0,1}") {
  const Eigen::MatrixXd target = instantiate("C2", {{"b1", 0.0}, {"b2", 1.0}}).m.basis;
  for (const auto& [b1, b2] : {std::pair{0.0, 1.0}, std::pair{2.0, -0.5}, std::pair{-1.0, 3.0}}) {
    const Params prm = {{"b1", b1}, {"b2", b2}};
    const ReductivePair p = instantiate("C2", prm);
    CHECK(oracle::same_span(automorphism_image(AutomorphismId::beta, {}, p).basis, target, 1e-10));
    check_automorphism(automorphism_matrix(AutomorphismId::beta, prm), p);
    Params rotated = prm;
    rotated["angle"] = 1.0;
    CHECK(oracle::same_span(automorphism_matrix(AutomorphismId::beta, rotated) * p.m.basis, target, 1e-10));
  }
}

TEST_CASE("displayed beta sends negative b2 to m_{0,-1}") {
  const Params prm = {{"b1", 2.0}, {"b2", -0.5}};
  const ReductivePair p = instantiate("C2", prm);
  const Eigen::MatrixXd shown = automorphism_matrix_displayed(AutomorphismId::beta, prm) * p.m.basis;
  CHECK(oracle::same_span(shown, instantiate("C2", {{"b1", 0.0}, {"b2", -1.0}}).m.basis, 1e-10));
  CHECK_THROWS_AS(automorphism_matrix(AutomorphismId::beta, {{"b1", 0.0}, {"b2", 0.0}}), DomainError);
}

TEST_CASE("euc_phi maps m_a to m_1") {
  const Eigen::MatrixXd target = instantiate("EUC", {{"a", 1.0}}).m.basis;
  for (const double a : {0.5, -2.0, 3.0}) {
    const Params prm = {{"a", a}};
    const ReductivePair p = instantiate("EUC", prm);
    CHECK(oracle::same_span(automorphism_image(AutomorphismId::euc_phi, {}, p).basis, target, 1e-10));
    check_automorphism(automorphism_matrix(AutomorphismId::euc_phi, prm), p);
  }
}

TEST_CASE("displayed euc_phi sends m_a to m_{a^2}") {
  for (const double a : {0.5, -2.0, 3.0}) {
    const ReductivePair p = instantiate("EUC", {{"a", a}});
    const Eigen::MatrixXd shown = automorphism_matrix_displayed(AutomorphismId::euc_phi, {{"a", a}}) * p.m.basis;
    CHECK(oracle::same_span(shown, instantiate("EUC", {{"a", a * a}}).m.basis, 1e-10));
  }
}

TEST_CASE("automorphisms reject foreign entries") {
  CHECK_THROWS_AS(automorphism_image(AutomorphismId::beta, {}, instantiate("C1", {{"a", 0.0}})), DomainError);
  CHECK(parse_automorphism("euc_phi") == AutomorphismId::euc_phi);
  CHECK_FALSE(parse_automorphism("nope").has_value());
}
