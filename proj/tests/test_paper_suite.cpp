#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "loopforge/catalog.hpp"
#include "loopforge/paper_suite.hpp"
#include "loopforge/sections.hpp"
#include "oracles.hpp"

using namespace loopforge;

namespace {

const Constants& constants() {
  static const Constants c = Constants::load(Constants::default_path());
  return c;
}

}  // namespace

TEST_CASE("FNV-1a 64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("constants load and verify their checksum") {
  const Constants& c = constants();
  CHECK(Constants::checksum_of(c.values()) == hex64(fnv1a64(c.values().dump())));
  CHECK(c.matrix("aff_g_corrected").rows() == 3);
}

TEST_CASE("a tampered constants file is rejected") {
  std::ifstream in(Constants::default_path());
  json doc = json::parse(in);
  doc["values"]["aff_g_corrected"]["matrix"][0][0] = 2;
  const auto path = std::filesystem::temp_directory_path() / "loopforge_tampered_constants.json";
  std::ofstream(path) << doc.dump(2);
  CHECK_THROWS_AS(Constants::load(path.string()), ChecksumError);
  std::filesystem::remove(path);
  CHECK_THROWS(Constants::load("/nonexistent/constants.json"));
}

TEST_CASE("every suite operation is confirmed except the intersection count") {
  const auto ev = run_suite(constants());
  REQUIRE(ev.size() == suite_ids().size());
  for (size_t i = 0; i < ev.size(); ++i) {
    CAPTURE(ev[i].id);
    CHECK(ev[i].id == suite_ids()[i]);
    const json j = ev[i].to_json();
    for (const char* k : {"id", "claim", "lhs", "rhs", "residual", "tol", "verdict", "convention"}) CHECK(j.contains(k));
    if (ev[i].id == "prop23") {
      CHECK_FALSE(ev[i].confirmed);
      CHECK(j["verdict"] == "refuted");
    } else {
      CHECK(ev[i].confirmed);
      CHECK(ev[i].residual <= ev[i].tol);
    }
  }
}

TEST_CASE("suite selection by id and prefix") {
  CHECK(run_suite(constants(), "prop8").size() == 1);
  CHECK(run_suite(constants(), "prop13").size() == 5);
  CHECK(run_suite(constants(), "prop19").size() == 2);
  CHECK_THROWS_AS(run_suite(constants(), "prop1"), DomainError);
  CHECK_THROWS_AS(run_suite(constants(), "nope"), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(reproduce_prop5_compact(-1.0), DomainError);
  CHECK_THROWS_AS(reproduce_prop5_compact(0.5, 0), DomainError);
  CHECK_THROWS_AS(reproduce_prop19("ii", 0.0, constants()), DomainError);
  CHECK_THROWS_AS(reproduce_prop19("iii", 1.0, constants()), DomainError);
  CHECK_THROWS_AS(reproduce_prop7_8_lambda(0.0), DomainError);
  CHECK_THROWS_AS(reproduce_prop7_8_lambda(1.0), DomainError);
  CHECK_THROWS_AS(reproduce_prop13("d", {}), DomainError);
  CHECK_THROWS_AS(reproduce_prop13("b_pos", {{"b", -1.0}}), DomainError);
  CHECK_THROWS_AS(reproduce_prop13("c_neg", {{"c", 0.5}, {"n", 1}}), DomainError);
}

TEST_CASE("parameterized reproductions away from the defaults") {
  CHECK(reproduce_prop5_compact(0.0, 2).confirmed);
  CHECK(reproduce_prop13("a", {{"a", 2.5}}).confirmed);
  CHECK(reproduce_prop13("b_pos", {{"b", 0.3}}).confirmed);
  CHECK(reproduce_prop13("b_neg", {{"b", -2.0}}).confirmed);
  CHECK(reproduce_prop19("ii", -0.4, constants()).confirmed);
  for (const double l : {-1.5, 2.5, 4.0}) CHECK(reproduce_prop7_8_lambda(l).confirmed);
}

TEST_CASE("transversal witnesses are genuine coset collisions") {
  // Independently: (exp(x2) p)^-1 exp(x1) p lies in H while x1 != x2.
  const std::vector<std::pair<std::string, Params>> cases = {
      {"COMPACT", {{"a", 0.0}, {"n", 1.0}}}, {"DIAG", {{"lambda", 2.0}}}, {"DIM4-1", {{"a", 0.0}}},
      {"DIM4-3", {{"c", -3.0}, {"n", 1.0}}}, {"DIM6-i", {{"b2", 0.0}, {"b3", 0.0}}}};
  for (const auto& [id, prm] : cases) {
    CAPTURE(id);
    const ReductivePair pair = instantiate(id, prm, false);
    const SectionModel model(pair);
    const auto ws = transversal_witnesses(pair, constants());
    REQUIRE_FALSE(ws.empty());
    for (const auto& w : ws) {
      CAPTURE(w.source);
      CHECK((w.x1 - w.x2).norm() > 1e-3);
      const GroupElement a = multiply(model.exp_m(w.x1), w.p), b = multiply(model.exp_m(w.x2), w.p);
      CHECK(in_subgroup(pair.H, multiply(inverse(b), a), 1e-6));
    }
  }
  CHECK(transversal_witnesses(instantiate("C1", {{"a", 0.0}}), constants()).empty());
}
