#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopforge/catalog.hpp"
#include "loopforge/properties.hpp"
#include "loopforge/report.hpp"

namespace loopforge {

class ChecksumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t x);

// data/constants.json: {"values": {...}, "checksum": fnv1a64(values.dump()) in hex}.
class Constants {
public:
  static Constants load(const std::string& path);  // ChecksumError on mismatch, std::runtime_error on I/O
  static std::string default_path();
  static std::string checksum_of(const nlohmann::json& values);

  Eigen::MatrixXd matrix(const std::string& key) const;
  double number(const std::string& key) const;
  const nlohmann::json& values() const { return values_; }

private:
  nlohmann::json values_;
};

struct Evidence {
  std::string id;
  std::string claim;
  json lhs;
  json rhs;
  double residual = 0.0;
  double tol = 0.0;
  bool confirmed = false;
  std::string convention;
  json details = json::object();

  json to_json() const;
};

Evidence reproduce_prop5_compact(double a, int n = 1);
Evidence reproduce_prop8(const Constants& c);
// sub_case: a, b_pos, b_neg, c_neg, c_pos. Parameters: a; b; c and n (c_pos also accepts k).
Evidence reproduce_prop13(const std::string& sub_case, const Params& params);
Evidence reproduce_prop16(const Constants& c);
Evidence reproduce_prop19(const std::string& sub_case, double a, const Constants& c);
Evidence reproduce_prop21(const Constants& c);
Evidence reproduce_prop23();
Evidence reproduce_prop7_8_lambda(double lambda);

// Suite ops with their default parameters, in run order.
std::vector<std::string> suite_ids();
// Runs every op whose id equals `only` or starts with `only` followed by '_' (all when empty).
std::vector<Evidence> run_suite(const Constants& c, const std::string& only = "");

// Section-level counterexamples for a catalog pair, built from the same computations.
std::vector<TransversalWitness> transversal_witnesses(const ReductivePair& pair, const Constants& c);

}  // namespace loopforge
