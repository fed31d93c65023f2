#include "loopforge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "loopforge/catalog.hpp"
#include "loopforge/expmaps.hpp"
#include "loopforge/paper_suite.hpp"
#include "loopforge/properties.hpp"
#include "loopforge/report.hpp"
#include "loopforge/rng.hpp"
#include "loopforge/sections.hpp"

namespace loopforge {

namespace {

struct RunConfig {
  std::string command;
  std::string entry;
  std::vector<std::string> params;
  std::optional<int> samples;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::optional<double> radius;
  std::string out;
  std::string only;
  bool no_timestamp = false;
  std::string constants;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("parameter must look like name=value: " + kv);
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != val.size() || val.empty()) throw UsageError("parameter value is not a number: " + kv);
      p[key] = v;
    }
  }
  return p;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const RunConfig& c, int samples, double radius) {
  json j = {{"command", c.command}, {"samples", samples}, {"seed", c.seed}, {"tol", c.tol}, {"radius", radius}};
  if (!c.entry.empty()) j["entry"] = c.entry;
  if (!c.params.empty()) j["param"] = c.params;
  if (!c.only.empty()) j["only"] = c.only;
  return j;
}

void emit(const RunConfig& c, json body, std::ostream& out) {
  if (!c.no_timestamp) body["timestamp"] = timestamp();
  const std::string text = body.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

json entry_json(const CatalogEntry& e) {
  json excluded = json::array();
  for (const auto& x : e.excluded) excluded.push_back({{"params", params_json(x.params)}, {"fails", x.flag}});
  json samples = json::array();
  for (const auto& s : e.samples) samples.push_back(params_json(s));
  return {{"id", e.id},
          {"algebra", e.algebra},
          {"anchor", e.anchor},
          {"params", e.param_names},
          {"defaults", params_json(e.defaults)},
          {"domain", e.domain},
          {"dim_g", e.dim_g},
          {"dim_h", e.dim_h},
          {"dim_m", e.dim_m},
          {"status", status_name(e.status(e.defaults))},
          {"samples", samples},
          {"excluded", excluded}};
}

int cmd_catalog(const RunConfig& c, std::ostream& out) {
  json entries = json::array(), helpers = json::array();
  if (!c.entry.empty()) {
    entries.push_back(entry_json(find_entry(c.entry)));
  } else {
    for (const auto& e : list_entries()) {
      (e.status(e.defaults) == Status::helper ? helpers : entries).push_back(entry_json(e));
    }
  }
  emit(c, {{"command", "catalog"}, {"count", entries.size()}, {"entries", entries}, {"helpers", helpers}}, out);
  return 0;
}

Constants load_constants(const RunConfig& c) {
  return Constants::load(c.constants.empty() ? Constants::default_path() : c.constants);
}

bool killing_supported(const ReductivePair& p) { return p.alg()->kind() != AlgebraKind::generic; }

struct Expectation {
  std::string property;
  std::string expected;
  std::string actual;
  bool ok;
};

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.entry.empty()) throw UsageError("verify needs --entry");
  const CatalogEntry& entry = find_entry(c.entry);
  const Params given = parse_params(c.params);
  const ReductivePair pair = instantiate(entry, given, false);
  const Status status = entry.status(pair.params);
  const ReductiveReport red = check_reductive_pair(pair.h, pair.m);
  CheckConfig cfg;
  cfg.samples = c.samples.value_or(200);
  cfg.tol = c.tol;
  cfg.radius = c.radius.value_or(1.0);
  cfg.seed = c.seed;
  const SectionModel model(pair);

  std::vector<PropertyReport> reports;
  std::vector<Expectation> expect;
  auto judge = [&](const PropertyReport& r, const std::string& want) {
    const std::string got = verdict_name(r.verdict);
    bool ok = want == got;
    if (want == "not_pass") ok = r.verdict != Verdict::pass;
    expect.push_back({r.property, want, got, ok});
  };

  const bool reductive = red.all();
  const bool global = status != Status::not_global && reductive;
  json hook = json::array();
  std::vector<std::string> not_global_routes;
  if (global) {
    const bool bruck = status == Status::global_bruck || status == Status::helper;
    const bool bol = bruck || status == Status::global_bol_scheerer;
    reports.push_back(check_loop_axioms(model, cfg));
    judge(reports.back(), "pass");
    reports.push_back(check_left_A(model, cfg));
    judge(reports.back(), "pass");
    reports.push_back(check_bol(model, cfg));
    judge(reports.back(), bol ? "pass" : "fail");
    CheckConfig alt = cfg;
    alt.samples = std::min(cfg.samples, 100);
    alt.tol = std::min(cfg.tol, 1e-8);
    reports.push_back(check_strong_left_alternative(model, alt));
    judge(reports.back(), "pass");
  } else {
    const Constants k = load_constants(c);
    const auto witnesses = transversal_witnesses(pair, k);
    reports.push_back(check_loop_axioms(model, cfg, witnesses));
    std::vector<std::string> confirmed_by;
    if (!reductive) confirmed_by.push_back("not_reductive");
    if (reports.back().verdict == Verdict::fail) confirmed_by.push_back("loop_axioms");
    std::vector<std::string> sources;
    for (const auto& w : witnesses) {
      if (std::find(sources.begin(), sources.end(), w.source) == sources.end()) sources.push_back(w.source);
    }
    for (const auto& id : sources) {
      for (const auto& e : run_suite(k, id)) {
        hook.push_back({{"id", e.id}, {"verdict", e.confirmed ? "confirmed" : "refuted"}, {"residual", e.residual}});
        if (e.confirmed) confirmed_by.push_back(e.id);
      }
    }
    const bool confirmed = !confirmed_by.empty();
    expect.push_back({"not_global", "confirmed", confirmed ? "confirmed" : "unconfirmed", confirmed});
    not_global_routes = confirmed_by;
  }
  reports.push_back(check_bruck_tangent(pair));
  if (global) judge(reports.back(), status == Status::global_bruck || status == Status::helper ? "pass" : "fail");
  if (killing_supported(pair)) {
    reports.push_back(check_killing_orthogonal(pair));
    if (entry.id == "C1") judge(reports.back(), std::abs(pair.params.at("a")) <= 1e-12 ? "pass" : "fail");
  }

  bool ok = true;
  json ex = json::array();
  for (const auto& e : expect) {
    ok = ok && e.ok;
    ex.push_back({{"property", e.property}, {"expected", e.expected}, {"actual", e.actual}, {"ok", e.ok}});
  }
  json rs = json::array();
  for (const auto& r : reports) rs.push_back(r.to_json());
  json body = {{"command", "verify"},
               {"config", config_json(c, cfg.samples, cfg.radius)},
               {"entry", entry.id},
               {"params", params_json(pair.params)},
               {"status", status_name(status)},
               {"reductive",
                {{"direct_sum", red.direct_sum},
                 {"h_subalgebra", red.h_subalgebra},
                 {"bracket_condition", red.bracket_condition},
                 {"generates", red.generates}}},
               {"reports", rs},
               {"expectations", ex},
               {"suite_hook", hook},
               {"ok", ok}};
  if (!global) body["not_global_confirmed_by"] = not_global_routes;
  emit(c, body, out);
  return ok ? 0 : 1;
}

int cmd_suite(const RunConfig& c, std::ostream& out) {
  const Constants k = load_constants(c);
  const auto evidence = run_suite(k, c.only);
  bool ok = true;
  json arr = json::array();
  for (const auto& e : evidence) {
    ok = ok && e.confirmed;
    arr.push_back(e.to_json());
  }
  emit(c, {{"command", "suite"}, {"count", arr.size()}, {"all_confirmed", ok}, {"evidence", arr}}, out);
  return ok ? 0 : 1;
}

Eigen::VectorXd ball_sample(Rng& rng, int dim, double radius) {
  Eigen::VectorXd v(dim);
  const double side = radius / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-side, side);
  return v;
}

int cmd_expcheck(const RunConfig& c, std::ostream& out) {
  const int samples = c.samples.value_or(1000);
  const double radius = c.radius.value_or(2.0);
  bool ok = true;
  json closed = json::array(), semi = json::array(), warnings = json::array();
  const std::pair<const char*, ModelPtr> simple[] = {
      {"sl2(R)", sl2r_model()}, {"sl2(C)", sl2c_model()}, {"su2", su2_model()}};
  std::uint64_t salt = 0;
  for (const auto& [name, model] : simple) {
    ++salt;
    double worst = 0;
    int errors = 0;
    for (int i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(splitmix64(c.seed + salt), static_cast<std::uint64_t>(i));
      const AlgebraVector x(model->algebra(), ball_sample(rng, model->algebra()->dim(), radius));
      try {
        const Eigen::Matrix2cd a = exp_closed(x).value;
        const Eigen::MatrixXcd b = exp_series(sl2_matrix(x));
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
      } catch (const RangeError& e) {
        ++errors;
        if (warnings.size() < 10) warnings.push_back(std::string(name) + ": " + e.what());
      }
    }
    const bool pass = worst <= 1e-10 && errors == 0;
    ok = ok && pass;
    closed.push_back({{"algebra", name}, {"samples", samples}, {"max_deviation", worst}, {"range_errors", errors},
                      {"tol", 1e-10}, {"pass", pass}});
  }
  const std::pair<const char*, ModelPtr> semis[] = {{"sl2(R)xR^3", alpha_model()}, {"su2xR^3", gamma_model()}};
  for (const auto& [name, model] : semis) {
    ++salt;
    double worst = 0;
    int errors = 0;
    for (int i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(splitmix64(c.seed + salt), static_cast<std::uint64_t>(i));
      const AlgebraVector x(model->algebra(), ball_sample(rng, model->algebra()->dim(), radius));
      try {
        const GroupElement g = exp_semidirect(*model, x);
        const FactorAlg f = model->components(x.c)[0];
        const Eigen::Matrix2cd y = f.y, z = f.z;
        worst = std::max(worst, (g.f[0].x - rk4_translation(y, z)).cwiseAbs().maxCoeff());
      } catch (const RangeError& e) {
        ++errors;
        if (warnings.size() < 10) warnings.push_back(std::string(name) + ": " + e.what());
      }
    }
    const bool pass = worst <= 1e-8 && errors == 0;
    ok = ok && pass;
    semi.push_back({{"algebra", name}, {"samples", samples}, {"max_deviation", worst}, {"range_errors", errors},
                    {"tol", 1e-8}, {"pass", pass}});
  }
  emit(c,
       {{"command", "expcheck"},
        {"config", config_json(c, samples, radius)},
        {"closed_vs_series", closed},
        {"semidirect_vs_rk4", semi},
        {"warnings", warnings},
        {"ok", ok}},
       out);
  return ok ? 0 : 1;
}

void apply_config_file(const std::string& path, RunConfig& c, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
  if (j.contains("entry") && unset("--entry")) c.entry = j["entry"].get<std::string>();
  if (j.contains("param") && unset("--param")) {
    if (j["param"].is_object()) {
      for (auto& [k, v] : j["param"].items()) c.params.push_back(k + "=" + v.dump());
    } else if (j["param"].is_array()) {
      for (auto& v : j["param"]) c.params.push_back(v.get<std::string>());
    } else {
      c.params.push_back(j["param"].get<std::string>());
    }
  }
  if (j.contains("samples") && unset("--samples")) c.samples = j["samples"].get<int>();
  if (j.contains("seed") && unset("--seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol") && unset("--tol")) c.tol = j["tol"].get<double>();
  if (j.contains("radius") && unset("--radius")) c.radius = j["radius"].get<double>();
  if (j.contains("out") && unset("--out")) c.out = j["out"].get<std::string>();
  if (j.contains("only") && unset("--only")) c.only = j["only"].get<std::string>();
  if (j.contains("no_timestamp") && unset("--no-timestamp")) c.no_timestamp = j["no_timestamp"].get<bool>();
  if (j.contains("constants") && unset("--constants")) c.constants = j["constants"].get<std::string>();
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of reductive loop sections"};
  app.require_subcommand(1);
  RunConfig c;
  std::string config_path;
  int samples = 0;
  double radius = 0;
  app.add_option("--entry", c.entry, "catalog entry id");
  app.add_option("--param", c.params, "parameter assignments name=value[,name=value...]");
  app.add_option("--samples", samples, "samples per check")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "run seed");
  app.add_option("--tol", c.tol, "property tolerance")->check(CLI::PositiveNumber);
  app.add_option("--radius", radius, "coefficient radius of sampled algebra vectors")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "write the JSON report to this path");
  app.add_option("--only", c.only, "run a single suite reproduction");
  app.add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp field");
  app.add_option("--constants", c.constants, "constants file for the suite");
  app.add_option("--config", config_path, "JSON file mirroring the flags");
  for (const char* name : {"catalog", "verify", "suite", "expcheck"}) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  try {
    if (app.get_option("--samples")->count()) c.samples = samples;
    if (app.get_option("--radius")->count()) c.radius = radius;
    if (!config_path.empty()) apply_config_file(config_path, c, app);
    if (c.samples && *c.samples < 1) throw UsageError("samples must be at least 1");
    if (!(c.tol > 0)) throw UsageError("tol must be positive");
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "catalog") return cmd_catalog(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "suite") return cmd_suite(c, out);
    return cmd_expcheck(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ChecksumError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace loopforge
