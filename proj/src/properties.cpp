#include "loopforge/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace loopforge {

namespace {

constexpr int kMaxStoredWitnesses = 8;
constexpr double kAlgebraTol = 1e-10;
constexpr double kExactTol = 1e-12;

using SampleFn = std::function<double(const SectionModel&, Rng&, json&)>;

PropertyReport make_report(const std::string& property, const ReductivePair& pair, double tol, double radius) {
  PropertyReport r;
  r.property = property;
  r.entry = pair.entry;
  r.params = pair.params;
  r.tol = tol;
  r.radius = radius;
  return r;
}

void store(PropertyReport& r, json w) {
  if (static_cast<int>(r.witnesses.size()) < kMaxStoredWitnesses) r.witnesses.push_back(std::move(w));
}

void record_failure(PropertyReport& r, const std::string& layer, json inputs, double residual) {
  r.max_residual = std::max(r.max_residual, residual);
  store(r, {{"kind", "failure"}, {"layer", layer}, {"inputs", std::move(inputs)}, {"residual", residual}});
  r.verdict = Verdict::fail;
}

void finalize(PropertyReport& r) {
  if (r.verdict == Verdict::fail) return;
  r.verdict = r.inconclusive > 0 ? Verdict::inconclusive : Verdict::pass;
}

SectionModel tightened(const SectionModel& model) {
  SolverConfig c = model.config();
  c.tol = 1e-14;
  c.accept = 1e-10;
  c.max_iter *= 2;
  c.multistarts *= 2;
  return SectionModel(model.pair(), c);
}

// Runs `fn` on independent per-sample streams. Residuals between tol and 10 tol are re-solved with a
// tighter solver; if they stay there the sample is inconclusive. Solver failures are inconclusive.
void run_samples(PropertyReport& r, const SectionModel& model, const CheckConfig& cfg, const std::string& layer,
                 std::uint64_t salt, const SampleFn& fn) {
  std::optional<SectionModel> tight;
  for (int i = 0; i < cfg.samples; ++i) {
    const std::uint64_t seed = splitmix64(cfg.seed ^ salt);
    json inputs = json::object();
    double res = 0;
    bool ok = true;
    try {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
      res = fn(model, rng, inputs);
      if (res > cfg.tol && res <= 10 * cfg.tol) {
        if (!tight) tight.emplace(tightened(model));
        Rng again = Rng::stream(seed, static_cast<std::uint64_t>(i));
        inputs = json::object();
        res = fn(*tight, again, inputs);
      }
    } catch (const NoConvergence& e) {
      ok = false;
      ++r.inconclusive;
      store(r, {{"kind", "inconclusive"}, {"layer", layer}, {"inputs", inputs}, {"reason", e.what()}});
    }
    ++r.samples;
    if (!ok) continue;
    if (!std::isfinite(res)) {
      ++r.inconclusive;
      store(r, {{"kind", "inconclusive"}, {"layer", layer}, {"inputs", inputs}, {"reason", "non-finite residual"}});
      continue;
    }
    if (res > 10 * cfg.tol) {
      record_failure(r, layer, inputs, res);
      continue;
    }
    r.max_residual = std::max(r.max_residual, res);
    if (res > cfg.tol) {
      ++r.inconclusive;
      store(r, {{"kind", "inconclusive"}, {"layer", layer}, {"inputs", inputs}, {"residual", res}});
    }
  }
}

double dist(const SectionPoint& a, const SectionPoint& b) { return group_distance(a.g, b.g); }

SectionPoint sample_point(const SectionModel& model, Rng& rng, double radius, json& inputs, const char* name) {
  const Eigen::VectorXd l = model.sample_lambda(rng, radius);
  inputs[name] = vector_json(l);
  return model.point(l);
}

double bol_residual(const SectionModel& model, const Eigen::VectorXd& la, const Eigen::VectorXd& lb) {
  const GroupElement a = model.exp_m(la), b = model.exp_m(lb);
  const Decomposition d = model.decompose(multiply(multiply(a, b), a));
  return identity_distance(d.h);
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

json PropertyReport::to_json() const {
  json w = json::array();
  for (const auto& x : witnesses) w.push_back(x);
  return {{"property", property},         {"entry", entry},       {"params", params_json(params)},
          {"samples", samples},           {"inconclusive", inconclusive}, {"max_residual", number_json(max_residual)},
          {"tol", tol},                   {"radius", radius},     {"verdict", verdict_name(verdict)},
          {"witnesses", w}};
}

PropertyReport check_loop_axioms(const SectionModel& model, const CheckConfig& cfg,
                                 const std::vector<TransversalWitness>& witnesses) {
  PropertyReport r = make_report("loop_axioms", model.pair(), cfg.tol, cfg.radius);
  const double radius = cfg.radius;
  run_samples(r, model, cfg, "axioms", 0x6c6f6f70ULL, [radius](const SectionModel& m, Rng& rng, json& in) {
    const SectionPoint x = sample_point(m, rng, radius, in, "x");
    const SectionPoint y = sample_point(m, rng, radius, in, "y");
    const SectionPoint e = m.identity_point();
    double res = std::max(dist(m.multiply(e, y), y), dist(m.multiply(x, e), x));
    const SectionPoint xy = m.multiply(x, y);
    res = std::max(res, dist(m.left_divide(x, xy), y));
    const SectionPoint rd = m.right_divide(y, xy);
    const double r_rd = dist(rd, x);
    // A second solution of z * y = x * y means the section is not sharply transitive.
    if (r_rd > 1e-6) in["second_right_quotient"] = vector_json(rd.lambda);
    res = std::max(res, r_rd);
    // Sharp transitivity: the cosets of two sampled elements are joined by a unique section element.
    const GroupElement g1 = m.sample_element(rng, radius), g2 = m.sample_element(rng, radius);
    in["g1"] = element_json(g1);
    in["g2"] = element_json(g2);
    const Decomposition d1 = m.decompose(g1), d2 = m.decompose(g2);
    const SectionPoint a{d1.lambda, d1.m}, b{d2.lambda, d2.m};
    const SectionPoint t = m.right_divide(a, b);
    res = std::max(res, group_distance(m.decompose(multiply(t.g, a.g)).m, b.g));
    return res;
  });
  for (const auto& w : witnesses) {
    const GroupElement e1 = model.exp_m(w.x1), e2 = model.exp_m(w.x2);
    const GroupElement q = multiply(inverse(multiply(e2, w.p)), multiply(e1, w.p));
    const double gap = group_distance(e1, e2);
    ++r.samples;
    json in = {{"source", w.source}, {"x1", vector_json(w.x1)}, {"x2", vector_json(w.x2)}, {"p", element_json(w.p)}};
    if (in_subgroup(model.pair().H, q, 1e-8) && gap > 1e-6) {
      record_failure(r, "transversal", in, gap);
    } else {
      ++r.inconclusive;
      store(r, {{"kind", "inconclusive"}, {"layer", "transversal"}, {"inputs", in}, {"reason", "witness rejected"}});
    }
  }
  finalize(r);
  return r;
}

PropertyReport check_left_A(const SectionModel& model, const CheckConfig& cfg) {
  const ReductivePair& pair = model.pair();
  PropertyReport r = make_report("left_A", pair, cfg.tol, cfg.radius);
  for (int j = 0; j < pair.h.size(); ++j)
    for (int i = 0; i < pair.m.size(); ++i) {
      const double res = span_residual(pair.m.basis, bracket(pair.h.vec(j), pair.m.vec(i)).c);
      if (res > kAlgebraTol) record_failure(r, "algebra", {{"h", j}, {"m", i}}, res);
    }
  const double radius = cfg.radius;
  run_samples(r, model, cfg, "loop", 0x6c656674ULL, [radius](const SectionModel& m, Rng& rng, json& in) {
    const SectionPoint x = sample_point(m, rng, radius, in, "x");
    const SectionPoint y = sample_point(m, rng, radius, in, "y");
    const SectionPoint u = sample_point(m, rng, radius, in, "u");
    const SectionPoint v = sample_point(m, rng, radius, in, "v");
    const SectionPoint xy = m.multiply(x, y);
    auto lambda_xy = [&](const SectionPoint& z) { return m.left_divide(xy, m.multiply(x, m.multiply(y, z))); };
    double res = dist(lambda_xy(m.multiply(u, v)), m.multiply(lambda_xy(u), lambda_xy(v)));
    const SectionPoint e = m.identity_point();
    const SectionPoint ey = m.multiply(e, y);
    res = std::max(res, dist(m.left_divide(ey, m.multiply(e, m.multiply(y, u))), u));
    return res;
  });
  finalize(r);
  return r;
}

PropertyReport check_bol(const SectionModel& model, const CheckConfig& cfg) {
  PropertyReport r = make_report("bol", model.pair(), cfg.tol, cfg.radius);
  const double radius = cfg.radius, tol = cfg.tol;
  run_samples(r, model, cfg, "bol", 0x626f6cULL, [radius, tol](const SectionModel& m, Rng& rng, json& in) {
    const Eigen::VectorXd la = m.sample_lambda(rng, radius), lb = m.sample_lambda(rng, radius);
    in["a"] = vector_json(la);
    in["b"] = vector_json(lb);
    const double res = bol_residual(m, la, lb);
    if (res > 10 * tol) {
      // Shrink the pair along the ray while it still fails clearly.
      double lo = 0.0, hi = 1.0, at_hi = res;
      while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        double rm = 0;
        try {
          rm = bol_residual(m, mid * la, mid * lb);
        } catch (const NoConvergence&) {
          break;
        }
        if (rm > 10 * tol) {
          hi = mid;
          at_hi = rm;
        } else {
          lo = mid;
        }
      }
      in["minimized"] = {{"scale", hi}, {"a", vector_json(hi * la)}, {"b", vector_json(hi * lb)}, {"residual", at_hi}};
    }
    return res;
  });
  finalize(r);
  return r;
}

PropertyReport check_strong_left_alternative(const SectionModel& model, const CheckConfig& cfg) {
  PropertyReport r = make_report("strong_left_alternative", model.pair(), cfg.tol, cfg.radius);
  const double radius = cfg.radius;
  run_samples(r, model, cfg, "alternative", 0x616c74ULL, [radius](const SectionModel& m, Rng& rng, json& in) {
    const Eigen::VectorXd x = m.sample_lambda(rng, radius);
    const double s = rng.uniform(-1, 1), t = rng.uniform(-1, 1);
    in["x"] = vector_json(x);
    in["s"] = s;
    in["t"] = t;
    const SectionPoint p = m.multiply(m.point(s * x), m.point(t * x));
    return group_distance(p.g, m.exp_m((s + t) * x));
  });
  finalize(r);
  return r;
}

SplitVector split(const ReductivePair& pair, const AlgebraVector& v) {
  const int dm = pair.m.size(), dh = pair.h.size();
  Eigen::MatrixXd basis(v.c.size(), dm + dh);
  basis << pair.m.basis, pair.h.basis;
  const Eigen::VectorXd c = basis.colPivHouseholderQr().solve(v.c);
  return {{v.alg, pair.m.basis * c.head(dm)}, {v.alg, pair.h.basis * c.tail(dh)}};
}

std::pair<AlgebraVector, AlgebraVector> lie_triple_ops(const ReductivePair& pair, const AlgebraVector& x,
                                                       const AlgebraVector& y, const AlgebraVector& z) {
  const SplitVector xy = split(pair, bracket(x, y));
  return {xy.m, bracket(xy.h, z)};
}

PropertyReport check_bruck_tangent(const ReductivePair& pair) {
  PropertyReport r = make_report("bruck_tangent", pair, kExactTol, 0.0);
  for (int i = 0; i < pair.m.size(); ++i)
    for (int j = i + 1; j < pair.m.size(); ++j) {
      const double res = split(pair, bracket(pair.m.vec(i), pair.m.vec(j))).m.norm();
      ++r.samples;
      if (res > kExactTol)
        record_failure(r, "tangent", {{"i", i}, {"j", j}}, res);
      else
        r.max_residual = std::max(r.max_residual, res);
    }
  finalize(r);
  return r;
}

PropertyReport check_killing_orthogonal(const Subspace& a, const Subspace& b, const std::string& label) {
  PropertyReport r;
  r.property = "killing_orthogonal";
  r.entry = label;
  r.tol = kExactTol;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const double res = std::abs(killing_real(a.vec(i), b.vec(j)));
      ++r.samples;
      if (res > kExactTol)
        record_failure(r, "killing", {{"i", i}, {"j", j}}, res);
      else
        r.max_residual = std::max(r.max_residual, res);
    }
  finalize(r);
  return r;
}

PropertyReport check_killing_orthogonal(const ReductivePair& pair) {
  PropertyReport r = check_killing_orthogonal(pair.m, pair.h, pair.entry);
  r.params = pair.params;
  return r;
}

}  // namespace loopforge
