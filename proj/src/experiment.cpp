//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "projsa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "projsa/diagnostics.hpp"
#include "projsa/odeflow.hpp"
#include "projsa/problems.hpp"
#include "projsa/selftest.hpp"
#include "projsa/trace_io.hpp"
#include "projsa/version.hpp"

namespace projsa {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string &path, const std::string &what) {
  throw ConfigError(path + ": " + what);
}

const json *find(const json &obj, const char *key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void require_object(const json &j, const std::string &path) {
  if (!j.is_object()) bad(path, "must be an object");
}

double get_real(const json &j, const std::string &path) {
  if (!j.is_number()) bad(path, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "must be finite");
  return v;
}

double real_field(const json &obj, const char *key, const std::string &path,
                  std::optional<double> fallback = std::nullopt) {
  const json *j = find(obj, key);
  if (!j) {
    if (fallback) return *fallback;
    bad(path + "." + key, "is required");
  }
  return get_real(*j, path + "." + key);
}

std::int64_t int_field(const json &obj, const char *key, const std::string &path,
                       std::optional<std::int64_t> fallback = std::nullopt) {
  const json *j = find(obj, key);
  if (!j) {
    if (fallback) return *fallback;
    bad(path + "." + key, "is required");
  }
  if (!j->is_number_integer()) bad(path + "." + key, "must be an integer");
  return j->get<std::int64_t>();
}

std::string string_field(const json &obj, const char *key, const std::string &path,
                         std::optional<std::string> fallback = std::nullopt) {
  const json *j = find(obj, key);
  if (!j) {
    if (fallback) return *fallback;
    bad(path + "." + key, "is required");
  }
  if (!j->is_string()) bad(path + "." + key, "must be a string");
  return j->get<std::string>();
}

Vector real_list(const json &j, const std::string &path) {
  if (!j.is_array() || j.empty()) bad(path, "must be a non-empty array of numbers");
  Vector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_real(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// A number (broadcast) or an array of length dim.
Vector vec_field(const json &obj, const char *key, std::size_t dim,
                 const std::string &path, std::optional<double> fallback = {}) {
  const std::string p = path + "." + key;
  const json *j = find(obj, key);
  if (!j) {
    if (fallback) return Vector(dim, *fallback);
    bad(p, "is required");
  }
  if (j->is_number()) return Vector(dim, get_real(*j, p));
  Vector v = real_list(*j, p);
  if (v.size() != dim) {
    bad(p, "has " + std::to_string(v.size()) + " entries, dimension is " +
               std::to_string(dim));
  }
  return v;
}

std::size_t infer_dim(const json &block, const std::string &path) {
  if (const json *d = find(block, "dim")) {
    if (!d->is_number_integer() || d->get<std::int64_t>() < 1) {
      bad(path + ".dim", "must be a positive integer");
    }
    return static_cast<std::size_t>(d->get<std::int64_t>());
  }
  for (const char *key : {"lower", "upper", "target", "a_diag", "direction"}) {
    if (const json *j = find(block, key); j && j->is_array()) return j->size();
  }
  return 1;
}

// Rethrows library validation errors as field-qualified config errors.
template <class F>
auto qualify(const std::string &path, F &&f) {
  try {
    return f();
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &err) {
    const std::string msg = err.what();
    // Messages that already name their field keep it.
    if (msg.rfind(path, 0) == 0) throw ConfigError(msg);
    bad(path, msg);
  }
}

Penalty build_penalty(const json &block, const std::string &path) {
  require_object(block, path);
  const std::string kind = string_field(block, "kind", path);
  return qualify(path, [&] {
    if (kind == "zero") return Penalty::zero();
    const double lambda = real_field(block, "lambda", path);
    if (kind == "l1") return Penalty::l1(lambda);
    if (kind == "mcp") return Penalty::mcp(lambda, real_field(block, "beta", path));
    if (kind == "scad") return Penalty::scad(lambda, real_field(block, "a", path));
    bad(path + ".kind", "unknown penalty '" + kind + "' (zero, l1, mcp, scad)");
  });
}

StepSchedule build_schedule(const json &block) {
  const std::string path = "schedule";
  require_object(block, path);
  const std::string kind = string_field(block, "kind", path, "polynomial");
  return qualify(path, [&] {
    if (kind == "polynomial") {
      return StepSchedule(Polynomial{real_field(block, "gamma0", path, 1.0),
                                     real_field(block, "alpha", path)});
    }
    if (kind == "table") {
      const json *v = find(block, "values");
      if (!v) bad(path + ".values", "is required");
      return StepSchedule(Table{real_list(*v, path + ".values")});
    }
    if (kind == "constant_then_polynomial") {
      return StepSchedule(ConstantThenPolynomial{
          real_field(block, "gamma0", path), int_field(block, "n0", path),
          real_field(block, "alpha", path)});
    }
    bad(path + ".kind", "unknown schedule '" + kind +
                            "' (polynomial, table, constant_then_polynomial)");
  });
}

NoiseModel build_noise(const json *block, std::size_t dim) {
  if (!block) return NoiseModel::none();
  const std::string path = "noise";
  require_object(*block, path);
  ZeroMeanPart e = NoNoise{};
  BiasPart r = NoBias{};
  if (const json *eb = find(*block, "e")) {
    const std::string p = path + ".e";
    require_object(*eb, p);
    const std::string kind = string_field(*eb, "kind", p);
    if (kind == "none") e = NoNoise{};
    else if (kind == "gaussian") e = GaussianIID{real_field(*eb, "sigma", p)};
    else if (kind == "uniform") e = UniformIID{real_field(*eb, "halfwidth", p)};
    else if (kind == "scaled_gaussian") e = ScaledGaussian{real_field(*eb, "sigma_max", p), {}};
    else bad(p + ".kind", "unknown noise '" + kind +
                              "' (none, gaussian, uniform, scaled_gaussian)");
  }
  if (const json *rb = find(*block, "r")) {
    const std::string p = path + ".r";
    require_object(*rb, p);
    const std::string kind = string_field(*rb, "kind", p);
    if (kind == "none") r = NoBias{};
    else if (kind == "power") r = PowerBias{vec_field(*rb, "c", dim, p), real_field(*rb, "beta", p)};
    else if (kind == "vanishing_state") r = VanishingStateBias{vec_field(*rb, "c", dim, p), real_field(*rb, "beta", p)};
    else bad(p + ".kind", "unknown bias '" + kind + "' (none, power, vanishing_state)");
  }
  return qualify(path, [&] { return NoiseModel(std::move(e), std::move(r)); });
}

RecordPolicy build_record(const json *block) {
  if (!block) return RecordFull{};
  const std::string path = "record";
  require_object(*block, path);
  const std::string policy = string_field(*block, "policy", path, "full");
  if (policy == "full") return RecordFull{};
  if (policy == "thin") {
    RecordThin t{int_field(*block, "stride", path), int_field(*block, "head", path, 0),
                 int_field(*block, "tail", path, 0)};
    if (t.stride < 1) bad(path + ".stride", "must be >= 1");
    if (t.head < 0) bad(path + ".head", "must be >= 0");
    if (t.tail < 0) bad(path + ".tail", "must be >= 0");
    return t;
  }
  if (policy == "window") {
    RecordWindow w{int_field(*block, "size", path)};
    if (w.size < 1) bad(path + ".size", "must be >= 1");
    return w;
  }
  bad(path + ".policy", "unknown policy '" + policy + "' (full, thin, window)");
}

std::vector<std::uint64_t> build_seeds(const json *j) {
  const std::string path = "seeds";
  if (!j) return {0};
  std::vector<std::uint64_t> out;
  if (j->is_number_integer()) {
    const auto count = j->get<std::int64_t>();
    if (count < 1) bad(path, "count must be >= 1");
    for (std::int64_t i = 0; i < count; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
  }
  if (!j->is_array() || j->empty()) bad(path, "must be a count or a non-empty list");
  for (std::size_t i = 0; i < j->size(); ++i) {
    const json &s = (*j)[i];
    if (!s.is_number_integer() || s.get<std::int64_t>() < 0) {
      bad(path + "[" + std::to_string(i) + "]", "must be a non-negative integer");
    }
    out.push_back(s.get<std::uint64_t>());
  }
  return out;
}

DiagnosticsSpec build_diagnostics(const json &block) {
  const std::string path = "diagnostics";
  require_object(block, path);
  DiagnosticsSpec d;
  if (const json *n = find(block, "N")) {
    if (!n->is_array() || n->empty()) bad(path + ".N", "must be a non-empty list");
    for (std::size_t i = 0; i < n->size(); ++i) {
      const json &v = (*n)[i];
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        bad(path + ".N[" + std::to_string(i) + "]", "must be an integer >= 1");
      }
      d.N.push_back(v.get<std::int64_t>());
    }
  } else {
    bad(path + ".N", "is required");
  }
  d.T = real_field(block, "T", path, 1.0);
  if (!(d.T > 0.0)) bad(path + ".T", "must be positive");
  if (const json *dl = find(block, "delta")) {
    d.delta = real_list(*dl, path + ".delta");
    for (double v : d.delta) {
      if (!(v > 0.0)) bad(path + ".delta", "entries must be positive");
    }
  } else {
    d.delta = {0.01};
  }
  if (find(block, "h_ode")) {
    d.h_ode = real_field(block, "h_ode", path);
    if (!(*d.h_ode > 0.0) || *d.h_ode > d.T) bad(path + ".h_ode", "must lie in (0, T]");
  }
  return d;
}

void ensure_dir(const std::string &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create output directory '" + dir + "': " + ec.message());
}

void write_json(const std::string &path, const json &doc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  os << doc.dump(2) << '\n';
  os.close();
  if (!os) fail(ErrorCode::Io, "failed writing '" + path + "'");
}

std::string join_path(const std::string &dir, const std::string &file) {
  return (std::filesystem::path(dir) / file).string();
}

json report_json(const DiagnosticReport &rep) {
  json rows = json::array();
  for (const DiagnosticRow &r : rep.rows) {
    rows.push_back({{"N", r.N},
                    {"delta", r.delta},
                    {"partial_sum_stat", r.partial_sum},
                    {"equicontinuity_modulus_X", r.modulus_x},
                    {"equicontinuity_modulus_Z", r.modulus_z},
                    {"lipschitz_estimate_Z", r.lipschitz_z},
                    {"lipschitz_ceiling", rep.lipschitz_ceiling},
                    {"integral_residual", r.integral_residual}});
  }
  return {{"T", rep.T},
          {"lipschitz_ceiling", rep.lipschitz_ceiling},
          {"rows", rows},
          {"violations", rep.violations}};
}

json header_json(const ExperimentConfig &cfg) {
  return {{"name", cfg.name},
          {"config_hash", config_hash(cfg.source)},
          {"library_version", PROJSA_VERSION_STRING},
          {"config", cfg.source}};
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; the first
// exception is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F &&fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

// A diagnostics window the run does not cover is a configuration problem.
int failure_exit(const std::exception &e) {
  const auto *err = dynamic_cast<const Error *>(&e);
  return err && err->code() == ErrorCode::OutOfRange ? kExitInvalid : kExitRuntime;
}

std::string trace_name(const ExperimentConfig &cfg, std::uint64_t seed) {
  return cfg.name + "_seed" + std::to_string(seed) + ".csv";
}

}  // namespace

Problem build_problem(const json &block, const std::string &path) {
  require_object(block, path);
  const std::string id = string_field(block, "id", path);
  const std::size_t dim = infer_dim(block, path);
  const bool two_d = id == "rotation";
  const std::size_t d = two_d ? 2 : dim;
  if (two_d && dim != 2) bad(path + ".dim", "rotation is defined in dimension 2");
  const Vector lower = vec_field(block, "lower", d, path, 0.0);
  const Vector upper = vec_field(block, "upper", d, path, 1.0);
  const Box box = qualify(path + ".lower", [&] { return Box(lower, upper); });
  return qualify(path, [&]() -> Problem {
    if (id == "quadratic") {
      return make_quadratic(box, vec_field(block, "target", d, path),
                            vec_field(block, "a_diag", d, path, 1.0));
    }
    if (id == "rotation") {
      return make_rotation(box, vec_field(block, "target", d, path),
                           real_field(block, "omega", path));
    }
    if (id == "composite") {
      const json *pen = find(block, "penalty");
      const Penalty p = pen ? build_penalty(*pen, path + ".penalty") : Penalty::zero();
      return make_composite(box, vec_field(block, "target", d, path),
                            vec_field(block, "a_diag", d, path, 1.0), p);
    }
    if (id == "pinned_drift") {
      return make_pinned_drift(box, vec_field(block, "direction", d, path));
    }
    bad(path + ".id", "unknown problem '" + id +
                          "' (quadratic, rotation, composite, pinned_drift)");
  });
}

ExperimentConfig parse_config(const json &doc) {
  if (!doc.is_object()) bad("config", "must be an object");
  ExperimentConfig cfg;
  cfg.source = doc;
  cfg.name = string_field(doc, "name", "config", "experiment");
  if (cfg.name.empty() ||
      cfg.name.find_first_of("/\\") != std::string::npos) {
    bad("name", "must be a non-empty file-name-safe string");
  }
  const json *pb = find(doc, "problem");
  if (!pb) bad("problem", "is required");
  cfg.problem = *pb;
  const Problem problem = build_problem(*pb);
  const std::size_t dim = problem.dim();

  const std::string alg = string_field(doc, "algorithm", "config", "rm");
  cfg.algorithm = qualify("algorithm", [&] { return algorithm_from_string(alg); });
  if (cfg.algorithm != Algorithm::RM && !problem.objective()) {
    bad("algorithm", "prox modes need a problem with an objective");
  }

  const json *sb = find(doc, "schedule");
  if (!sb) bad("schedule", "is required");
  cfg.schedule = build_schedule(*sb);
  cfg.noise = build_noise(find(doc, "noise"), dim);

  if (find(doc, "x0")) {
    cfg.x0 = vec_field(doc, "x0", dim, "config");
    if (!problem.box().contains(*cfg.x0)) bad("x0", "must lie in the box");
  }
  cfg.n_steps = int_field(doc, "n_steps", "config");
  if (cfg.n_steps < 1) bad("n_steps", "must be >= 1");
  const std::int64_t limit = cfg.schedule.horizon_limit();
  if (limit >= 0 && cfg.n_steps > limit) {
    bad("n_steps", "exceeds the step table length " + std::to_string(limit));
  }
  cfg.seeds = build_seeds(find(doc, "seeds"));
  cfg.record = build_record(find(doc, "record"));
  if (const json *db = find(doc, "diagnostics")) cfg.diagnostics = build_diagnostics(*db);
  return cfg;
}

ExperimentConfig load_config(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("config: cannot read '" + path + "'");
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error &err) {
    throw ConfigError(std::string("config: not valid JSON: ") + err.what());
  }
  return parse_config(doc);
}

std::string config_hash(const json &doc) {
  const std::string s = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Trajectory run_replica(const ExperimentConfig &cfg, const Problem &problem,
                       std::size_t replica, std::uint64_t seed_offset,
                       const StepObserver &observer) {
  RunOptions ro;
  ro.algorithm = cfg.algorithm;
  ro.n_steps = cfg.n_steps;
  ro.seed = cfg.seeds.at(replica) + seed_offset;
  ro.stream = 0;
  if (cfg.x0) ro.x0 = *cfg.x0;
  ro.policy = cfg.record;
  ro.observer = observer;
  return run(problem, cfg.schedule, cfg.noise, ro);
}

double lipschitz_ceiling(const Problem &problem, const NoiseModel &noise) {
  return (problem.drift_bound() + noise.bias_bound()) *
         static_cast<double>(problem.dim());
}

int cmd_run(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
  std::optional<ExperimentConfig> cfg;
  std::optional<Problem> problem;
  try {
    cfg = load_config(opts.config_path);
    problem = build_problem(cfg->problem);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  try {
    ensure_dir(opts.out_dir);
    const std::size_t R = cfg->seeds.size();
    std::vector<json> replicas(R);
    const double ceiling = lipschitz_ceiling(*problem, cfg->noise);
    parallel_for(R, opts.jobs, [&](std::size_t i) {
      const Trajectory traj = run_replica(*cfg, *problem, i, opts.seed_offset);
      const std::string file = trace_name(*cfg, traj.meta.seed);
      write_trace_file(join_path(opts.out_dir, file), traj);
      const RunAggregates &agg = traj.aggregates;
      json rj = {{"replica", i},
                 {"seed", traj.meta.seed},
                 {"stream", traj.meta.stream},
                 {"trace", file},
                 {"steps", agg.steps},
                 {"recorded_steps", traj.size()},
                 {"final_t", agg.final_t},
                 {"final_x", agg.final_x},
                 {"dist_to_stationary", dist_to_stationary(*problem, agg.final_x)},
                 {"stationarity_residual", stationarity_residual(*problem, agg.final_x)},
                 {"projected_fraction",
                  static_cast<double>(agg.projected_steps) / static_cast<double>(agg.steps)},
                 {"max_projection", agg.max_projection}};
      if (cfg->diagnostics) {
        const DiagnosticsSpec &d = *cfg->diagnostics;
        rj["diagnostics"] = report_json(diagnostic_sweep(traj, d.N, d.T, d.delta, ceiling));
        if (d.h_ode) {
          json ode = json::array();
          for (std::int64_t N : d.N) {
            ode.push_back({{"N", N},
                           {"sup_distance", compare_sa_ode(*problem, traj, N, d.T, *d.h_ode)}});
          }
          rj["ode_compare"] = ode;
        }
      }
      replicas[i] = std::move(rj);
    });

    json summary = header_json(*cfg);
    summary["command"] = "run";
    summary["seed_offset"] = opts.seed_offset;
    summary["problem_warnings"] = problem->warnings();
    if (cfg->n_steps >= 10) {
      const AssumptionReport ar = validate_assumptions(cfg->schedule, cfg->noise, cfg->n_steps);
      json checks = json::array();
      for (const auto &c : ar.checks) {
        checks.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}, {"note", c.note}});
      }
      summary["assumptions"] = {{"all_pass", ar.all_pass()}, {"checks", checks},
                                {"warnings", ar.warnings}};
    }
    summary["replicas"] = replicas;
    const std::string path = join_path(opts.out_dir, cfg->name + "_summary.json");
    write_json(path, summary);
    out << "wrote " << R << " trace(s) and " << path << '\n';
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return failure_exit(e);
  }
  return kExitOk;
}

int cmd_diagnose(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
  std::optional<ExperimentConfig> cfg;
  std::optional<Problem> problem;
  try {
    cfg = load_config(opts.config_path);
    problem = build_problem(cfg->problem);
    if (!cfg->diagnostics) bad("diagnostics", "is required by diagnose");
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  DiagnosticReport rep;
  const DiagnosticsSpec &d = *cfg->diagnostics;
  const double ceiling = lipschitz_ceiling(*problem, cfg->noise);
  try {
    const Trajectory traj = read_trace_file(opts.trace_path);
    if (traj.dim() != problem->dim()) {
      bad("trace", "dimension " + std::to_string(traj.dim()) +
                       " does not match the problem's " + std::to_string(problem->dim()));
    }
    rep = diagnostic_sweep(traj, d.N, d.T, d.delta, ceiling);
  } catch (const std::exception &e) {
    // Unreadable, truncated or too-short traces are input errors.
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  try {
    ensure_dir(opts.out_dir);
    json summary = header_json(*cfg);
    summary["command"] = "diagnose";
    summary["trace"] = opts.trace_path;
    summary["diagnostics"] = report_json(rep);
    const std::string stem = std::filesystem::path(opts.trace_path).stem().string();
    const std::string path = join_path(opts.out_dir, stem + "_diagnostics.json");
    write_json(path, summary);
    out << "wrote " << path << '\n';
    for (const auto &v : rep.violations) out << "violation: " << v << '\n';
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_prox_selftest(const CommandOptions &opts, std::ostream &out,
                      std::ostream &err) {
  if (opts.instances < 1) {
    err << "error: instances: must be >= 1\n";
    return kExitInvalid;
  }
  SelftestReport rep;
  try {
    SelftestOptions so;
    so.instances = opts.instances;
    so.seed = opts.seed_offset;
    so.corrupt_lambda_sign = opts.corrupt_lambda_sign;
    rep = run_prox_selftest(so);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  json variants = json::array();
  const SelftestVariant *worst = nullptr;
  for (const SelftestVariant &v : rep.variants) {
    out << v.name << ": " << v.instances << " instances, max error " << v.max_error << '\n';
    if (!worst || v.max_error > worst->max_error) worst = &v;
    const SelftestCase &c = v.worst;
    variants.push_back({{"variant", v.name},
                        {"instances", v.instances},
                        {"max_error", v.max_error},
                        {"worst", {{"lambda", c.lambda}, {"shape", c.shape},
                                   {"gamma", c.gamma}, {"v", c.v},
                                   {"lo", c.boxed ? json(c.lo) : json()},
                                   {"hi", c.boxed ? json(c.hi) : json()},
                                   {"prox", c.prox}, {"oracle", c.oracle}}}});
  }
  if (worst) {
    const SelftestCase &c = worst->worst;
    out << "worst case (" << worst->name << "): lambda=" << c.lambda
        << " shape=" << c.shape << " gamma=" << c.gamma << " v=" << c.v;
    if (c.boxed) out << " box=[" << c.lo << ", " << c.hi << "]";
    out << " prox=" << c.prox << " oracle=" << c.oracle << '\n';
  }
  out << (rep.pass ? "PASS" : "FAIL") << " max error " << rep.max_error << '\n';
  if (!opts.out_dir.empty() && opts.out_dir != ".") {
    try {
      ensure_dir(opts.out_dir);
      write_json(join_path(opts.out_dir, "prox_selftest.json"),
                 {{"library_version", PROJSA_VERSION_STRING},
                  {"seed", opts.seed_offset},
                  {"pass", rep.pass},
                  {"max_error", rep.max_error},
                  {"variants", variants}});
    } catch (const std::exception &e) {
      err << "error: " << e.what() << '\n';
      return kExitRuntime;
    }
  }
  return rep.pass ? kExitOk : kExitSelftestFailed;
}

int cmd_ode_compare(const CommandOptions &opts, std::ostream &out, std::ostream &err) {
  std::optional<ExperimentConfig> cfg;
  std::optional<Problem> problem;
  try {
    cfg = load_config(opts.config_path);
    problem = build_problem(cfg->problem);
    if (!cfg->diagnostics) bad("diagnostics", "is required by ode-compare");
    if (!cfg->diagnostics->h_ode) bad("diagnostics.h_ode", "is required by ode-compare");
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  try {
    ensure_dir(opts.out_dir);
    const DiagnosticsSpec &d = *cfg->diagnostics;
    cfg->record = RecordFull{};
    const std::size_t R = cfg->seeds.size();
    std::vector<json> rows(R);
    parallel_for(R, opts.jobs, [&](std::size_t i) {
      const Trajectory traj = run_replica(*cfg, *problem, i, opts.seed_offset);
      json dist = json::array();
      for (std::int64_t N : d.N) {
        dist.push_back({{"N", N},
                        {"sup_distance", compare_sa_ode(*problem, traj, N, d.T, *d.h_ode)}});
      }
      rows[i] = {{"replica", i}, {"seed", traj.meta.seed}, {"distances", dist}};
    });
    json summary = header_json(*cfg);
    summary["command"] = "ode-compare";
    summary["seed_offset"] = opts.seed_offset;
    summary["T"] = d.T;
    summary["h_ode"] = *d.h_ode;
    summary["replicas"] = rows;
    const std::string path = join_path(opts.out_dir, cfg->name + "_ode_compare.json");
    write_json(path, summary);
    for (const json &r : rows) {
      out << "seed " << r["seed"].get<std::uint64_t>();
      for (const json &e : r["distances"]) {
        out << "  N=" << e["N"].get<std::int64_t>() << ": "
            << format_real(e["sup_distance"].get<double>());
      }
      out << '\n';
    }
    out << "wrote " << path << '\n';
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return failure_exit(e);
  }
  return kExitOk;
}

}  // namespace projsa
