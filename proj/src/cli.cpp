#include "ergocycle/cli.hpp"

#include "ergocycle/clockshift.hpp"
#include "ergocycle/equiv.hpp"
#include "ergocycle/l1gap.hpp"
#include "ergocycle/numtheory.hpp"
#include "ergocycle/singular.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#ifndef ERGOCYCLE_VERSION
#define ERGOCYCLE_VERSION "dev"
#endif

namespace ergocycle::cli {

using nlohmann::json;

namespace {

template <class T>
T scalar_field(const YAML::Node& node, const std::string& path) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path, "expected a " + std::string(std::is_same_v<T, std::string> ? "string" : "number") +
                                " value");
  }
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) return v.convert_to<long>();
  return v.str();
}

cplx phase_of(const std::string& text, const std::string& path) {
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  const Rational frac = r - Rational(floor_of(r));
  const double t = 2 * std::numbers::pi * frac.convert_to<double>();
  return {std::cos(t), std::sin(t)};
}

QTheta qtheta_from_json(const json& j, const std::string& path) {
  if (j.is_null()) return QTheta();
  auto part = [&](const char* key) -> Rational {
    if (!j.contains(key)) return 0;
    const json& v = j.at(key);
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const std::exception& e) {
      throw ConfigError(path + "." + key, e.what());
    }
    throw ConfigError(path + "." + key, "expected an integer or a rational string");
  };
  if (!j.is_object()) throw ConfigError(path, "expected an object {p, q}");
  return QTheta(part("p"), part("q"));
}

int int_field(const json& in, const char* key, int fallback) {
  if (!in.contains(key)) return fallback;
  if (!in.at(key).is_number_integer()) throw ConfigError(key, "expected an integer");
  return in.at(key).get<int>();
}

std::set<int> set_field(const json& in, const char* key) {
  if (!in.contains(key) || !in.at(key).is_array()) throw ConfigError(key, "expected an array of symbols");
  std::set<int> out;
  for (const auto& v : in.at(key)) {
    if (!v.is_number_integer()) throw ConfigError(key, "symbols must be integers");
    out.insert(v.get<int>());
  }
  return out;
}

Mat fiber_matrix(const std::string& token, int n, const std::string& spec) {
  const auto pair = clockshift::make_clock_pair(n);
  if (token == "u") return pair.u;
  if (token == "v") return pair.v;
  if (token.size() == 3 && token[0] == 'E') {
    const int i = token[1] - '1', j = token[2] - '1';
    if (i >= 0 && i < n && j >= 0 && j < n) {
      Mat m = Mat::Zero(n, n);
      m(i, j) = 1.0;
      return m;
    }
  }
  throw ConfigError("observables", "bad fiber matrix in '" + spec + "'");
}

}  // namespace

std::uint64_t effective_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("ERGOCYCLE_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("ERGOCYCLE_SEED", "not an unsigned integer");
    }
  }
  return fallback;
}

ErgodicityConfig parse_ergodicity_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<config>", std::string("YAML parse error: ") + e.what());
  }
  if (!root || root.IsNull() || !root.IsMap() || root.size() == 0) throw ConfigError("<config>", "empty config");
  static const std::set<std::string> known{"system", "n", "phases", "N", "samples", "seed", "tol",
                                           "degenerate", "expect", "observables", "threads"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) throw ConfigError(key, "unknown field");
  }
  ErgodicityConfig cfg;
  const YAML::Node sys = root["system"];
  if (!sys || !sys.IsMap()) throw ConfigError("system", "required mapping");
  if (!sys["type"]) throw ConfigError("system.type", "required (circle | bernoulli)");
  cfg.system_type = scalar_field<std::string>(sys["type"], "system.type");
  if (cfg.system_type == "circle") {
    if (sys["theta"]) cfg.theta = scalar_field<std::string>(sys["theta"], "system.theta");
  } else if (cfg.system_type == "bernoulli") {
    if (sys["alphabet"]) cfg.alphabet = scalar_field<int>(sys["alphabet"], "system.alphabet");
    if (sys["weights"]) {
      if (!sys["weights"].IsSequence()) throw ConfigError("system.weights", "expected a list");
      for (const auto& w : sys["weights"]) cfg.weights.push_back(scalar_field<std::string>(w, "system.weights"));
    }
    if (sys["c1"]) {
      if (!sys["c1"].IsSequence()) throw ConfigError("system.c1", "expected a list");
      cfg.c1.clear();
      for (const auto& c : sys["c1"]) cfg.c1.push_back(scalar_field<int>(c, "system.c1"));
    }
  } else {
    throw ConfigError("system.type", "must be circle or bernoulli, got '" + cfg.system_type + "'");
  }
  if (root["n"]) cfg.n = scalar_field<int>(root["n"], "n");
  if (cfg.n < 1 || cfg.n > 64) throw ConfigError("n", "must lie in 1..64");
  if (const auto ph = root["phases"]) {
    if (!ph.IsMap()) throw ConfigError("phases", "expected {lambda1, lambda2}");
    if (ph["lambda1"]) cfg.phase1 = scalar_field<std::string>(ph["lambda1"], "phases.lambda1");
    if (ph["lambda2"]) cfg.phase2 = scalar_field<std::string>(ph["lambda2"], "phases.lambda2");
  }
  if (root["N"]) cfg.iterations = scalar_field<long>(root["N"], "N");
  if (cfg.iterations < 1) throw ConfigError("N", "must be >= 1");
  if (root["samples"]) cfg.samples = scalar_field<std::size_t>(root["samples"], "samples");
  if (cfg.samples < 1) throw ConfigError("samples", "must be >= 1");
  if (root["seed"]) cfg.seed = scalar_field<std::uint64_t>(root["seed"], "seed");
  if (root["tol"]) cfg.tol = scalar_field<double>(root["tol"], "tol");
  if (root["degenerate"]) cfg.degenerate = scalar_field<bool>(root["degenerate"], "degenerate");
  if (root["threads"]) cfg.threads = scalar_field<unsigned>(root["threads"], "threads");
  if (root["expect"]) cfg.expect = scalar_field<std::string>(root["expect"], "expect");
  if (cfg.expect != "ergodic" && cfg.expect != "non-ergodic") {
    throw ConfigError("expect", "must be ergodic or non-ergodic");
  }
  if (const auto obs = root["observables"]) {
    if (!obs.IsSequence() || obs.size() == 0) throw ConfigError("observables", "expected a non-empty list");
    cfg.observables.clear();
    for (const auto& o : obs) cfg.observables.push_back(scalar_field<std::string>(o, "observables"));
  }
  return cfg;
}

cocycle::Cocycle make_cocycle(const ErgodicityConfig& cfg) {
  dynsys::System sys = [&]() -> dynsys::System {
    if (cfg.system_type == "circle") {
      try {
        return dynsys::CircleSystem{Theta::parse(cfg.theta)};
      } catch (const Error& e) {
        throw ConfigError("system.theta", e.what());
      }
    }
    std::set<int> c1(cfg.c1.begin(), cfg.c1.end());
    try {
      if (cfg.weights.empty()) return dynsys::BernoulliSystem::fair(cfg.alphabet, c1);
      std::vector<Rational> w;
      for (const auto& s : cfg.weights) w.push_back(parse_rational(s));
      if (static_cast<int>(w.size()) != cfg.alphabet) throw InvalidArgument("need one weight per symbol");
      return dynsys::BernoulliSystem(w, c1);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("system", e.what());
    }
  }();
  if (cfg.degenerate) return cocycle::Cocycle::identity(std::move(sys), cfg.n);
  return cocycle::Cocycle::make(std::move(sys), cfg.n, phase_of(cfg.phase1, "phases.lambda1"),
                                phase_of(cfg.phase2, "phases.lambda2"));
}

dynsys::Observable make_observable(const dynsys::System& sys, int n, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("observables", "expected <scalar>:<matrix>, got '" + spec + "'");
  const std::string scalar = spec.substr(0, colon);
  const Mat m = fiber_matrix(spec.substr(colon + 1), n, spec);
  const Mat zero = Mat::Zero(n, n);
  if (scalar != "one" && scalar != "chiC" && scalar != "chiD") {
    throw ConfigError("observables", "scalar part must be one, chiC or chiD in '" + spec + "'");
  }
  const Mat on_c = scalar == "chiD" ? zero : m;
  const Mat on_d = scalar == "chiC" ? zero : m;
  if (auto* b = std::get_if<dynsys::BernoulliSystem>(&sys)) {
    return dynsys::MatCylinderFunction::indicator(b->alphabet_size(), 0, b->c1(), on_c, on_d);
  }
  const Theta& theta = std::get<dynsys::CircleSystem>(sys).theta;
  return dynsys::MatStepFunction::indicator(theta, QTheta(), QTheta::theta(), on_c, on_d);
}

std::string convergents_csv(const std::string& theta_spec, std::size_t count) {
  const Theta theta = Theta::parse(theta_spec);
  const auto cs = numtheory::convergents(theta, count);
  std::ostringstream os;
  os << "r,b_r,k_r,m_r,err,det_identity\n";
  for (std::size_t r = 0; r < cs.size(); ++r) {
    const auto& c = cs[r];
    const BigInt expected = r % 2 == 1 ? BigInt(1) : BigInt(-1);
    char err[32];
    std::snprintf(err, sizeof err, "%.6e", numtheory::approximation_error(theta, c));
    os << c.r << ',' << c.b << ',' << c.k << ',' << c.m << ',' << err << ','
       << (numtheory::determinant(cs, r) == expected ? "true" : "false") << '\n';
  }
  return os.str();
}

ErgodicityOutput ergodicity_run(const ErgodicityConfig& cfg_in) {
  ErgodicityConfig cfg = cfg_in;
  cfg.seed = effective_seed(cfg.seed);
  const auto co = make_cocycle(cfg);
  std::vector<std::pair<std::string, dynsys::Observable>> fs;
  for (const auto& spec : cfg.observables) fs.emplace_back(spec, make_observable(co.system, cfg.n, spec));
  const auto samples = cocycle::sample_points(co.system, cfg.samples, cfg.seed);
  cocycle::BirkhoffOptions opts;
  opts.tol = cfg.tol;
  opts.threads = cfg.threads;
  const auto reports = cocycle::birkhoff_suite(co, fs, cfg.iterations, samples, opts);

  ErgodicityOutput out;
  json sys;
  sys["type"] = cfg.system_type;
  if (cfg.system_type == "circle") {
    sys["theta"] = cfg.theta;
  } else {
    sys["alphabet"] = cfg.alphabet;
    sys["weights"] = cfg.weights;
    sys["c1"] = cfg.c1;
  }
  json obs = json::array();
  bool all_ergodic = true, any_detected = false;
  std::ostringstream csv;
  csv << "N,observable,deviation\n";
  for (const auto& r : reports) {
    obs.push_back({{"name", r.observable},
                   {"deviation", r.deviation},
                   {"tol", r.tol},
                   {"tau", complex_json(r.tau)},
                   {"ergodic_consistent", r.ergodic_consistent}});
    all_ergodic = all_ergodic && r.ergodic_consistent;
    any_detected = any_detected || !r.ergodic_consistent;
    for (const auto& [n_it, dev] : r.trace) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10e", dev);
      csv << n_it << ',' << r.observable << ',' << buf << '\n';
    }
  }
  out.pass = cfg.expect == "ergodic" ? all_ergodic : any_detected;
  json j{{"system", sys},
         {"n", cfg.n},
         {"N", cfg.iterations},
         {"samples", cfg.samples},
         {"seed", cfg.seed},
         {"phases", {{"lambda1", cfg.phase1}, {"lambda2", cfg.phase2}}},
         {"degenerate", cfg.degenerate},
         {"expect", cfg.expect},
         {"observables", obs},
         {"verdict", out.pass ? "pass" : "fail"},
         {"version", ERGOCYCLE_VERSION}};
  out.json = j.dump(2);
  out.trace_csv = csv.str();
  return out;
}

SingularOutput singular_build(const std::string& theta_spec, std::size_t depth, const std::string& weights,
                              std::size_t samples, std::uint64_t seed) {
  using namespace singular;
  seed = effective_seed(seed);
  CantorChart chart(Theta::parse(theta_spec), depth);
  ProductWeights w = ProductWeights::parse(weights, depth);
  NuMeasure nu(chart, w);
  SingularOutput out;
  json m = json::array(), t = json::array(), levels = json::array();
  for (std::size_t i = 1; i <= chart.depth(); ++i) {
    m.push_back(bigint_json(chart.m(i)));
    t.push_back(chart.t_double(i));
  }
  std::ostringstream csv;
  csv << "N,cover_bound,tail\n";
  for (std::size_t n = 1; n < chart.depth(); ++n) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu,%.10e,%.10e\n", n, cover_bound(chart, n), chart.tail_double(n));
    csv << buf;
    levels.push_back({{"N", n},
                      {"cover_bound", cover_bound(chart, n)},
                      {"tail", chart.tail_double(n)},
                      {"disjoint", level_disjoint_certificate(chart, n)}});
  }
  out.levels_csv = csv.str();
  const HpFloat mass_err = abs(gamma_mass(nu.k_max()) - 1);
  json j{{"theta", chart.theta().name()},
         {"depth", chart.depth()},
         {"weights", weights},
         {"m", m},
         {"t", t},
         {"k_max", nu.k_max()},
         {"series_tail_bound", nu.tail_bound()},
         {"gamma_mass_error", mass_err.convert_to<double>()},
         {"levels", levels},
         {"samples", samples},
         {"seed", seed},
         {"version", ERGOCYCLE_VERSION}};
  if (samples > 0) {
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      out.sample_points.push_back(format_point(chart.theta(), sample_nu(nu, rng).point));
    }
  }
  out.json = j.dump(2);
  return out;
}

std::string equiv_decide(const std::string& which, const std::string& input_json) {
  json in;
  try {
    in = json::parse(input_json);
  } catch (const json::exception& e) {
    throw ConfigError("input", std::string("JSON parse error: ") + e.what());
  }
  if (!in.is_object()) throw ConfigError("input", "expected a JSON object");
  auto phase = [&](const char* key) { return equiv::PhaseExp(qtheta_from_json(in.value(key, json()), key)); };
  equiv::Verdict v;
  if (which == "equiv0") {
    if (!in.contains("eta")) throw ConfigError("eta", "required");
    v = equiv::decide_equiv0(phase("eta"));
  } else if (which == "bern-phase") {
    v = equiv::decide_bernoulli_phases(phase("l1"), phase("l2"), phase("l1p"), phase("l2p"), int_field(in, "n", 2));
  } else if (which == "bern-w") {
    v = equiv::decide_bernoulli_w(set_field(in, "c1"), set_field(in, "c1p"), int_field(in, "n", 2),
                                  int_field(in, "alphabet", 2));
  } else if (which == "rot-phase") {
    const bool alg = in.contains("theta_algebraic") && in.at("theta_algebraic").get<bool>();
    v = equiv::decide_rotation_phases(phase("l1"), phase("l2"), phase("l1p"), phase("l2p"), int_field(in, "n", 2),
                                      alg);
  } else {
    throw ConfigError("case", "must be equiv0, bern-phase, bern-w or rot-phase");
  }
  json j{{"answer", v.yes ? "yes" : "no"}};
  if (v.m) j["witness"] = {{"m", bigint_json(*v.m)}};
  if (v.a) j["witness"] = {{"a", to_string(*v.a)}};
  return j.dump();
}

std::string l1_demo(const std::string& mode, const std::string& param, std::size_t instances, std::uint64_t seed) {
  seed = effective_seed(seed);
  if (mode == "atomic") {
    long k = 0;
    try {
      k = std::stol(param);
    } catch (const std::exception&) {
      throw ConfigError("param", "K must be an integer");
    }
    const auto rep = l1gap::atomic_obstruction(k);
    json forced = json::array();
    for (const auto& f : rep.forced) forced.push_back(to_string(f));
    json j{{"mode", "atomic"},
           {"K", k},
           {"bound", to_string(rep.bound)},
           {"bound_double", rep.bound_double},
           {"forced_norms", forced},
           {"achieved", to_string(rep.achieved)},
           {"target_matched", rep.target_matched}};
    return j.dump(2);
  }
  if (mode != "interval") throw ConfigError("mode", "must be interval or atomic");
  Rational eps;
  try {
    eps = parse_rational(param);
  } catch (const std::exception& e) {
    throw ConfigError("param", e.what());
  }
  const auto co = cocycle::Cocycle::make(dynsys::CircleSystem{Theta::sqrt2_minus_1()}, 2);
  const auto demo = l1gap::interval_demo(co, eps, instances, seed);
  json j{{"mode", "interval"},
         {"eps", to_string(eps)},
         {"bound", demo.bound},
         {"instances", demo.instances},
         {"applicable", demo.applicable},
         {"min_l1", demo.min_l1},
         {"holds", demo.all_hold},
         {"seed", seed}};
  return j.dump(2);
}

TrivializeOutput trivialize(const std::string& mode, int k, int n, long lo, std::size_t instances,
                            std::uint64_t seed) {
  seed = effective_seed(seed);
  if (k < 1) throw ConfigError("k", "must be >= 1");
  if (n < 1) throw ConfigError("n", "must be >= 1");
  Rng rng(seed);
  TrivializeOutput out;
  out.ok = true;
  double worst = 0.0;
  json phases = json::array();
  for (std::size_t i = 0; i < instances; ++i) {
    std::vector<Mat> w;
    for (int j = 0; j < k; ++j) w.push_back(random_unitary(n, rng));
    if (mode == "periodic") {
      const auto tr = cocycle::trivialize_periodic(w);
      worst = std::max(worst, tr.max_error);
      out.ok = out.ok && tr.ok;
      if (i == 0) phases = tr.lambda_phase;
    } else if (mode == "aperiodic") {
      if (lo > 0 || lo + k - 1 < 0) throw ConfigError("lo", "window lo..lo+k-1 must contain 0");
      const auto tr = cocycle::trivialize_aperiodic(w, lo);
      worst = std::max(worst, tr.max_error);
      out.ok = out.ok && tr.ok;
    } else {
      throw ConfigError("mode", "must be periodic or aperiodic");
    }
  }
  json j{{"mode", mode}, {"k", k}, {"n", n}, {"instances", instances}, {"seed", seed},
         {"max_error", worst}, {"ok", out.ok}};
  if (mode == "periodic") j["first_lambda_phase"] = phases;
  else j["lo"] = lo;
  out.json = j.dump(2);
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("output", "cannot write " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ergocycle: cocycles over rotations and shifts, singular measures, equivalence deciders"};
  app.set_version_flag("--version", ERGOCYCLE_VERSION);
  app.require_subcommand(1);

  std::string theta_spec = "sqrt2m1";
  std::size_t count = 10;
  auto* conv = app.add_subcommand("convergents", "CSV of convergents: r,b_r,k_r,m_r,err,det_identity");
  conv->add_option("--theta", theta_spec, "theta spec: sqrt2m1, golden, cf:<b1>,<b2>,..[p1,p2,..] (digits after the leading 0), num:<decimal>")
      ->capture_default_str();
  conv->add_option("--count", count, "number of convergents")->capture_default_str();

  std::string config_path, json_out, csv_out;
  auto* erg = app.add_subcommand("ergodicity-run",
                                 "Birkhoff ergodicity test from a YAML config; CSV trace columns N,observable,deviation");
  erg->add_option("--config", config_path, "YAML config (system.type, system.theta | system.alphabet, "
                                           "system.weights, system.c1, n, phases.lambda1/2, N, samples, seed, tol, "
                                           "degenerate, expect, observables)")
      ->required();
  erg->add_option("--json", json_out, "write the JSON report here instead of stdout");
  erg->add_option("--trace", csv_out, "write the convergence trace CSV here");

  std::size_t depth = singular::CantorChart::kDefaultDepth, n_samples = 0;
  std::string weights = "const:1/3", dump_path;
  std::uint64_t seed = 1;
  auto* sing = app.add_subcommand("singular-build", "Cantor chart, nu summary; CSV columns N,cover_bound,tail");
  sing->add_option("--theta", theta_spec)->capture_default_str();
  sing->add_option("--depth", depth)->capture_default_str();
  sing->add_option("--weights", weights, "a-list or const:<a>")->capture_default_str();
  sing->add_option("--samples", n_samples, "number of nu samples to dump")->capture_default_str();
  sing->add_option("--seed", seed)->capture_default_str();
  sing->add_option("--csv", csv_out, "write the level CSV here");
  sing->add_option("--dump", dump_path, "write sample points here, one per line");

  std::string which, input;
  auto* eq = app.add_subcommand("equiv-decide", "exact unitary-equivalence deciders");
  eq->add_option("--case", which, "equiv0 | bern-phase | bern-w | rot-phase")->required();
  eq->add_option("--input", input, "JSON input, phases as {\"p\":..,\"q\":..}")->required();

  std::string mode, param;
  std::size_t instances = 20;
  auto* l1 = app.add_subcommand("l1-demo", "l1 norm obstruction demos");
  l1->add_option("--mode", mode, "interval | atomic")->required();
  l1->add_option("--param", param, "eps for interval, K for atomic")->required();
  l1->add_option("--instances", instances)->capture_default_str();
  l1->add_option("--seed", seed)->capture_default_str();

  int k = 4, n = 2;
  long lo = -2;
  auto* triv = app.add_subcommand("trivialize", "trivialize random cocycle windows");
  triv->add_option("--mode", mode, "periodic | aperiodic")->required();
  triv->add_option("--k", k)->capture_default_str();
  triv->add_option("--n", n)->capture_default_str();
  triv->add_option("--lo", lo, "aperiodic window start")->capture_default_str();
  triv->add_option("--instances", instances)->capture_default_str();
  triv->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](const std::string& text, const std::string& path) {
    if (path.empty()) out << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    else write_file(path, text);
  };

  try {
    Timer timer;
    int code = 0;
    if (*conv) {
      out << convergents_csv(theta_spec, count);
    } else if (*erg) {
      const auto cfg = parse_ergodicity_config(read_file(config_path));
      const auto res = ergodicity_run(cfg);
      emit(res.json, json_out);
      if (!csv_out.empty()) write_file(csv_out, res.trace_csv);
      code = res.pass ? 0 : 1;
    } else if (*sing) {
      const auto res = singular_build(theta_spec, depth, weights, n_samples, seed);
      emit(res.json, {});
      if (!csv_out.empty()) write_file(csv_out, res.levels_csv);
      if (!dump_path.empty()) {
        std::string text;
        for (const auto& p : res.sample_points) text += p + "\n";
        write_file(dump_path, text);
      }
    } else if (*eq) {
      out << equiv_decide(which, input) << '\n';
    } else if (*l1) {
      out << l1_demo(mode, param, instances, seed) << '\n';
    } else if (*triv) {
      const auto res = trivialize(mode, k, n, lo, instances, seed);
      out << res.json << '\n';
      code = res.ok ? 0 : 1;
    }
    err << "elapsed " << timer.seconds() << " s\n";
    return code;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const UndecidableInModel& e) {
    out << json{{"answer", "undecidable"}, {"error", {{"type", "UndecidableInModel"}, {"message", e.what()}}}}.dump()
        << '\n';
    return 3;
  } catch (const Error& e) {
    std::string type = "Error";
    if (dynamic_cast<const InvalidArgument*>(&e)) type = "InvalidArgument";
    else if (dynamic_cast<const DomainError*>(&e)) type = "DomainError";
    else if (dynamic_cast<const PrecisionError*>(&e)) type = "PrecisionError";
    else if (dynamic_cast<const BudgetExceeded*>(&e)) type = "BudgetExceeded";
    out << json{{"error", {{"type", type}, {"message", e.what()}}}}.dump() << '\n';
    return 3;
  }
}

}  // namespace ergocycle::cli
