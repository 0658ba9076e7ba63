#pragma once

#include "ergocycle/cocycle.hpp"
#include "ergocycle/errors.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ergocycle::cli {

// Invalid configuration; the message starts with the offending field path.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& path, const std::string& what) : InvalidArgument(path + ": " + what) {}
};

struct ErgodicityConfig {
  std::string system_type = "circle";  // circle | bernoulli
  std::string theta = "sqrt2m1";
  int alphabet = 2;
  std::vector<std::string> weights;    // rationals; empty = fair
  std::vector<int> c1{0};
  int n = 2;
  std::string phase1 = "0";            // lambda_i = exp(2 pi i phase_i)
  std::string phase2 = "0";
  long iterations = 100000;
  std::size_t samples = 8;
  std::uint64_t seed = 1;
  double tol = -1.0;
  bool degenerate = false;
  std::string expect = "ergodic";      // ergodic | non-ergodic
  std::vector<std::string> observables{"one:E11", "chiC:E12", "chiD:u"};
  unsigned threads = 0;
};

/// Parses the YAML config text; throws ConfigError naming the field.
ErgodicityConfig parse_ergodicity_config(const std::string& text);

cocycle::Cocycle make_cocycle(const ErgodicityConfig& cfg);

/// "<scalar>:<matrix>" with scalar one | chiC | chiD and matrix E<i><j>
/// (1-based), u or v.
dynsys::Observable make_observable(const dynsys::System& sys, int n, const std::string& spec);

/// Seed from ERGOCYCLE_SEED when set, else the fallback.
std::uint64_t effective_seed(std::uint64_t fallback);

std::string convergents_csv(const std::string& theta_spec, std::size_t count);

struct ErgodicityOutput {
  std::string json;
  std::string trace_csv;  // N,observable,deviation
  bool pass = false;
};
ErgodicityOutput ergodicity_run(const ErgodicityConfig& cfg);

struct SingularOutput {
  std::string json;
  std::string levels_csv;  // N,cover_bound,tail
  std::vector<std::string> sample_points;
};
SingularOutput singular_build(const std::string& theta_spec, std::size_t depth, const std::string& weights,
                              std::size_t samples, std::uint64_t seed);

/// JSON verdict {answer, witness?}; throws on rejected input.
std::string equiv_decide(const std::string& which, const std::string& input_json);

std::string l1_demo(const std::string& mode, const std::string& param, std::size_t instances, std::uint64_t seed);

struct TrivializeOutput {
  std::string json;
  bool ok = false;
};
TrivializeOutput trivialize(const std::string& mode, int k, int n, long lo, std::size_t instances,
                            std::uint64_t seed);

/// Full command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ergocycle::cli
