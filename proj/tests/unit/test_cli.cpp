#include <doctest.h>

#include "ergocycle/cli.hpp"

#include <cstdlib>
#include <sstream>

using namespace ergocycle;
using namespace ergocycle::cli;

namespace {

int run_args(std::vector<const char*> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "ergocycle");
  std::ostringstream o, e;
  const int code = run(static_cast<int>(args.size()), args.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

}  // namespace

TEST_CASE("convergents CSV") {
  const std::string csv = convergents_csv("sqrt2m1", 4);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "r,b_r,k_r,m_r,err,det_identity");
  std::vector<std::string> rows;
  while (std::getline(is, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].rfind("3,2,5,12,", 0) == 0);
  CHECK(rows[3].find(",true") != std::string::npos);
}

TEST_CASE("equiv-decide output") {
  CHECK(equiv_decide("equiv0", R"({"eta":{"p":"5","q":"3"}})") == R"({"answer":"yes","witness":{"m":3}})");
  CHECK(equiv_decide("equiv0", R"({"eta":{"p":"1/2"}})") == R"({"answer":"no"})");
  CHECK(equiv_decide("bern-w", R"({"c1":[0],"c1p":[1],"n":2,"alphabet":2})") == R"({"answer":"yes"})");
  CHECK(equiv_decide("rot-phase", R"({"l1":{"p":"-1","q":"1"},"l2":{"q":"1"},"n":1})") ==
        R"({"answer":"yes","witness":{"a":"1"}})");
  CHECK_THROWS_AS(equiv_decide("nope", "{}"), ConfigError);
  CHECK_THROWS_AS(equiv_decide("equiv0", "{not json"), ConfigError);
  std::string out, err;
  CHECK(run_args({"equiv-decide", "--case", "equiv0", "--input", R"({"eta":{"p":"5","q":"3"}})"}, out, err) == 0);
  CHECK(out == "{\"answer\":\"yes\",\"witness\":{\"m\":3}}\n");
}

TEST_CASE("config parsing reports field paths") {
  CHECK_THROWS_WITH_AS(parse_ergodicity_config(""), doctest::Contains("empty config"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_ergodicity_config("n: 2\n"), doctest::Contains("system"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_ergodicity_config("system: {type: torus}\n"), doctest::Contains("system.type"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_ergodicity_config("system: {type: circle}\nN: abc\n"), doctest::Contains("N:"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_ergodicity_config("system: {type: circle}\nbogus: 1\n"), doctest::Contains("bogus"),
                       ConfigError);
  const auto cfg = parse_ergodicity_config(
      "system:\n  type: bernoulli\n  alphabet: 3\n  weights: [1/2, 1/4, 1/4]\n  c1: [0, 2]\nn: 3\nN: 500\nseed: 4\n");
  CHECK(cfg.system_type == "bernoulli");
  CHECK(cfg.alphabet == 3);
  CHECK(cfg.c1 == std::vector<int>{0, 2});
  CHECK(cfg.n == 3);
  CHECK(cfg.iterations == 500);
  CHECK(cfg.seed == 4);
}

TEST_CASE("ergodicity run is deterministic and honours ERGOCYCLE_SEED") {
  auto cfg = parse_ergodicity_config("system: {type: circle, theta: sqrt2m1}\nn: 2\nN: 2000\nsamples: 3\nseed: 7\n");
  const auto a = ergodicity_run(cfg);
  const auto b = ergodicity_run(cfg);
  CHECK(a.json == b.json);
  CHECK(a.trace_csv == b.trace_csv);
  CHECK(a.trace_csv.rfind("N,observable,deviation\n", 0) == 0);
  setenv("ERGOCYCLE_SEED", "123", 1);
  const auto c = ergodicity_run(cfg);
  unsetenv("ERGOCYCLE_SEED");
  CHECK(c.json.find("\"seed\": 123") != std::string::npos);
  CHECK(c.json != a.json);
}

TEST_CASE("usage errors exit non-zero") {
  std::string out, err;
  CHECK(run_args({"ergodicity-run"}, out, err) != 0);
  CHECK(run_args({}, out, err) != 0);
  CHECK(run_args({"ergodicity-run", "--config", "/nonexistent/cfg.yaml"}, out, err) == 2);
  CHECK(err.find("config") != std::string::npos);
}

TEST_CASE("l1-demo and trivialize") {
  const std::string atomic = l1_demo("atomic", "3", 0, 1);
  CHECK(atomic.find("\"bound\": \"11/6\"") != std::string::npos);
  const auto tr = trivialize("periodic", 3, 2, 0, 4, 9);
  CHECK(tr.ok);
  CHECK(trivialize("aperiodic", 5, 3, -2, 4, 9).ok);
  CHECK_THROWS_AS(trivialize("aperiodic", 5, 3, 1, 1, 9), ConfigError);
}

TEST_CASE("singular-build summary") {
  const auto res = singular_build("sqrt2m1", 24, "const:1/3", 5, 3);
  CHECK(res.json.find("\"depth\": 24") != std::string::npos);
  CHECK(res.sample_points.size() == 5);
  CHECK(res.levels_csv.rfind("N,cover_bound,tail\n", 0) == 0);
  CHECK(res.json == singular_build("sqrt2m1", 24, "const:1/3", 5, 3).json);
}
