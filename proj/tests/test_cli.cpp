#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("gfix_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / (name + ".json");
  std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + GFIX_CLI_PATH + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_cmd(const std::string& sub, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  return run(sub + " --config " + config.string() + " --out " + out.string() + " " + extra);
}

json report(const fs::path& out, const std::string& name) { return json::parse(slurp(out / name)); }

const char* kHalving = R"({
  "space": {"kind": "perimeter", "domain": {"kind": "grid", "lo": 0, "hi": 1, "count": 5}},
  "maps": {"mode": "single", "map": {"kind": "expression", "expr": "x/2"}},
  "condition": {"variant": "SingleOddPower", "k": 1},
  "solver": {"x0": 1}
})";

}  // namespace

TEST_CASE("check-axioms: compliant space, broken table, malformed config") {
  const fs::path good = write_config("perimeter", R"({"space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}}})");
  CHECK(run_cmd("check-axioms", good, scratch() / "ax1") == 0);
  CHECK(report(scratch() / "ax1", "check-axioms.json")["passed"] == true);

  // Every G(x, x, y) is zero: G2 fails.
  std::string zeros = "[";
  for (int i = 0; i < 8; ++i) zeros += i ? ",0" : "0";
  zeros += "]";
  const fs::path broken = write_config("broken", R"({"space": {"kind": "table", "table": {"n": 2, "values": )" + zeros + "}}}");
  CHECK(run_cmd("check-axioms", broken, scratch() / "ax2") == 1);
  const json r = report(scratch() / "ax2", "check-axioms.json");
  CHECK(r["report"]["axioms"][1]["axiom"] == "G2");
  CHECK(r["report"]["axioms"][1]["passed"] == false);
  CHECK(r["report"]["axioms"][1]["witness"].size() == 2);

  const fs::path bad = write_config("malformed", "{ this is not json");
  CHECK(run_cmd("check-axioms", bad, scratch() / "ax3") == 2);
  const fs::path unknown = write_config("unknown", R"({"space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}, "colour": 1}})");
  CHECK(run_cmd("check-axioms", unknown, scratch() / "ax4") == 2);
}

TEST_CASE("verify: constant map, halving map, coefficient family") {
  const fs::path c = write_config("verify_const", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "single", "map": {"kind": "constant", "value": 0.5}},
    "condition": {"variant": "SingleOddPower", "k": 1}})");
  CHECK(run_cmd("verify", c, scratch() / "v1") == 0);
  CHECK(report(scratch() / "v1", "verify.json")["min_lambda"] == 0.0);

  CHECK(run_cmd("verify", write_config("verify_half", kHalving), scratch() / "v2") == 1);
  const json h = report(scratch() / "v2", "verify.json");
  CHECK(h["verdict"] == "violated");
  CHECK(h["min_lambda"] == "inf");
  CHECK(h["exhaustive"]["tuples_tested"] == 125);

  const fs::path fam = write_config("verify_family", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "family", "cycle": [{"kind": "constant", "value": 0.25}]},
    "condition": {"variant": "FamilyCoeff", "coefficients": {"kind": "constant", "value": 0.5}}})");
  CHECK(run_cmd("verify", fam, scratch() / "v3") == 0);
  CHECK(report(scratch() / "v3", "verify.json")["coefficient_series"]["verdict"] == "alpha-series");

  CHECK(run_cmd("verify", c, scratch() / "v4", "--exhaustive") == 2);
}

TEST_CASE("verify rejects a condition that does not match the maps") {
  const fs::path bad = write_config("arity", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "single", "map": {"kind": "constant", "value": 0.5}},
    "condition": {"variant": "Triplet"}})");
  CHECK(run_cmd("verify", bad, scratch() / "v5") == 2);
}

TEST_CASE("solve: halving, oscillating triplet, constant family, reflection squared") {
  CHECK(run_cmd("solve", write_config("solve_half", kHalving), scratch() / "s1") == 0);
  const json h = report(scratch() / "s1", "solve.json");
  CHECK(h["result"]["success"] == true);
  CHECK(h["result"]["u"][0].get<double>() <= 1e-12);
  const std::string csv = slurp(scratch() / "s1" / "trace.csv");
  CHECK(csv.rfind("n,x,d_n,lambda_hat,bound,residual\n0,1,1,nan,2,1\n1,0.5,0.5,0.5,1,0.5\n", 0) == 0);

  const fs::path osc = write_config("solve_osc", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "triplet", "maps": [{"kind": "constant", "value": 0}, {"kind": "constant", "value": 1},
                                          {"kind": "constant", "value": 0}]},
    "solver": {"x0": 0.5}})");
  CHECK(run_cmd("solve", osc, scratch() / "s2") == 1);
  CHECK(report(scratch() / "s2", "solve.json")["result"]["stop"] == "non-contractive");

  const fs::path fam = write_config("solve_family", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "family", "expression": "0.3"},
    "solver": {"x0": 0.9}})");
  CHECK(run_cmd("solve", fam, scratch() / "s3") == 0);
  CHECK(report(scratch() / "s3", "solve.json")["result"]["iterations"].get<int>() <= 3);

  const fs::path refl = write_config("solve_refl", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "single", "map": {"kind": "expression", "expr": "1 - x"}},
    "solver": {"x0": 0.2, "p": 2}})");
  CHECK(run_cmd("solve", refl, scratch() / "s4") == 1);
  CHECK(report(scratch() / "s4", "solve.json")["result"]["iterate_fixed_but_not_map_fixed"] == true);

  const fs::path escape = write_config("solve_escape", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "single", "map": {"kind": "affine", "a": 1, "b": 0.5}},
    "solver": {"x0": 0.75}})");
  CHECK(run_cmd("solve", escape, scratch() / "s5") == 1);
  CHECK(report(scratch() / "s5", "solve.json")["error"] == "orbit-escapes-domain");
}

TEST_CASE("series: accepted, rejected, negative coefficient") {
  auto cfg = [](const std::string& name, const std::string& seq) {
    return write_config(name, R"({"series": {"kind": "alpha-series", "sequence": )" + seq + "}}");
  };
  CHECK(run_cmd("series", cfg("half", R"({"kind": "constant", "value": 0.5})"), scratch() / "r1") == 0);
  CHECK(std::abs(report(scratch() / "r1", "series.json")["certificate"]["lambda"].get<double>() - 0.5) <= 1e-12);
  CHECK(run_cmd("series", cfg("one", R"({"kind": "constant", "value": 1})"), scratch() / "r2") == 1);
  CHECK(run_cmd("series", cfg("isq", R"({"kind": "inverse-square"})"), scratch() / "r3") == 0);
  CHECK(run_cmd("series", cfg("neg", R"({"kind": "values", "values": [0.5, -0.1, 0.2]})"), scratch() / "r4") == 2);

  std::ofstream(scratch() / "coeffs.txt") << "# r_i\n0.5\n0.5\n0.5\n0.5\n0.5\n0.5\n0.5\n0.5\n0.5\n0.5\n";
  CHECK(run_cmd("series", cfg("file", R"({"kind": "values", "file": "coeffs.txt"})"), scratch() / "r5") == 0);
  CHECK(run_cmd("series", cfg("missing", R"({"kind": "values", "file": "nope.txt"})"), scratch() / "r6") == 2);

  const fs::path lim = write_config("limsup", R"({"series": {"kind": "limsup", "sequence": {"kind": "expression", "expr": "0.5 + 0.25/i"}}})");
  CHECK(run_cmd("series", lim, scratch() / "r7") == 0);
  CHECK(report(scratch() / "r7", "series.json")["verdict"] == "holds");
}

TEST_CASE("oracle: constant table agrees, budget overrun is refused") {
  const fs::path c = write_config("oracle_const", R"({
    "space": {"kind": "discrete", "n": 6},
    "maps": {"mode": "single", "map": {"kind": "table", "images": [2, 2, 2, 2, 2, 2]}},
    "condition": {"variant": "SingleOddPower"},
    "solver": {"x0_index": 5}})");
  CHECK(run_cmd("oracle", c, scratch() / "o1") == 0);
  const json r = report(scratch() / "o1", "oracle.json");
  CHECK(r["oracle"]["agreement"] == true);
  CHECK(r["oracle"]["common_fixed_points"] == json::array({2}));

  const fs::path big = write_config("oracle_big", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "grid", "lo": 0, "hi": 1, "count": 300}},
    "maps": {"mode": "single", "map": {"kind": "constant", "value": 0}},
    "condition": {"variant": "SingleOddPower"}})");
  CHECK(run_cmd("oracle", big, scratch() / "o2") == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("") == 2);
  CHECK(run("solve") == 2);
  CHECK(run("frobnicate --config x.json") == 2);
  const fs::path c = write_config("usage", kHalving);
  CHECK(run("solve --config " + c.string() + " --seed notanumber") == 2);
  CHECK(run("solve --config " + c.string() + " --out " + (scratch() / "u1").string(), "GFIX_ABS_TOL=abc") == 2);
  CHECK(run("solve --config " + c.string() + " --out " + (scratch() / "u2").string(), "GFIX_ABS_TOL=-1") == 2);
  CHECK(run("solve --config " + (scratch() / "absent.json").string()) == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("tolerance comes from the environment when set") {
  const fs::path c = write_config("envtol", kHalving);
  CHECK(run("solve --config " + c.string() + " --out " + (scratch() / "e1").string(), "GFIX_ABS_TOL=1e-3") == 0);
  const json r = report(scratch() / "e1", "solve.json");
  CHECK(r["result"]["iterations"].get<int>() < 15);
}

TEST_CASE("seeds are echoed and reports are byte-identical across runs") {
  const fs::path c = write_config("det", R"({
    "space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
    "maps": {"mode": "single", "map": {"kind": "expression", "expr": "x*x/2 + 0.1"}},
    "condition": {"variant": "SingleOddPower", "k": 2},
    "solver": {"x0": 1}})");
  for (const char* sub : {"check-axioms", "verify", "solve"}) {
    run_cmd(sub, c, scratch() / "d1", "--seed 7");
    run_cmd(sub, c, scratch() / "d2", "--seed 7");
    const std::string file = std::string(sub) + ".json";
    CHECK_MESSAGE(slurp(scratch() / "d1" / file) == slurp(scratch() / "d2" / file), sub);
    CHECK(report(scratch() / "d1", file)["seed"] == 7);
  }
  run_cmd("verify", c, scratch() / "d3", "--seed 8");
  CHECK(slurp(scratch() / "d1" / "verify.json") != slurp(scratch() / "d3" / "verify.json"));
}

TEST_CASE("config parsing in process") {
  using namespace gfix::cli;
  const ProblemConfig cfg = parse_config_text(kHalving, ".");
  CHECK(cfg.space.domain.size() == 5);
  REQUIRE(cfg.maps);
  CHECK(cfg.maps->mode == MapsMode::Single);
  REQUIRE(cfg.solver);
  CHECK(cfg.solver->x0 == std::vector<double>{1.0});
  CHECK_THROWS_AS(parse_config_text(R"({"maps": {"mode": "single", "map": {"kind": "constant", "value": 1}}})", "."),
                  gfix::ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"space": {"kind": "perimeter", "domain": {"kind": "interval", "lo": 0, "hi": 1}},
      "maps": {"mode": "single", "map": {"kind": "expression", "expr": "x +* 2"}}})", "."),
                  gfix::ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"samples": -3})", "."), gfix::ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"series": {"kind": "alpha-series", "sequence": {"kind": "constant"}}})", "."),
                  gfix::ConfigError);
}

TEST_CASE("in-process commands return the same codes") {
  using namespace gfix::cli;
  std::ostringstream log, err;
  CommandOptions opts;
  opts.config = write_config("inproc", kHalving);
  opts.out = scratch() / "ip";
  CHECK(cmd_solve(opts, log, err) == kExitOk);
  CHECK(cmd_verify(opts, log, err) == kExitNegative);
  CHECK(cmd_series(opts, log, err) == kExitUsage);
  CHECK(err.str().find("no 'series' section") != std::string::npos);
}
