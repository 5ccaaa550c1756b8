#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cuspcobord/cli.hpp"
#include "cuspcobord/json_io.hpp"

using namespace cuspcobord;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(CUSPCOBORD_SOURCE_DIR) + "/corpus/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cuspcobord_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("invariant and cobordant") {
  const auto r = run({"invariant", corpus("disk_plus_plus.json")});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "invariant=1"));
  CHECK(contains(r.out, "group=Z/2"));

  CHECK(run({"cobordant", corpus("disk_plus_plus.json"), corpus("disk_plus_plus.json")}).code == cli::kOk);
  CHECK(run({"cobordant", corpus("disk_plus_plus.json"), corpus("empty.json")}).code == cli::kNegative);
  CHECK(run({"cobordant", corpus("disk_plus_plus.json"), corpus("d3_generator.json")}).code == cli::kInputError);

  const auto j = run({"--json", "invariant", corpus("disk_plus_plus.json")});
  const auto parsed = Json::parse(j.out);
  CHECK(parsed["invariant"] == 1);
}

TEST_CASE("extendable") {
  const auto r = run({"extendable", corpus("disk_plus_plus.json")});
  CHECK(r.code == cli::kNegative);
  CHECK(contains(r.out, "condition=fails"));
  CHECK(run({"extendable", corpus("d3_extendable.json")}).code == cli::kOk);
}

TEST_CASE("input errors exit with code 2") {
  const auto missing = run({"invariant", corpus("does_not_exist.json")});
  CHECK(missing.code == cli::kInputError);
  CHECK(missing.err.rfind("error: ", 0) == 0);
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({"trace", "swallowtail", "--t", "0"}).code == cli::kInputError);
  CHECK(run({"trace", "swallowtail", "--tol", "-1"}).code == cli::kInputError);
  CHECK(run({"trace", "perturbed-fold", "--alpha", "0:1:0.7"}).code == cli::kInputError);
  CHECK(run({"pattern", "normalize", corpus("interval_0cusp.json"), "--chi-v", "0"}).code ==
        cli::kInputError);
}

TEST_CASE("help goes to stdout") {
  const auto r = run({"--help"});
  CHECK(r.code == cli::kOk);
  CHECK(contains(r.out, "invariant"));
  CHECK(r.err.empty());
}

TEST_CASE("pattern commands") {
  CHECK(run({"pattern", "validate", corpus("odd_circle_n2.json")}).code == cli::kOk);
  CHECK(run({"pattern", "validate", corpus("bad_circle_n3.json")}).code == cli::kNegative);
  CHECK(run({"pattern", "check", corpus("interval_0cusp.json"), "--sigma", corpus("sigma_pm.json")}).code ==
        cli::kOk);
  CHECK(run({"pattern", "check", corpus("interval_0cusp.json"), "--sigma", corpus("sigma_pp.json")}).code ==
        cli::kNegative);
  const auto obstructed = run({"pattern", "normalize", corpus("all_plus_n3.json")});
  CHECK(obstructed.code == cli::kNegative);
  CHECK(contains(obstructed.out, "obstruction=sign_sum_nonzero"));
}

TEST_CASE("normalize writes a trace that replays") {
  const auto path = scratch("trace.json");
  const auto r = run({"pattern", "normalize", corpus("two_intervals_n3.json"), "--out", path.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(contains(r.out, "normalized=yes"));
  const auto trace = trace_from_json(read_json_file(path.string()));
  CHECK_FALSE(trace.moves.empty());
  const auto replay = run({"pattern", "replay", path.string()});
  CHECK(replay.code == cli::kOk);
  CHECK(contains(replay.out, "replay=ok"));

  auto tampered = read_json_file(path.string());
  tampered["moves"].erase(0);
  std::ofstream(path) << tampered.dump(2);
  CHECK(run({"pattern", "replay", path.string()}).code != cli::kOk);
}

TEST_CASE("create and eliminate write patterns") {
  const auto created = scratch("created.json");
  REQUIRE(run({"pattern", "create", corpus("circle_two_cusps_n3.json"), "--component", "0", "--position", "0",
               "--i", "1", "--out", created.string()})
              .code == cli::kOk);
  const auto p = pattern_from_json(read_json_file(created.string()));
  CHECK(p.total_cusps() == 4);
  CHECK(validate_pattern(p).ok());

  const auto n2 = corpus("two_odd_circles_n2.json");
  CHECK(run({"pattern", "eliminate", n2, "--first", "0:1", "--second", "1:1"}).code == cli::kInputError);
  const auto merged = scratch("merged.json");
  CHECK(run({"pattern", "eliminate", n2, "--first", "0:1", "--second", "1:1", "--assume-removable", "--out",
             merged.string()})
            .code == cli::kOk);
  CHECK(pattern_from_json(read_json_file(merged.string())).total_cusps() == 0);
  CHECK(run({"pattern", "eliminate", n2, "--first", "0:1", "--second", "1:1", "--reconnection", "twist"}).code ==
        cli::kInputError);
}

TEST_CASE("trace output is deterministic") {
  const auto a = scratch("a.svg");
  const auto b = scratch("b.svg");
  const auto manifest = scratch("run.json");
  REQUIRE(run({"trace", "swallowtail", "--t", "1", "--out", a.string(), "--manifest", manifest.string()}).code ==
          cli::kOk);
  REQUIRE(run({"trace", "swallowtail", "--t", "1", "--out", b.string()}).code == cli::kOk);
  const std::string svg = slurp(a);
  CHECK(svg == slurp(b));
  CHECK(contains(svg, "<svg"));
  const auto m = read_json_file(manifest.string());
  CHECK(m.contains("grid"));
  CHECK(m.contains("tolerances"));

  const auto stdout_svg = run({"trace", "swallowtail", "--t", "1"});
  CHECK(stdout_svg.out == svg);

  const auto csv = run({"trace", "fold", "--n", "3", "--i", "1", "--csv"});
  CHECK(csv.code == cli::kOk);
  CHECK(csv.out.rfind("t,z1,z2,residual,class\n", 0) == 0);
}
