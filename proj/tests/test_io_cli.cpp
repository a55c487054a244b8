#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "telescope/cli.hpp"
#include "telescope/error.hpp"
#include "telescope/io.hpp"
#include "telescope/population.hpp"

using namespace telescope;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "telescope");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "telescope_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kWall = R"({"group": {"order": 2, "mult": [[0, 1], [1, 0]], "labels": ["e", "g"]}, "p": ["1/2", "1/2"], "ell": "2"})";
const char* kTorus = R"({"complex": {"ring": "Q", "degrees": [0, 0], "ranks": [1], "differentials": []},
                         "map": {"0": {"rows": 1, "cols": 1, "entries": [["1"]]}}})";
const char* kBroken = R"({"ring": "Q", "degrees": [0, 2], "ranks": [1, 1, 1],
  "differentials": [{"rows": 1, "cols": 1, "entries": [["1"]]}, {"rows": 1, "cols": 1, "entries": [["1"]]}]})";

}  // namespace

TEST_CASE("complexes round trip through json") {
  for (std::size_t i = 0; i < 12; ++i) {
    const SelfMapCase c = population_case(9, i);
    const ChainComplex t = mapping_torus(c.h);
    const json j = io::to_json(t);
    const ChainComplex back = io::complex_from_json(j);
    CHECK(io::to_json(back) == j);
    CHECK(back.differentials == t.differentials);
    CHECK(back.ring == RingTag::Laurent);
  }
}

TEST_CASE("rationals are serialized as strings") {
  CHECK(io::to_json(BigRational(-3, 4)) == "-3/4");
  CHECK(io::rational_from_json(json(5), "x") == BigRational(5));
  CHECK_THROWS_AS(io::rational_from_json(json(0.5), "x"), Error);
  CHECK_THROWS_AS(io::rational_from_json(json("1/0"), "x"), Error);
}

TEST_CASE("malformed inputs raise ParseError with a path") {
  try {
    io::complex_from_json(json::parse(R"({"ranks": [1, "a"]})"));
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.detail()["path"] == "complex.ranks[1]");
  }
  CHECK_THROWS_AS(io::group_from_json(json::parse(R"({"mult": [[0, 1], [0, 0]]})")), Error);
  CHECK_THROWS_AS(io::wall_from_json(json::parse(R"({"p": ["1/2"]})")), Error);
}

TEST_CASE("euler on the wall input") {
  const Run r = cli({"euler", write_temp("wall.json", kWall)});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["chi_equivariant"] == json({"1", "1"}));
  CHECK(j["reduced_nonzero"] == true);
}

TEST_CASE("validate on a broken complex exits 1 with a payload") {
  const Run r = cli({"validate", write_temp("broken.json", kBroken)});
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  CHECK(j["error"] == "NotAComplex");
  CHECK(j["detail"]["degree"] == 2);
}

TEST_CASE("contract-plus on the torus of h = 1") {
  const Run r = cli({"contract-plus", "--depth", "8", write_temp("torus.json", kTorus)});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["verified"] == true);
  CHECK(j["overflow_band"] == json({8, 9}));
  CHECK(j["k"] == "1/2");
}

TEST_CASE("input errors exit 2") {
  CHECK(cli({"homology", "/nonexistent/file.json"}).code == 2);
  CHECK(cli({"homology", write_temp("garbage.json", "{not json")}).code == 2);
  CHECK(cli({"contract-plus", "--depth", "0", write_temp("torus.json", kTorus)}).code == 2);
  CHECK(cli({"contract-plus", "--weight", "abc", write_temp("torus.json", kTorus)}).code == 2);
  CHECK(cli({"contract-plus", "--weight", "-1", write_temp("torus.json", kTorus)}).code == 2);
  CHECK(cli({"novikov", "--side", "z^-1", write_temp("torus.json", kTorus)}).code == 2);  // no inverse
  CHECK(cli({"no-such-command"}).code == 2);
  CHECK(cli({"fixtures", "run", "nope"}).code == 2);
  const Run bad_table = cli({"euler", write_temp("badgroup.json", R"({"group": {"mult": [[0, 1], [0, 0]]}, "p": ["1", "0"]})")});
  CHECK(bad_table.code == 2);
  CHECK(json::parse(bad_table.out)["error"] == "NoInverse");
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string torus = write_temp("torus.json", kTorus);
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"contract-minus", "--depth", "6", torus},
           {"scan-sigma", "--depth", "8,16", "--grid", "1/2,2", torus},
           {"index-window", "--depth", "16,32"},
           {"fixtures", "run", "contraction-population", "--seed", "3"}}) {
    const Run a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("csv output and --out") {
  const std::string torus = write_temp("torus.json", kTorus);
  const Run csv = cli({"scan-sigma", "--format", "csv", "--depth", "8", "--grid", "0.5", torus});
  CHECK(csv.out.rfind("k,depth,sigma_min,stable\n", 0) == 0);
  const std::string target = (fs::temp_directory_path() / "telescope_cli_test" / "report.json").string();
  fs::remove(target);
  const Run r = cli({"homology", "--out", target, torus});
  CHECK(r.code == 2);  // Laurent complexes need --lambda
  const Run ok = cli({"homology", "--lambda", "2", "--out", target, torus});
  CHECK(ok.code == 0);
  CHECK(ok.out.empty());
  std::ifstream in(target);
  CHECK(json::parse(in)["vanishes"] == true);
}

TEST_CASE("fixtures list and run") {
  const Run list = cli({"fixtures", "list"});
  CHECK(list.code == 0);
  CHECK(json::parse(list.out)["fixtures"].size() >= 5);
  const Run run = cli({"fixtures", "run", "z2-wall"});
  CHECK(run.code == 0);
  CHECK(json::parse(run.out)["passed"] == true);
}
