#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "cli.hpp"
#include "io.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using pdsim::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome pdsim_run(std::vector<std::string> args) {
  args.insert(args.begin(), "pdsim");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pdsim_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

void put_diagram(const fs::path& p, const std::vector<std::pair<double, double>>& pairs) {
  nlohmann::json j{{"dim", 1}, {"pairs", nlohmann::json::array()}, {"essential", nlohmann::json::array()}};
  for (auto [b, d] : pairs) j["pairs"].push_back({b, d});
  put(p, j.dump());
}

nlohmann::json compare_json(const fs::path& a, const fs::path& b, const std::string& p = "2") {
  const auto r = pdsim_run({"compare", "--a", a.string(), "--b", b.string(), "--p", p});
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("sample is deterministic and lands on the shape") {
    const auto dir = scratch("sample");
    REQUIRE(pdsim_run({"sample", "--shape", "circle", "--n", "50", "--seed", "9", "--out",
                       (dir / "a.csv").string()}).code == 0);
    REQUIRE(pdsim_run({"sample", "--shape", "circle", "--n", "50", "--seed", "9", "--out",
                       (dir / "b.csv").string()}).code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    const auto cloud = pdsim::cli::load_points(dir / "a.csv");
    REQUIRE(cloud.size() == 50);
    for (const auto& p : cloud.points) CHECK(std::hypot(p.x, p.y) == doctest::Approx(1.0).epsilon(1e-15));
    REQUIRE(pdsim_run({"sample", "--shape", "circle", "--n", "50", "--seed", "10", "--out",
                       (dir / "c.csv").string()}).code == 0);
    CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));
  }

  TEST_CASE("usage errors exit with 2") {
    const auto dir = scratch("usage");
    CHECK(pdsim_run({"sample", "--shape", "disc", "--n", "0", "--out", (dir / "x.csv").string()}).code == 2);
    CHECK(pdsim_run({"sample", "--shape", "blob", "--n", "5", "--out", (dir / "x.csv").string()}).code == 2);
    CHECK(pdsim_run({"frobnicate"}).code == 2);
    CHECK(pdsim_run({"compare", "--a", "x.json"}).code == 2);
    CHECK(pdsim_run({"pd", "--in", (dir / "missing.csv").string(), "--out-prefix", (dir / "o").string()}).code ==
          2);
    CHECK(pdsim_run({"--help"}).code == 0);
  }

  TEST_CASE("pd on two points and on the unit square") {
    const auto dir = scratch("pd");
    put(dir / "two.csv", "x,y\n0,0\n1,0\n");
    REQUIRE(pdsim_run({"pd", "--in", (dir / "two.csv").string(), "--out-prefix", (dir / "two").string()}).code ==
            0);
    const auto h0 = nlohmann::json::parse(slurp(dir / "two_h0.json"));
    CHECK(h0["dim"] == 0);
    CHECK(h0["pairs"] == nlohmann::json::parse("[[0.0, 1.0]]"));
    CHECK(h0["essential"] == nlohmann::json::parse("[0.0]"));

    put(dir / "square.csv", "0,0\n1,0\n1,1\n0,1\n");
    REQUIRE(pdsim_run({"pd", "--in", (dir / "square.csv").string(), "--out-prefix", (dir / "sq").string()})
                .code == 0);
    const auto h1 = pdsim::cli::load_diagram(dir / "sq_h1.json");
    REQUIRE(h1.finite_pairs.size() == 1);
    CHECK(h1.finite_pairs[0].birth == 1.0);
    CHECK(h1.finite_pairs[0].death == std::sqrt(2.0));
  }

  TEST_CASE("pd input errors") {
    const auto dir = scratch("pd_errors");
    put(dir / "empty.csv", "");
    auto r = pdsim_run({"pd", "--in", (dir / "empty.csv").string(), "--out-prefix", (dir / "e").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("no points") != std::string::npos);

    put(dir / "bad.csv", "x,y\n0,0\n1,zero\n");
    r = pdsim_run({"pd", "--in", (dir / "bad.csv").string(), "--out-prefix", (dir / "b").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad.csv:3") != std::string::npos);

    put(dir / "nan.csv", "0,0\nnan,1\n");
    r = pdsim_run({"pd", "--in", (dir / "nan.csv").string(), "--out-prefix", (dir / "n").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("nan.csv:2") != std::string::npos);
  }

  TEST_CASE("compare a unit chain with one extra bar") {
    const auto dir = scratch("cmp1");
    put_diagram(dir / "a.json", {{0, 1}, {1, 2}, {2, 3}});
    put_diagram(dir / "b.json", {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const auto j = compare_json(dir / "a.json", dir / "b.json");
    const auto& m = j["metrics"];
    CHECK(m["bottleneck"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m["wasserstein_p"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m["landscape_sup"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m["landscape_p"].get<double>() == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(m["cosine_distance"].get<double>() == doctest::Approx(1.0 - 3.0 / std::sqrt(12.0)).epsilon(1e-12));
    CHECK(m["rho_distance"].get<double>() == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
    CHECK(j["dim"] == 1);
    CHECK(j["p"] == 2.0);

    const auto self = compare_json(dir / "a.json", dir / "a.json");
    for (const auto& [name, value] : self["metrics"].items()) CHECK(value.get<double>() == 0.0);
  }

  TEST_CASE("compare separated short bars") {
    const auto dir = scratch("cmp2");
    // m = 3, n = 2: intervals of length 1/3 centred at t + 1/2.
    put_diagram(dir / "a.json", {{1.0 / 3, 2.0 / 3}, {4.0 / 3, 5.0 / 3}});
    put_diagram(dir / "b.json", {{13.0 / 3, 14.0 / 3}, {16.0 / 3, 17.0 / 3}});
    const auto m = compare_json(dir / "a.json", dir / "b.json")["metrics"];
    CHECK(m["bottleneck"].get<double>() == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(m["wasserstein_p"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(m["cosine_distance"].get<double>() == 1.0);
    CHECK(m["rho_distance"].get<double>() == 1.0);
  }

  TEST_CASE("compare semantic errors and csv layout") {
    const auto dir = scratch("cmp3");
    put_diagram(dir / "a.json", {{0, 1}});
    put(dir / "h0.json", R"({"dim": 0, "pairs": [[0, 1]], "essential": [0]})");
    put(dir / "empty.json", R"({"dim": 1, "pairs": [], "essential": []})");
    CHECK(pdsim_run({"compare", "--a", (dir / "a.json").string(), "--b", (dir / "h0.json").string()}).code == 3);
    CHECK(pdsim_run({"compare", "--a", (dir / "a.json").string(), "--b", (dir / "empty.json").string()}).code ==
          3);
    const auto r = pdsim_run({"compare", "--a", (dir / "a.json").string(), "--b", (dir / "empty.json").string(),
                              "--metrics", "rho_distance,bottleneck", "--format", "csv"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "pair_label,dim,p,bottleneck,rho_distance");
    CHECK(row.substr(row.size() - 6) == ",0.5,1");

    put(dir / "broken.json", R"({"dim": 1, "pairs": [[2, 1]], "essential": []})");
    CHECK(pdsim_run({"compare", "--a", (dir / "a.json").string(), "--b", (dir / "broken.json").string()}).code ==
          2);
    CHECK(pdsim_run({"compare", "--a", (dir / "a.json").string(), "--b", (dir / "a.json").string(), "--metrics",
                     "cosine"}).code == 2);
  }

  TEST_CASE("diagram JSON round-trips bit for bit") {
    const auto dir = scratch("json");
    pdsim::PersistenceDiagram d{1, {{0.1, 0.30000000000000004}, {1.0 / 3, std::sqrt(2.0)}, {1e-300, 7e200}},
                                {0.7}};
    pdsim::cli::save_diagram(dir / "d.json", d);
    const auto back = pdsim::cli::load_diagram(dir / "d.json");
    CHECK(back == d);
    pdsim::cli::save_diagram(dir / "e.json", back);
    CHECK(slurp(dir / "d.json") == slurp(dir / "e.json"));
  }

  TEST_CASE("landscape output") {
    const auto dir = scratch("landscape");
    put_diagram(dir / "d.json", {{0, 2}, {1, 3}});
    REQUIRE(pdsim_run({"landscape", "--in", (dir / "d.json").string(), "--out", (dir / "l.json").string()})
                .code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "l.json"));
    CHECK(j["layers"].size() == 2);
    CHECK(j["layers"][0] == nlohmann::json::parse("[[0,0],[1,1],[1.5,0.5],[2,1],[3,0]]"));
    CHECK(j["layers"][1] == nlohmann::json::parse("[[1,0],[1.5,0.5],[2,0]]"));
  }

  TEST_CASE("unwritable output names the path") {
    const auto dir = scratch("unwritable");
    put(dir / "file", "x");
    const auto target = (dir / "file" / "sub" / "out.csv").string();
    const auto r = pdsim_run({"sample", "--shape", "disc", "--n", "5", "--out", target});
    CHECK(r.code == 2);
    CHECK(r.err.find(target) != std::string::npos);
  }

  TEST_CASE("the installed executable reports exit codes") {
    const auto dir = scratch("exe");
    put_diagram(dir / "a.json", {{0, 1}});
    put(dir / "h0.json", R"({"dim": 0, "pairs": [[0, 1]], "essential": []})");
    const std::string exe = PDSIM_EXE;
    auto status = [](const std::string& cmd) {
      const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
      return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(exe + " --help") == 0);
    CHECK(status(exe + " sample --shape disc --n 0 --out " + (dir / "x.csv").string()) == 2);
    CHECK(status(exe + " compare --a " + (dir / "a.json").string() + " --b " + (dir / "h0.json").string()) == 3);
    CHECK(status(exe + " compare --a " + (dir / "a.json").string() + " --b " + (dir / "a.json").string()) == 0);
  }
}
