#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "randig/json_io.hpp"

using randig::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = randig::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

const std::string kArd3 = R"({"family":"ard","n":3,"p_a":0.4})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("pmf writes the full support") {
    const auto r = call({"pmf", "--model", kArd3});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 65);
    CHECK(ls[0] == "digraph_hex,probability");
    double total = 0;
    for (std::size_t i = 1; i < ls.size(); ++i) total += std::stod(ls[i].substr(ls[i].find(',') + 1));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.err.find("support 64") != std::string::npos);

    const auto rn = call({"pmf", "--model", R"({"family":"rnnd","n":3,"k":1,"d":2,"dist":"normal","norm":"l1"})"});
    CHECK(rn.code == 0);
    CHECK(lines(rn.out).size() == 7);

    const auto js = call({"pmf", "--model", kArd3, "--format", "json"});
    CHECK(js.code == 0);
    CHECK(Json::parse(js.out).contains("schema_version"));
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(call({"pmf", "--model", R"({"family":"ard","n":6,"p_a":0.4})"}).code == 2);
    CHECK(call({"pmf", "--model", R"({"family":"ard","n":3,"p_a":1.4})"}).code == 2);
    CHECK(call({"pmf", "--model", R"({"family":"derd","n":3,"p_e":0.5,"p_d":1.0})"}).code == 2);
    CHECK(call({"pmf", "--model", "{not json"}).code == 2);
    CHECK(call({"pmf"}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"oracle", "nonsense"}).code == 2);
    CHECK(call({"pmf", "--model", kArd3, "--format", "xml"}).code == 2);
    CHECK(call({"--help"}).code == 0);
  }

  TEST_CASE("sample is deterministic and reports counts") {
    const std::vector<std::string> args{"sample", "--model", R"({"family":"derd","n":5,"p_e":0.6,"p_d":0.5})",
                                        "--samples", "500", "--seed", "17"};
    const auto a = call(args), b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto ls = lines(a.out);
    REQUIRE(ls.size() == 501);
    CHECK(ls[0] == "index,digraph,n_a,n_e,n_s,n_as");
    for (std::size_t i = 1; i < ls.size(); ++i) {
      std::vector<std::string> cells;
      std::istringstream is(ls[i]);
      for (std::string c; std::getline(is, c, ',');) cells.push_back(c);
      REQUIRE(cells.size() == 6);
      CHECK(cells[4] == "0");  // p_d = 1/2 never makes a symmetric pair
      CHECK(cells[2] == cells[5]);
    }

    auto other = args;
    other.back() = "18";
    CHECK(call(other).out != a.out);
  }

  TEST_CASE("arc frequency table") {
    const auto r = call({"sample", "--model", R"({"family":"ard","n":4,"p_a":0.3})", "--samples", "20000",
                         "--seed", "3", "--arc-freq"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 13);
    CHECK(ls[0] == "tail,head,count,frequency");
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const double f = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
      CHECK(std::abs(f - 0.3) <= 4 * std::sqrt(0.3 * 0.7 / 20000));
    }
  }

  TEST_CASE("oracle reports") {
    const auto n2 = call({"oracle", "n2", "--p1", "0.25", "--p2", "0.25"});
    REQUIRE(n2.code == 0);
    const Json j = Json::parse(n2.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["oracle"] == "n2");
    CHECK(j["pass"] == true);
    for (const char* key : {"config", "inputs", "computed", "expected", "tolerance", "condition_holds"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["config"].contains("seed"));  // even exact oracles name their seed

    CHECK(call({"oracle", "derd-ard", "--pe", "0.36"}).code == 0);
    CHECK(call({"oracle", "tv", "--model", R"({"family":"derd","n":2,"p_e":0.75,"p_d":0.6666666666666666})",
                "--model2", R"({"family":"ard","n":2,"p_a":0.5})", "--tol", "1e-12"})
              .code == 0);
    CHECK(call({"oracle", "invariance", "--model", kArd3}).code == 0);
    const std::string planted =
        R"({"family":"gard","n":3,"p":[[0,0.9,0.1],[0.1,0,0.1],[0.1,0.1,0]]})";
    CHECK(call({"oracle", "invariance", "--model", planted}).code == 1);
    CHECK(call({"oracle", "invariance", "--model", planted, "--expect-fail"}).code == 0);
    CHECK(call({"oracle", "spectral", "--kernel", R"({"type":"finite","weights":[0.5,0.5],"phi":[[0.2,0.4],[0.4,0.8]]})"})
              .code == 0);
    CHECK(call({"oracle", "constancy", "--kernel", R"({"type":"two_value","a":0.3,"b":0.6})"}).code == 0);
    CHECK(call({"oracle", "g-moments", "--pd", "0.75", "--samples", "200000", "--seed", "5"}).code == 0);
  }

  TEST_CASE("positive dependence fails for RNND and --expect-fail inverts it") {
    const std::string rnnd = R"({"family":"rnnd","n":5,"k":2,"d":1,"dist":"uniform","norm":"l2"})";
    const auto f = call({"oracle", "posdep", "--model", rnnd, "--m", "3", "--samples", "50000", "--seed", "8"});
    CHECK(f.code == 1);
    CHECK(Json::parse(f.out)["condition_holds"] == false);
    CHECK(call({"oracle", "posdep", "--model", rnnd, "--m", "3", "--samples", "50000", "--seed", "8",
                "--expect-fail"})
              .code == 0);
  }

  TEST_CASE("replaying a report's config reproduces it") {
    const auto first = call({"oracle", "rnnd-stats", "--model",
                             R"({"family":"rnnd","n":5,"k":2,"d":2,"dist":"normal","norm":"linf"})", "--samples",
                             "4000", "--seed", "99"});
    REQUIRE(first.code == 0);
    const auto again = call({"oracle", "rnnd-stats", "--config", first.out});
    CHECK(again.code == 0);
    CHECK(again.out == first.out);

    // Explicit flags override the replayed values.
    const auto changed = call({"oracle", "rnnd-stats", "--config", first.out, "--seed", "100"});
    CHECK(changed.out != first.out);
    CHECK(Json::parse(changed.out)["config"]["seed"] == 100);
  }
}
