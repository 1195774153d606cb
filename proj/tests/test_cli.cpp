#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gapasym/cli.hpp"

namespace {

using Json = nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gapasym::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("constants for the Ginibre disk r = 0.5") {
    const auto r = run({"constants", "--b", "1", "--alpha", "0", "--radii", "0,0.5"});
    REQUIRE(r.code == gapasym::cli::kExitOk);
    const auto doc = Json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["command"] == "constants");
    CHECK(doc["gap"]["case"] == "DISK");
    CHECK(doc["result"]["c1"].get<double>() == doctest::Approx(-0.015625).epsilon(1e-15));
    CHECK(doc["result"]["c2"].get<double>() == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(doc["result"]["erfc_integrals"]["i_plus"].get<double>() < 0.0);
    CHECK(doc["diagnostics"]["warnings"].is_array());
  }

  TEST_CASE("exact n = 1 disk [0, 1] is -1") {
    const auto r = run({"exact", "--b", "1", "--alpha", "0", "--radii", "0,1", "--n", "1"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["result"]["exact_log_pn"].get<double>() == doctest::Approx(-1.0).epsilon(1e-15));
    // The hole reaches the bulk edge, so no asymptotic case applies.
    CHECK(doc["gap"]["case"].is_null());
    CHECK(doc["diagnostics"]["routes_used"].contains("p_diff"));
  }

  TEST_CASE("verify ladder as csv") {
    const auto r = run({"verify", "--b", "1", "--alpha", "0", "--radii", "0.4,0.6", "--n", "64,128,256,512,1024",
                        "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "n,exact,predicted,residual,fluctuation");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      std::istringstream in(rows[i]);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(in, field, ',')) fields.push_back(field);
      REQUIRE(fields.size() == 5);
      for (std::size_t k = 1; k < 5; ++k) {
        CAPTURE(rows[i]);
        CHECK(std::isfinite(std::stod(fields[k])));
      }
      const double exact = std::stod(fields[1]), predicted = std::stod(fields[2]), residual = std::stod(fields[3]);
      CHECK(residual == doctest::Approx(exact - predicted).epsilon(1e-12));
    }
    CHECK(lines(r.out)[1].rfind("64,", 0) == 0);
  }

  TEST_CASE("csv numbers carry 17 significant digits") {
    const auto r = run({"exact", "--b", "1", "--radii", "0,0.5", "--n", "2", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto row = lines(r.out)[1];
    const auto value = row.substr(2, row.find(',', 2) - 2);
    const auto j = run({"exact", "--b", "1", "--radii", "0,0.5", "--n", "2"});
    CHECK(std::stod(value) == Json::parse(j.out)["result"]["exact_log_pn"].get<double>());
    CHECK(std::abs(std::stod(value) - (-4 * 0.25 + std::log1p(0.5))) < 1e-15);
  }

  TEST_CASE("json round-trips the inputs exactly") {
    const auto r = run({"constants", "--b", "3/2", "--alpha", "0.1", "--radii", "0,0.123456789012345,0.7,inf"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["params"]["b"].get<double>() == 1.5);
    CHECK(doc["params"]["alpha"].get<double>() == 0.1);
    CHECK(doc["params"]["b_rational"] == Json::array({3, 2}));
    const auto radii = doc["gap"]["radii"];
    REQUIRE(radii.size() == 4);
    CHECK(radii[0].get<double>() == 0.0);
    CHECK(radii[1].get<double>() == 0.123456789012345);
    CHECK(radii[2].get<double>() == 0.7);
    CHECK(radii[3] == "inf");
    CHECK(doc["gap"]["case"] == "DISK_UNBOUNDED");
  }

  TEST_CASE("decimal b carries no rational form") {
    const auto r = run({"constants", "--b", "1.5", "--radii", "0.2,0.4"});
    REQUIRE(r.code == 0);
    CHECK(!Json::parse(r.out)["params"].contains("b_rational"));
  }

  TEST_CASE("validation errors exit with 2 and one line on stderr") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"exact", "--b", "1", "--radii", "0.5,0.2", "--n", "3"},
             {"exact", "--b", "1", "--radii", "0.2,0.4"},
             {"constants", "--b", "1", "--radii", "0.2,1.5"},
             {"constants", "--b", "-1", "--radii", "0.2,0.4"},
             {"constants", "--b", "1", "--alpha", "-2", "--radii", "0.2,0.4"},
             {"constants", "--b", "x", "--radii", "0.2,0.4"},
             {"constants", "--b", "1", "--radii", "0.2,0.4", "--format", "csv"},
             {"mc", "--b", "1", "--radii", "0,0.5", "--n", "2"},
             {"frobnicate"},
             {"exact", "--b", "1", "--radii", "0,0.5", "--n", "5:2"},
         }) {
      const auto r = run(args);
      CAPTURE(args[0]);
      CHECK(r.code == gapasym::cli::kExitValidation);
      CHECK(r.out.empty());
      CHECK(!r.err.empty());
      CHECK(lines(r.err).size() == 1);
    }
  }

  TEST_CASE("term cap exits with 3") {
    const auto r = run({"exact", "--b", "1", "--radii", "0,0.5", "--n", "400", "--max-terms", "2"});
    CHECK(r.code == gapasym::cli::kExitConvergence);
    CHECK(r.err.find("error") != std::string::npos);
  }

  TEST_CASE("threads and GAPASYM_THREADS do not change results") {
    const std::vector<std::string> base = {"exact", "--b", "0.7", "--alpha", "-0.4", "--radii", "0,0.2,0.5,0.9",
                                           "--n", "100,300"};
    const auto one = run(base);
    auto with_threads = base;
    with_threads.insert(with_threads.end(), {"--threads", "6"});
    const auto many = run(with_threads);
    REQUIRE(one.code == 0);
    CHECK(one.out == many.out);
    setenv("GAPASYM_THREADS", "4", 1);
    const auto env = run(base);
    unsetenv("GAPASYM_THREADS");
    CHECK(one.out == env.out);
  }

  TEST_CASE("predict and trace") {
    const auto p = run({"predict", "--b", "1", "--radii", "0.4,0.6", "--n", "100"});
    REQUIRE(p.code == 0);
    const auto doc = Json::parse(p.out);
    CHECK(doc["result"]["rows"].size() == 1);
    CHECK(doc["result"]["include_fluctuation"] == true);

    const auto t = run({"trace", "--b", "1", "--radii", "0.4,0.6"});
    REQUIRE(t.code == 0);
    const auto tr = Json::parse(t.out);
    CHECK(tr["result"]["rows"].size() == 200);
    CHECK(tr["result"]["min"].get<double>() < tr["result"]["max"].get<double>());

    const auto csv = run({"trace", "--b", "1", "--radii", "0.4,0.6", "--n", "1:10", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out).size() == 11);
  }

  TEST_CASE("no-fluctuation flag") {
    const auto with = Json::parse(run({"predict", "--b", "1", "--radii", "0.4,0.6", "--n", "100"}).out);
    const auto without =
        Json::parse(run({"predict", "--b", "1", "--radii", "0.4,0.6", "--n", "100", "--no-fluctuation"}).out);
    const double f = with["result"]["rows"][0]["fluctuation"].get<double>();
    const double diff = with["result"]["rows"][0]["predicted"].get<double>() -
                        without["result"]["rows"][0]["predicted"].get<double>();
    CHECK(diff == doctest::Approx(f).epsilon(1e-12));
    CHECK(without["result"]["include_fluctuation"] == false);
  }

  TEST_CASE("mc report") {
    const auto r = run({"mc", "--b", "1", "--radii", "0,0.5", "--n", "2", "--samples", "200000", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto res = Json::parse(r.out)["result"];
    CHECK(res["samples"] == 200000);
    CHECK(res["analytic"] == false);
    const double est = res["estimate"].get<double>(), se = res["std_err"].get<double>();
    CHECK(std::abs(est - res["exact"].get<double>()) < 4 * se);
  }

  TEST_CASE("verify json summary and g-route") {
    const auto r = run({"verify", "--b", "1/1", "--radii", "0,0.6", "--n", "64,128", "--g-route", "limit"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["result"]["summary"]["failed_rows"] == 0);
    CHECK(doc["result"]["rows"].size() == 2);
    CHECK(!doc["diagnostics"]["warnings"].empty());
  }

  TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "gapasym_cli_test.json";
    std::filesystem::remove(path);
    const auto r = run({"constants", "--b", "1", "--radii", "0,0.5", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto doc = Json::parse(in);
    CHECK(doc["command"] == "constants");
    std::filesystem::remove(path);
  }

  TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("exact") != std::string::npos);
  }
}
