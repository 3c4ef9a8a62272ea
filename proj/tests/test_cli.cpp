#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "newton/cli.hpp"

using namespace newton;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = kExitOk) {
  args.insert(args.begin(), {"--format", "json"});
  const Run r = run(std::move(args));
  REQUIRE(r.code == expected_code);
  return nlohmann::json::parse(r.out);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage") {
    const Run help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("stirling") != std::string::npos);
    CHECK(help.out.find("exp-neg-square") != std::string::npos);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({"stirling"}).code == kExitUsage);
    CHECK(run({"--format", "xml", "wallis"}).code == kExitUsage);
    CHECK(run({"stirling", "--n", "0"}).code == kExitUsage);
  }

  TEST_CASE("stirling rows") {
    const Run r = run({"stirling", "--n", "10", "--method", "both"});
    CHECK(r.code == kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3u);
    CHECK(rows[0] == "method,n,log_factorial_exact,approximation,abs_error,predicted_bound,within_bound");
    CHECK(rows[1].rfind("sum,10,", 0) == 0);
    CHECK(rows[2].rfind("laplace,10,", 0) == 0);
    CHECK(rows[1].substr(rows[1].size() - 4) == "true");
    CHECK(rows[2].substr(rows[2].size() - 4) == "true");

    const auto j = run_json({"stirling", "--n", "1", "--method", "sum"});
    REQUIRE(j.size() == 1u);
    CHECK(j[0]["schema_version"] == 1);
    CHECK(j[0]["log_factorial_exact"].get<double>() == 0.0);
  }

  TEST_CASE("gauss row") {
    const auto j = run_json({"gauss"});
    REQUIRE(j.size() == 1u);
    CHECK(j[0]["value"].get<double>() == doctest::Approx(1.7724538509055160));
    CHECK(j[0]["residual"].get<double>() < 1e-9);
    CHECK(j[0]["exchange_b"].is_null());
  }

  TEST_CASE("wallis table") {
    const auto j = run_json({"wallis", "--n-max", "10"});
    REQUIRE(j.size() == 11u);
    for (const auto& row : j) CHECK(row["agree"] == true);
  }

  TEST_CASE("gamma table") {
    const auto j = run_json({"gamma", "--n", "5", "200", "--mode", "exact"});
    REQUIRE(j.size() == 2u);
    CHECK(j[0]["value"].get<double>() == 120.0);
    CHECK(j[1]["value"].is_null());
    CHECK(j[1]["log_value"].get<double>() == doctest::Approx(std::lgamma(201.0)).epsilon(1e-13));
  }

  TEST_CASE("fubini cases") {
    const auto c = run_json({"fubini", "--case", "counterexample", "--X", "100"});
    CHECK(c[0]["order_yx_partial"].get<double>() >= 90.0);
    CHECK(c[0]["divergence_witness"] == true);

    const auto s = run_json({"fubini", "--case", "special", "--b", "1", "2"});
    CHECK(s.size() == 2u);
    const auto d = run_json({"fubini", "--case", "decay", "--function", "zero", "--T", "2", "4"});
    CHECK(d.size() == 2u);
    CHECK(d[1]["value_xy"].get<double>() == 0.0);
    CHECK(run({"fubini", "--case", "decay", "--function", "nope"}).code == kExitUsage);
  }

  TEST_CASE("integrate and sumint") {
    const auto j = run_json({"integrate", "--function-id", "cos", "--lo", "0", "--hi", "1.5707963"});
    CHECK(j[0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    const auto inf = run_json({"integrate", "--function-id", "arctan-density", "--lo", "-inf", "--hi", "inf"});
    CHECK(inf[0]["value"].get<double>() == doctest::Approx(M_PI).epsilon(1e-12));

    CHECK(run({"integrate", "--function-id", "nope", "--lo", "0", "--hi", "1"}).code == kExitUsage);
    CHECK(run({"integrate", "--function-id", "cos", "--lo", "x", "--hi", "1"}).code == kExitUsage);
    CHECK(run({"integrate", "--function-id", "cos", "--lo", "1", "--hi", "0"}).code == kExitUsage);
    CHECK(run({"integrate", "--function-id", "log", "--lo", "-1", "--hi", "1"}).code == kExitUsage);
    CHECK(run({"integrate", "--function-id", "log1p", "--lo", "0", "--hi", "inf"}).code == kExitCheckFailed);

    const auto s = run_json({"sumint", "--function-id", "reciprocal-square", "--a", "1", "--b", "100"});
    CHECK(s[0]["theta_in_range"] == true);
    CHECK(run({"sumint", "--function-id", "cos", "--a", "0", "--b", "10"}).code == kExitCheckFailed);
  }

  TEST_CASE("primitive cache") {
    const auto path = std::filesystem::temp_directory_path() / "newton_calc_cli_cache.json";
    std::filesystem::remove(path);
    const std::vector<std::string> args{"integrate", "--function-id", "exp-neg-square", "--lo", "0",
                                        "--hi",      "2",             "--cache",        path.string()};
    const auto first = run_json(args);
    const auto second = run_json(args);
    CHECK(first[0]["cache"] == "miss");
    CHECK(second[0]["cache"] == "hit");
    CHECK(first[0]["value"] == second[0]["value"]);
    // 0.882081390762421 = (sqrt(pi)/2) erf(2)
    CHECK(std::fabs(first[0]["value"].get<double>() - 0.88208139076242168) <= 2e-8);

    // A different interval does not reuse the file.
    auto other = args;
    other[6] = "1";
    CHECK(run_json(other)[0]["cache"] == "miss");
    std::filesystem::remove(path);
  }

  TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"fubini", "--case", "rect", "--seed", "5", "--target", "1e-6"};
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
}
