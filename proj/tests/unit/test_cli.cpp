#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectrabound/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
namespace cli = spectrabound::cli;

namespace {

struct Run {
  int code;
  json out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  json j;
  if (!out.str().empty() && out.str().front() == '{') j = json::parse(out.str());
  return {code, j, err.str()};
}

fs::path temp(const std::string& name, const std::string& body) {
  const auto p = fs::temp_directory_path() / ("spectrabound_cli_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("certify") {
  const auto mms = temp("mms.json", R"({"n": 2, "m": 2, "values": [0.25, 0.25, 0.25, 0.25]})");
  auto r = run({"certify", "--spectrum", mms.string(), "--measure", "negativity", "--gamma", "0"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out["satisfied"] == true);
  CHECK(r.out["certificate_kind"] == "certified");

  const auto pure = temp("pure.json", R"({"n": 2, "m": 2, "values": [0, 0, 0, 1]})");
  r = run({"certify", "--spectrum", pure.string(), "--measure", "sn", "--chi", "1", "--technique",
           "robustness"});
  CHECK(r.code == cli::kExitNotSatisfied);
  CHECK(r.out["satisfied"] == false);

  const auto blue = temp("blue.json", R"({"n": 2, "m": 2, "values": [0.1, 0.1, 0.1, 0.7]})");
  r = run({"max-gamma", "--spectrum", blue.string()});
  REQUIRE(r.code == cli::kExitOk);
  const double g = r.out["gamma_max"];
  CHECK(g == doctest::Approx(0.2).epsilon(1e-9));
  std::ostringstream gs;
  gs.precision(17);
  gs << g;
  r = run({"certify", "--spectrum", blue.string(), "--measure", "negativity", "--gamma", gs.str()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.contains("binding_condition"));

  r = run({"certify", "--spectrum", pure.string(), "--measure", "predfs", "--kappa", "1", "--starts", "2"});
  CHECK(r.code == cli::kExitNotSatisfied);
  CHECK(r.out["status"] == "falsified");

  r = run({"certify", "--spectrum", mms.string(), "--measure", "negred", "--kappa", "1", "--chi", "2",
           "--gamma", "0"});
  CHECK(r.code == cli::kExitOk);

  // Input errors.
  const auto broken = temp("broken.json", R"({"n": 2, "m": 2, "values": [0.5, 0.5, 0.5, 0.5]})");
  CHECK(run({"certify", "--spectrum", broken.string(), "--measure", "negativity", "--gamma", "0"}).code ==
        cli::kExitInputError);
  CHECK(run({"certify", "--spectrum", mms.string(), "--measure", "negativity"}).code == cli::kExitInputError);
  CHECK(run({"certify", "--spectrum", mms.string(), "--measure", "negativity", "--gamma", "0.7"}).code ==
        cli::kExitInputError);
  CHECK(run({"certify", "--spectrum", mms.string(), "--measure", "bogus"}).code == cli::kExitInputError);
  CHECK(run({"certify", "--spectrum", mms.string(), "--measure", "sn", "--chi", "1", "--technique",
             "nope"})
            .code == cli::kExitInputError);
  for (const auto& p : {mms, pure, blue, broken}) fs::remove(p);
}

TEST_CASE("max-gamma") {
  const auto mms = temp("mg_mms.json", R"({"n": 2, "m": 2, "values": [0.25, 0.25, 0.25, 0.25]})");
  auto r = run({"max-gamma", "--spectrum", mms.string()});
  CHECK(r.out["gamma_max"] == 0.0);
  const auto rd = temp("mg_rd.json", R"({"n": 2, "m": 2, "values": [0, 0.2, 0.3, 0.5]})");
  r = run({"max-gamma", "--spectrum", rd.string()});
  CHECK(r.out["gamma_max"] == 0.5);
  CHECK(r.out["trivial"] == true);
  fs::remove(mms);
  fs::remove(rd);
}

TEST_CASE("pps") {
  auto r = run({"pps", "--n", "2", "--m", "2", "--chi", "2", "--p", "0"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out["negativity"].get<double>() == doctest::Approx(0.5));

  r = run({"pps", "--n", "3", "--m", "3", "--chi", "3", "--p", "1"});
  CHECK(r.out["negativity"] == 0.0);
  CHECK(r.out["reduction_negativity"] == 0.0);
  CHECK(r.out["max_gamma"]["gamma_max"] == 0.0);

  r = run({"pps", "--n", "6", "--m", "6", "--chi", "3", "--p", "36/41"});
  CHECK(r.out["alpha"].get<double>() == doctest::Approx(5.0));
  CHECK(r.out["negativity"].get<double>() == doctest::Approx(2.0 / 41.0));

  CHECK(run({"pps", "--n", "2", "--m", "2", "--chi", "3", "--p", "0.5"}).code == cli::kExitInputError);
  CHECK(run({"pps", "--n", "2", "--m", "2", "--chi", "2", "--p", "1.5"}).code == cli::kExitInputError);
  CHECK(run({"pps", "--n", "2", "--m", "2", "--chi", "2", "--p", "x"}).code == cli::kExitInputError);
}

TEST_CASE("figure") {
  const auto out = fs::temp_directory_path() / "spectrabound_cli_fig4.csv";
  auto r = run({"figure", "--figure", "fig4", "--out", out.string(), "--samples", "5", "--seed", "3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out["rows"] == 51 * 4);
  std::ifstream a(out);
  const std::string first((std::istreambuf_iterator<char>(a)), {});
  CHECK(first.rfind("p,family,bound,empirical_max\n", 0) == 0);
  CHECK(fs::exists(out.string() + ".manifest.json"));

  run({"figure", "--figure", "fig4", "--out", out.string(), "--samples", "5", "--seed", "3"});
  std::ifstream b(out);
  const std::string second((std::istreambuf_iterator<char>(b)), {});
  CHECK(first == second);

  r = run({"figure", "--figure", "fig3", "--out", out.string(), "--analytic-only"});
  CHECK(r.out["rows"] == 51 * 5);
  CHECK(run({"figure", "--figure", "fig9", "--out", out.string()}).code == cli::kExitInputError);
  fs::remove(out);
  fs::remove(out.string() + ".manifest.json");
}

TEST_CASE("witness") {
  const auto iso = temp("iso.json",
                        R"({"dim": 4, "entries": [[0, 0, 0, -0.5], [0, 0.5, 0, 0], [0, 0, 0.5, 0], [-0.5, 0, 0, 0]]})");
  auto r = run({"witness", "--matrix", iso.string(), "--chi", "1", "--n", "2", "--m", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(std::abs(r.out["slack_min"].get<double>()) <= 1e-12);

  const auto psd = temp("psd.json", R"({"entries": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]]})");
  CHECK(run({"witness", "--matrix", psd.string(), "--chi", "1", "--n", "2", "--m", "2"}).code == cli::kExitOk);

  const auto big = temp("big.json", R"({"entries": [[-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 2]]})");
  r = run({"witness", "--matrix", big.string(), "--chi", "1", "--n", "2", "--m", "2"});
  CHECK(r.code == cli::kExitNotSatisfied);
  CHECK(r.out["max_ok"] == false);

  const auto nh = temp("nh.json", R"({"entries": [[1, 1], [0, 1]]})");
  CHECK(run({"witness", "--matrix", nh.string(), "--chi", "1", "--n", "1", "--m", "2"}).code ==
        cli::kExitInputError);
  for (const auto& p : {iso, psd, big, nh}) fs::remove(p);
}

TEST_CASE("pred-spectrum") {
  auto r = run({"pred-spectrum", "--schmidt", "1,1", "--kappa", "1", "--n", "2", "--m", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out["etas"][0].get<double>() == doctest::Approx(-0.5));
  CHECK(r.out["max_deviation"].get<double>() <= 1e-9);

  r = run({"pred-spectrum", "--schmidt", "1,1,1", "--kappa", "3", "--n", "3", "--m", "3"});
  CHECK(std::abs(r.out["etas"].back().get<double>()) <= 1e-14);

  r = run({"pred-spectrum", "--schmidt", "0.8,0.6", "--kappa", "1", "--n", "3", "--m", "4"});
  CHECK(r.out["null_mult"] == 4);

  CHECK(run({"pred-spectrum", "--schmidt", "1,-1", "--kappa", "1", "--n", "2", "--m", "2"}).code ==
        cli::kExitInputError);
}

TEST_CASE("help and unknown commands") {
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cli::run({"--help"}, out, err) == cli::kExitOk);
  CHECK(out.str().find("certify") != std::string::npos);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({}).code == cli::kExitInputError);
}
