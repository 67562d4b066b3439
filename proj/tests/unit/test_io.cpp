#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spectrabound/io.hpp"

using namespace spectrabound;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("spectrabound_io_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("spectrum json round trip") {
  const Spectrum s({0.1, 0.2, 0.3, 0.4}, BipartiteDims(2, 2));
  const auto back = spectrum_from_json(to_json(s));
  CHECK(back.dims() == s.dims());
  for (int i = 0; i < 4; ++i) CHECK(back[i] == s[i]);

  CHECK_THROWS_AS(spectrum_from_json(json{{"n", 2}, {"values", {1.0}}}), InvalidInput);
  CHECK_THROWS_AS(spectrum_from_json(json{{"n", 2}, {"m", 2}, {"values", "x"}}), InvalidInput);
  CHECK_THROWS_AS(spectrum_from_json(json{{"n", 2}, {"m", 2}, {"values", {0.5, 0.5}}}), InvalidInput);
}

TEST_CASE("hermitian json") {
  const json j = {{"dim", 2}, {"entries", {{1.0, json{0.0, 1.0}}, {json{0.0, -1.0}, 2.0}}}};
  const auto h = hermitian_from_json(j);
  CHECK(h.matrix()(0, 1) == Complex(0.0, 1.0));
  CHECK(h.matrix()(1, 1) == Complex(2.0, 0.0));
  const auto again = hermitian_from_json(to_json(h.matrix()));
  CHECK(again.matrix() == h.matrix());

  CHECK_THROWS_AS(hermitian_from_json(json{{"entries", {{1.0, 1.0}, {0.0, 1.0}}}}), InvalidInput);
  CHECK_THROWS_AS(hermitian_from_json(json{{"entries", {{1.0, 0.0}}}}), InvalidInput);
  CHECK_THROWS_AS(hermitian_from_json(json{{"entries", {{"a"}}}}), InvalidInput);
}

TEST_CASE("verdict and report serialization") {
  const auto v = certify_negfs(Spectrum::uniform(BipartiteDims(2, 2)), 0.1);
  const auto j = to_json(v);
  CHECK(j["technique"] == "negfs");
  CHECK(j["satisfied"] == true);
  CHECK(j["certificate_kind"] == "certified");
  CHECK(j["binding_condition"] == "min_eigenvalue");
  CHECK(j["chi_or_gamma"] == 0.1);
  CHECK(j["tau"] == 2);

  const auto s = xi_spectrum_structured(SchmidtVector::uniform(2), 1, BipartiteDims(2, 2));
  const auto js = to_json(s);
  CHECK(js["blocks"][0][1] == 3);
  CHECK(js["null_mult"] == 0);
  CHECK(js["etas"].size() == 1);

  const auto g = to_json(max_gamma_negfs(Spectrum({0, 0, 0, 1}, BipartiteDims(2, 2))));
  CHECK(g["trivial"] == true);
  CHECK(g["gamma_max"] == 0.5);
}

TEST_CASE("file loading") {
  const auto good = write_temp("good.json", R"({"n": 2, "m": 2, "values": [0.25, 0.25, 0.25, 0.25]})");
  CHECK(load_spectrum(good).is_uniform());
  const auto bad = write_temp("bad.json", "{not json");
  CHECK_THROWS_AS(load_spectrum(bad), InvalidInput);
  CHECK_THROWS_AS(load_spectrum("/nonexistent/spectrabound.json"), InvalidInput);
  const auto mat = write_temp("mat.json", R"({"entries": [[1, 0], [0, 1]]})");
  CHECK(load_hermitian(mat).dim() == 2);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  std::filesystem::remove(mat);
}
