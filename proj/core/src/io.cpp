#include "spectrabound/io.hpp"

#include <fstream>
#include <string>

namespace spectrabound {

using nlohmann::json;

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed ") + what + ": " + e.what());
  }
}

Complex entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2) return {e.at(0).get<double>(), e.at(1).get<double>()};
  throw InvalidInput("matrix entry must be a number or a [re, im] pair");
}

}  // namespace

Spectrum spectrum_from_json(const json& j) {
  return guarded("spectrum", [&] {
    const BipartiteDims dims(j.at("n").get<int>(), j.at("m").get<int>());
    return Spectrum(j.at("values").get<std::vector<double>>(), dims);
  });
}

json to_json(const Spectrum& s) {
  return {{"n", s.dims().n()},
          {"m", s.dims().m()},
          {"values", std::vector<double>(s.values().begin(), s.values().end())}};
}

HermitianMatrix hermitian_from_json(const json& j) {
  return guarded("matrix", [&] {
    const auto& rows = j.at("entries");
    const int dim = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(rows.size());
    if (dim < 1 || static_cast<int>(rows.size()) != dim) {
      throw InvalidInput("matrix must have dim rows");
    }
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
      const auto& row = rows.at(static_cast<std::size_t>(r));
      if (static_cast<int>(row.size()) != dim) throw InvalidInput("matrix must be square");
      for (int c = 0; c < dim; ++c) m(r, c) = entry_from_json(row.at(static_cast<std::size_t>(c)));
    }
    return HermitianMatrix(m);
  });
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

json to_json(const CriterionVerdict& v) {
  json j{{"technique", to_string(v.technique)},
         {"chi_or_gamma", v.parameter},
         {"alpha", v.alpha_used},
         {"satisfied", v.satisfied},
         {"certificate_kind", to_string(v.certificate_kind)},
         {"binding_condition", to_string(v.binding_condition)},
         {"slack", v.slack}};
  if (v.tau) j["tau"] = *v.tau;
  return j;
}

json to_json(const PredfsVerdict& v) {
  json j = to_json(v.verdict);
  j["status"] = to_string(v.status);
  if (v.best_value) j["best_rearrangement_min"] = *v.best_value;
  if (v.witness) {
    j["witness"] = std::vector<double>(v.witness->coeffs().begin(), v.witness->coeffs().end());
  }
  return j;
}

json to_json(const StructuredSpectrum& s) {
  json blocks = json::array();
  for (const auto& b : s.blocks) blocks.push_back({b.value, b.multiplicity});
  return {{"blocks", std::move(blocks)},
          {"etas", s.etas},
          {"null_mult", s.null_mult},
          {"trace_residual", s.trace_residual}};
}

json to_json(const NegativityReport& r) {
  json j{{"value", r.value},
         {"negative_eigenvalue_count", r.negative_eigenvalue_count},
         {"formula", to_string(r.formula)}};
  if (r.trace_norm_form) j["trace_norm_form"] = *r.trace_norm_form;
  return j;
}

json to_json(const WitnessBounds& b) {
  return {{"min_ok", b.min_ok},         {"max_ok", b.max_ok},
          {"slack_min", b.slack_min},   {"slack_max", b.slack_max},
          {"alpha_plus", b.alpha_plus}, {"lambda_min", b.lambda_min},
          {"lambda_max", b.lambda_max}, {"trace", b.trace}};
}

json to_json(const MaxGammaResult& r) {
  return {{"gamma_max", r.gamma}, {"alpha", r.alpha}, {"tau", r.tau}, {"trivial", r.trivial}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("cannot parse " + path.string() + ": " + e.what());
  }
}

Spectrum load_spectrum(const std::filesystem::path& path) {
  return spectrum_from_json(read_json_file(path));
}

HermitianMatrix load_hermitian(const std::filesystem::path& path) {
  return hermitian_from_json(read_json_file(path));
}

}  // namespace spectrabound
