#include "spectrabound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spectrabound/experiments.hpp"
#include "spectrabound/io.hpp"
#include "spectrabound/maps.hpp"
#include "spectrabound/negativity.hpp"
#include "spectrabound/pred_spectrum.hpp"
#include "spectrabound/spectral_criteria.hpp"

namespace spectrabound::cli {

using nlohmann::json;

namespace {

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput("not a number: '" + std::string(s) + "'");
  }
  return v;
}

// Accepts "0.25" or "36/41".
double parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_real(s);
  const double num = parse_real(std::string_view(s).substr(0, slash));
  const double den = parse_real(std::string_view(s).substr(slash + 1));
  if (den == 0.0) throw InvalidInput("zero denominator in '" + s + "'");
  return num / den;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) out.push_back(parse_fraction(item));
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

Technique sn_technique(const std::string& name) {
  const auto t = technique_from_string(name);
  if (!t || *t == Technique::negfs || *t == Technique::negredfs || *t == Technique::predfs) {
    throw InvalidInput("unknown Schmidt-number technique '" + name +
                       "' (robustness, general, conjecture, negativity)");
  }
  return *t;
}

template <class T>
const T& require(const std::optional<T>& v, const char* flag) {
  if (!v) throw InvalidInput(std::string("missing required flag ") + flag);
  return *v;
}

int emit(std::ostream& out, const json& j, bool satisfied) {
  out << j.dump(2) << '\n';
  return satisfied ? kExitOk : kExitNotSatisfied;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral entanglement certificates for bipartite states", "spectrabound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", build_version() + " (" + build_git_describe() + ")");

  // certify
  auto* certify = app.add_subcommand("certify", "Check a spectrum against a criterion");
  std::string spectrum_path;
  std::string measure;
  std::optional<double> gamma;
  std::optional<int> chi;
  std::optional<int> kappa;
  std::string technique = "general";
  int starts = 64;
  std::uint64_t seed = 0;
  certify->add_option("--spectrum", spectrum_path, "Spectrum JSON file")->required();
  certify->add_option("--measure", measure, "negativity | sn | predfs | negred")
      ->required()
      ->check(CLI::IsMember({"negativity", "sn", "predfs", "negred"}));
  certify->add_option("--gamma", gamma, "Negativity threshold");
  certify->add_option("--chi", chi, "Schmidt number");
  certify->add_option("--kappa", kappa, "Reduction map parameter");
  certify->add_option("--technique", technique,
                      "robustness | general | conjecture | negativity (for --measure sn)");
  certify->add_option("--starts", starts, "Search starts for predfs")->check(CLI::NonNegativeNumber);
  certify->add_option("--seed", seed, "Search seed for predfs");

  // max-gamma
  auto* max_gamma = app.add_subcommand("max-gamma", "Spectral upper bound on the negativity");
  max_gamma->add_option("--spectrum", spectrum_path, "Spectrum JSON file")->required();

  // pps
  auto* pps = app.add_subcommand("pps", "Pseudo-pure state quantities");
  int n = 0;
  int m = 0;
  std::string p_text;
  int pps_kappa = 1;
  pps->add_option("--n", n, "Dimension of A")->required();
  pps->add_option("--m", m, "Dimension of B")->required();
  pps->add_option("--chi", chi, "Schmidt rank of the uniform pure part")->required();
  pps->add_option("--p", p_text, "Noise p in [0, 1], decimal or a/b")->required();
  pps->add_option("--kappa", pps_kappa, "Reduction map parameter");

  // figure
  auto* figure = app.add_subcommand("figure", "Regenerate figure data as CSV");
  std::string figure_name;
  std::string out_path;
  int samples = 1000;
  bool analytic_only = false;
  figure->add_option("--figure", figure_name, "fig3 | fig4 | fig5 | figA1 | figA2")->required();
  figure->add_option("--out", out_path, "CSV path; the manifest goes next to it")->required();
  figure->add_option("--samples", samples, "Haar unitaries per spectrum")->check(CLI::PositiveNumber);
  figure->add_option("--seed", seed, "Base seed");
  figure->add_flag("--analytic-only", analytic_only, "Skip the Haar sweeps");

  // witness
  auto* witness = app.add_subcommand("witness", "Spectral test for a Schmidt-number witness");
  std::string matrix_path;
  witness->add_option("--matrix", matrix_path, "Hermitian matrix JSON file")->required();
  witness->add_option("--chi", chi, "Schmidt number")->required();
  witness->add_option("--n", n, "Dimension of A")->required();
  witness->add_option("--m", m, "Dimension of B")->required();

  // pred-spectrum
  auto* pred = app.add_subcommand("pred-spectrum", "Structured spectrum of the reduction image");
  std::string schmidt;
  pred->add_option("--schmidt", schmidt, "Comma-separated Schmidt coefficients")->required();
  pred->add_option("--kappa", kappa, "Reduction map parameter")->required();
  pred->add_option("--n", n, "Dimension of A")->required();
  pred->add_option("--m", m, "Dimension of B")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << build_version() << " (" << build_git_describe() << ")\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (certify->parsed()) {
      const auto s = load_spectrum(spectrum_path);
      if (measure == "negativity") {
        const auto v = certify_negfs(s, require(gamma, "--gamma"));
        return emit(out, to_json(v), v.satisfied);
      }
      if (measure == "sn") {
        const auto v = certify_snfs(s, require(chi, "--chi"), sn_technique(technique));
        return emit(out, to_json(v), v.satisfied);
      }
      if (measure == "predfs") {
        const auto v = certify_predfs(s, require(kappa, "--kappa"),
                                      SearchBudget{starts, seed, 0});
        return emit(out, to_json(v), v.verdict.satisfied);
      }
      const auto v = certify_negredfs(s, require(kappa, "--kappa"), require(chi, "--chi"),
                                      require(gamma, "--gamma"));
      return emit(out, to_json(v), v.satisfied);
    }

    if (max_gamma->parsed()) {
      return emit(out, to_json(max_gamma_negfs(load_spectrum(spectrum_path))), true);
    }

    if (pps->parsed()) {
      const BipartiteDims dims(n, m);
      const double p = parse_fraction(p_text);
      if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
      if (*chi < 1 || *chi > dims.n()) throw InvalidInput("chi must lie in [1, n]");
      const double alpha = pps_alpha_from_noise(dims.d(), p);
      const auto a = SchmidtVector::uniform(*chi);
      json j{{"n", n},
             {"m", m},
             {"chi", *chi},
             {"p", p},
             {"alpha", alpha},
             {"negativity", pps_negativity_analytic(a, dims, alpha)},
             {"kappa", pps_kappa},
             {"reduction_negativity", pps_reduction_negativity_analytic(a, dims, pps_kappa, alpha)}};
      if (dims.n() >= 2) j["max_gamma"] = to_json(max_gamma_negfs(Spectrum::pseudo_pure(dims, p)));
      return emit(out, j, true);
    }

    if (figure->parsed()) {
      const auto fig = figure_from_string(figure_name);
      if (!fig) throw InvalidInput("unknown figure '" + figure_name + "'");
      FigureParams params;
      params.samples = samples;
      params.seed = seed;
      params.analytic_only = analytic_only;
      const auto table = figure_data(*fig, params);
      const auto manifest = figure_manifest(*fig, params, table);
      const std::string manifest_path = out_path + ".manifest.json";
      std::ofstream csv(out_path, std::ios::binary);
      std::ofstream man(manifest_path, std::ios::binary);
      if (!csv || !man) throw InvalidInput("cannot write " + out_path);
      csv << table.to_csv();
      man << manifest.dump(2) << '\n';
      return emit(out,
                  {{"figure", figure_name},
                   {"rows", table.rows.size()},
                   {"csv", out_path},
                   {"manifest", manifest_path}},
                  true);
    }

    if (witness->parsed()) {
      const BipartiteDims dims(n, m);
      const auto b = witness_spectral_bounds(load_hermitian(matrix_path), *chi, dims);
      return emit(out, to_json(b), b.min_ok && b.max_ok);
    }

    if (pred->parsed()) {
      const BipartiteDims dims(n, m);
      const auto a = SchmidtVector::normalized(parse_list(schmidt));
      const auto s = xi_spectrum_structured(a, *kappa, dims);
      json j = to_json(s);
      j["max_deviation"] = structured_deviation(s, a, *kappa, dims);
      return emit(out, j, true);
    }
  } catch (const GammaOutOfRange& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const SingularMap& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  err << "error: no command\n";
  return kExitInputError;
}

}  // namespace spectrabound::cli
