#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectrabound/linalg.hpp"

namespace spectrabound {

enum class MeasureKind { negativity, reduction_negativity, rearrangement };

std::string_view to_string(MeasureKind k);

struct Measure {
  MeasureKind kind = MeasureKind::negativity;
  /// Map parameter for reduction_negativity and rearrangement.
  int kappa = 1;
  /// Pure state whose xi_kappa image is paired with rho (rearrangement only).
  std::optional<SchmidtVector> psi;
};

/// Value of the measure on a single state.
double evaluate_measure(const DensityMatrix& rho, const Measure& measure);

struct SweepConfig {
  BipartiteDims dims{2, 2};
  /// Noise values p in [0, 1]; used by figure sweeps.
  std::vector<double> p_grid;
  int n_unitaries = 1000;
  std::uint64_t base_seed = 0;
  Measure measure;

  void validate() const;
};

struct EmpiricalSummary {
  double max = 0.0;
  double min = 0.0;
  double median = 0.0;
  double p90 = 0.0;
  std::uint64_t seed_of_argmax = 0;
  int samples = 0;
};

/// Worker count for sweeps: SPECTRABOUND_THREADS if set, else hardware threads.
int sweep_threads();

/// Measure of U_s diag(lambda) U_s^dagger for s = 1..n_unitaries, with U_s the
/// Haar unitary of seed base_seed + s.
EmpiricalSummary empirical_max(const Spectrum& spectrum, const SweepConfig& cfg);

enum class Figure { fig3, fig4, fig5, figA1, figA2 };

std::string_view to_string(Figure f);
std::optional<Figure> figure_from_string(std::string_view name);

struct FigureParams {
  /// Defaults: 6x6, except fig4 which is always 2x2.
  std::optional<BipartiteDims> dims;
  /// Defaults to 51 evenly spaced points on [0, 1].
  std::vector<double> p_grid;
  int samples = 1000;
  std::uint64_t seed = 0;
  /// Skip the Haar sweeps and leave empirical_max empty.
  bool analytic_only = false;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  /// Header row plus rows; reals with 17 significant digits.
  std::string to_csv() const;
  std::size_t column(std::string_view name) const;
};

std::vector<double> default_p_grid();

Table figure_data(Figure figure, const FigureParams& params);

std::string build_version();
std::string build_git_describe();

nlohmann::json figure_manifest(Figure figure, const FigureParams& params, const Table& table);

enum class NoiseSource { fidelity, purity };

std::string_view to_string(NoiseSource s);

struct NoiseEstimate {
  double p_hat = 0.0;
  NoiseSource source = NoiseSource::fidelity;
};

/// F = (1 - p) + p/d for a depolarized pure state.
double pps_fidelity(double p, BipartiteDims dims);
/// Tr rho^2 = (1 - p)^2 + 2 p (1 - p)/d + p^2/d.
double pps_purity(double p, BipartiteDims dims);

NoiseEstimate noise_from_fidelity(double f, BipartiteDims dims);
NoiseEstimate noise_from_purity(double purity, BipartiteDims dims);

struct OverlapSummary {
  double mean = 0.0;
  double std_error = 0.0;
  int pairs = 0;
};

/// Mean of Tr(rho sigma) over independent Haar pure states, both depolarized
/// with the same p. Pair i uses seeds seed + 2i and seed + 2i + 1.
OverlapSummary pairwise_overlap_check(BipartiteDims dims, double p, int n_pairs,
                                      std::uint64_t seed);

}  // namespace spectrabound
