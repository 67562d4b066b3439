#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "spectrabound/linalg.hpp"
#include "spectrabound/spectral_criteria.hpp"

namespace spectrabound {

/// Relative tolerance under which two Schmidt coefficients form one group.
inline constexpr double kGroupingTol = 1e-9;

/// Distinct Schmidt coefficients b_1 > ... > b_q with multiplicities m_i.
struct CompressedSchmidt {
  std::vector<double> distinct;
  std::vector<int> mults;

  int q() const noexcept { return static_cast<int>(distinct.size()); }
  int rank() const noexcept;
};

CompressedSchmidt compress_schmidt(const SchmidtVector& a, double grouping_tol = kGroupingTol);

/// F(y) = 1 - (1/kappa) sum_i m_i b_i^2 / (b_i^2 - y).
double secular_function(const CompressedSchmidt& cs, int kappa, double y);

/// The q roots eta_1 > ... > eta_q of F, one per interlacing bracket
/// (b_{i+1}^2, b_i^2), the last one in (-1/kappa, b_q^2).
std::vector<double> secular_roots(const CompressedSchmidt& cs, int kappa);

struct SpectrumBlock {
  double value = 0.0;
  int multiplicity = 0;
};

/// Eigenvalues of xi_kappa(|psi><psi|) for psi = sum_i a_i |ii>.
struct StructuredSpectrum {
  /// b_i^2 with multiplicity m_i M - 1 (blocks of multiplicity 0 are kept).
  std::vector<SpectrumBlock> blocks;
  std::vector<double> etas;
  int null_mult = 0;
  /// The two sources of each b_i^2 block: m_i (M-1) copies from |ij>, j != i,
  /// and m_i - 1 copies inside the span of {|ii>}.
  std::vector<int> offdiag_mults;
  std::vector<int> ablock_mults;
  /// eta_q minus its value from the trace identity.
  double trace_residual = 0.0;

  int total_count() const noexcept;
  /// Full multiset, sorted descending.
  std::vector<double> descending() const;
};

StructuredSpectrum xi_spectrum_structured(const SchmidtVector& a, int kappa, BipartiteDims dims);

/// Largest gap between the structured multiset and the eigenvalues of the
/// explicitly built xi_kappa(|psi><psi|), both sorted.
double structured_deviation(const StructuredSpectrum& s, const SchmidtVector& a, int kappa,
                            BipartiteDims dims);

/// min over unitaries U of Tr[U rho U^dagger xi], given only the spectra:
/// ascending lambda paired with descending gamma.
double rearrangement_min(const Spectrum& state_spectrum, const StructuredSpectrum& structured);

/// U with Tr[U rho U^dagger h] equal to the ascending/descending pairing.
ComplexMatrix aligning_unitary(const DensityMatrix& rho, const HermitianMatrix& h);

struct SearchBudget {
  int starts = 64;
  std::uint64_t seed = 0;
  /// Nelder-Mead iterations per start; 0 picks 200 n.
  int local_iterations = 0;
};

enum class PredfsStatus { certified, falsified, numerically_supported };

std::string_view to_string(PredfsStatus s);

struct PredfsVerdict {
  CriterionVerdict verdict;
  PredfsStatus status = PredfsStatus::numerically_supported;
  /// Smallest rearrangement minimum found by the search (absent if the fast
  /// path decided).
  std::optional<double> best_value;
  /// Schmidt vector reaching best_value; a violation witness when falsified.
  std::optional<SchmidtVector> witness;
};

/// satisfied is true only for the certified status.
PredfsVerdict certify_predfs(const Spectrum& spectrum, int kappa, SearchBudget search = {});

struct PredfsRangeEndpoints {
  /// Upper endpoint r (kappa chi - 1)/(r - chi).
  Rational kappa_reading;
  /// Upper endpoint r (M chi - 1)/(r - chi); agrees with predfs at r = n,
  /// chi = kappa.
  Rational m_reading;
};

PredfsRangeEndpoints predfs_range_endpoints(int r, int kappa, int chi, int m);

}  // namespace spectrabound
