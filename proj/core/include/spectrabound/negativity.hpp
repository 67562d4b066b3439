#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "spectrabound/linalg.hpp"
#include "spectrabound/spectral_criteria.hpp"

namespace spectrabound {

/// Eigenvalues above -kNegEigTol count as zero.
inline constexpr double kNegEigTol = 1e-12;

enum class NegativityFormula { matrix_exact, pps_analytic, reduction_map };

std::string_view to_string(NegativityFormula f);

struct NegativityReport {
  double value = 0.0;
  int negative_eigenvalue_count = 0;
  NegativityFormula formula = NegativityFormula::matrix_exact;
  /// matrix_exact: (||rho^T||_1 - 1)/2.
  /// reduction_map: (||xi||_1 - (M-1))/2, which differs from value for kappa > 1.
  std::optional<double> trace_norm_form;

  bool ppt() const noexcept { return negative_eigenvalue_count == 0; }
};

/// Absolute sum of the negative eigenvalues of the partial transpose.
NegativityReport negativity(const DensityMatrix& rho, Subsystem subsystem = Subsystem::B);

/// Negativity of (1 + alpha |psi><psi|)/(d + alpha) for psi with Schmidt
/// coefficients a: each pair i < j with a_i a_j > 1/alpha contributes
/// (alpha a_i a_j - 1)/(d + alpha). alpha = +inf gives sum_{i<j} a_i a_j.
double pps_negativity_analytic(const SchmidtVector& a, BipartiteDims dims, double alpha);

/// Value for the uniform rank-chi vector, the maximizer at fixed rank.
double max_pps_negativity_for_rank(int chi, BipartiteDims dims, double alpha);

/// (alpha (chi-1)/2 - chi (chi-1)/2)/(d + alpha), valid only for alpha > chi.
double uniform_rank_closed_form(int chi, BipartiteDims dims, double alpha);

struct PpsEnvelope {
  double value = 0.0;
  int chi = 1;
};

/// Maximum over chi = 1..n of max_pps_negativity_for_rank.
PpsEnvelope max_pps_negativity(BipartiteDims dims, double alpha);

/// (2(chi-1), 2 chi): alpha range over which rank chi is the most negative.
std::pair<double, double> rank_crossing_alpha(int chi);

/// (k x + (n-k) y)^2/2 - 1/2, x = sqrt((1-m_k)/k), y = sqrt(m_k/(n-k)).
double negativity_bound_from_mk(double m_k, int k, int n);

/// k coefficients x followed by n-k coefficients y (zeros dropped).
SchmidtVector two_plateau_vector(double m_k, int k, int n);

/// Smallest chi with neg <= (chi-1)/2.
int sn_floor_from_negativity(double neg);

struct ConcurrenceBounds {
  double lower = 0.0;
  double upper = 0.0;
};

ConcurrenceBounds concurrence_bounds(double neg, int chi);

/// Absolute sum of negative eigenvalues of xi_kappa(rho).
NegativityReport reduction_negativity(const DensityMatrix& rho, int kappa);

/// -min(0, ((M - 1/kappa) + alpha eta_q)/(d + alpha)) with eta_q the smallest
/// eigenvalue of xi_kappa(|psi><psi|).
double pps_reduction_negativity_analytic(const SchmidtVector& a, BipartiteDims dims, int kappa,
                                         double alpha);

/// alpha_+ at which the uniform rank-chi PPS reaches reduction negativity gamma:
/// chi (kappa gamma d + kappa m - 1)/(chi - kappa - gamma kappa chi).
double negredfs_alpha_plus(int kappa, int chi, double gamma, BipartiteDims dims);

/// chi (kappa (m - gamma m n) - 1)/(gamma chi kappa + chi - kappa), kept for
/// comparison; it agrees with negredfs_alpha_plus at gamma = 0 only.
double negredfs_alpha_printed(int kappa, int chi, double gamma, BipartiteDims dims);

CriterionVerdict certify_negredfs(const Spectrum& spectrum, int kappa, int chi, double gamma);

}  // namespace spectrabound
