#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include <boost/rational.hpp>

#include "spectrabound/linalg.hpp"

namespace spectrabound {

using Rational = boost::rational<long long>;

/// Absolute tolerance applied to both prongs of the hull test.
inline constexpr double kCertTol = 1e-12;

/// Parameter band [alpha_minus, alpha_plus] of the reduction-map family.
struct HullParams {
  double alpha_minus = -1.0;
  double alpha_plus = 0.0;
};

/// K = 1 - alpha_+/alpha_- and the pivot index c of the hull inequality.
struct HullCoefficients {
  double k_coeff = 0.0;
  int c_index = 1;
  /// Unclamped ceiling argument, kept for diagnostics.
  double c_raw = 0.0;
};

enum class Technique {
  negfs,
  sn_robustness,
  sn_general,
  sn_conjecture,
  sn_negativity,
  predfs,
  negredfs,
};

enum class CertificateKind { certified, superset_only, conjectural };

enum class BindingCondition { min_eigenvalue, hull_inequality, neither };

std::string_view to_string(Technique t);
std::string_view to_string(CertificateKind k);
std::string_view to_string(BindingCondition b);
std::optional<Technique> technique_from_string(std::string_view name);

/// Fixed by the technique: only negfs, sn_robustness, sn_general and negredfs
/// certify membership in the target set.
CertificateKind certificate_kind_for(Technique t);

struct CriterionVerdict {
  bool satisfied = false;
  CertificateKind certificate_kind = CertificateKind::certified;
  Technique technique = Technique::negfs;
  /// chi for Schmidt-number techniques, kappa for predfs, gamma otherwise.
  double parameter = 0.0;
  double alpha_used = 0.0;
  BindingCondition binding_condition = BindingCondition::neither;
  /// Slack of the condition that fired, or the larger (negative) slack.
  double slack = 0.0;
  std::optional<int> tau;
};

struct HullTestResult {
  bool holds = false;
  BindingCondition binding = BindingCondition::neither;
  double min_eigenvalue_slack = 0.0;
  double hull_slack = 0.0;
  HullCoefficients coeffs;

  double slack() const noexcept;
};

/// Throws InvalidInput unless alpha_minus < 0 and alpha_minus != alpha_plus.
HullCoefficients hull_coefficients(HullParams params, int d);

/// True iff lambda_0 >= 1/(D + alpha_+) or the hull inequality
/// K sum_{i<c} lambda_i + (D - K c + alpha_+) lambda_c >= 1 holds.
/// `ascending` must be sorted non-decreasing.
HullTestResult hull_test_holds(std::span<const double> ascending, HullParams params);
HullTestResult hull_test_holds(const Spectrum& spectrum, HullParams params);

/// Raised when gamma is too large for a spectral negativity certificate.
class GammaOutOfRange : public std::out_of_range {
 public:
  GammaOutOfRange(double gamma, double gamma_max);
  double gamma() const noexcept { return gamma_; }
  double gamma_max() const noexcept { return gamma_max_; }

 private:
  double gamma_;
  double gamma_max_;
};

struct NegfsAlpha {
  double alpha_plus = 0.0;
  int tau = 2;
};

/// alpha_+ for the negativity threshold gamma. tau is the Schmidt rank of the
/// uniform pseudo-pure state that is most entangled at that alpha; the tau = n
/// bracket extends to gamma < (n-1)/2.
NegfsAlpha negfs_alpha_plus(double gamma, BipartiteDims dims);

CriterionVerdict certify_negfs(const Spectrum& spectrum, double gamma);

struct MaxGammaResult {
  double gamma = 0.0;
  double alpha = 0.0;
  int tau = 2;
  /// No threshold below (n-1)/2 is certifiable, e.g. rank-deficient spectra.
  bool trivial = false;
};

/// Smallest gamma for which certify_negfs succeeds: the spectral upper bound
/// on the negativity of U rho U^dagger over all U.
MaxGammaResult max_gamma_negfs(const Spectrum& spectrum);

/// Table of alpha_+(chi) per technique, in exact arithmetic.
///   sn_robustness  2(n chi - 1)/(n - chi)          (n = m only)
///   sn_general     chi + 1
///   sn_conjecture  2(2 chi^2 - 1)
///   sn_negativity  (n m (chi - 1) + n (n - 1))/(n - chi)
///   predfs         n (m chi - 1)/(n - chi)
Rational snfs_alpha(Technique technique, int chi, BipartiteDims dims);

CriterionVerdict certify_snfs(const Spectrum& spectrum, int chi, Technique technique);

/// alpha_LB <= alpha_C <= alpha_NEG <= alpha_RED, robustness row only for n = m.
bool ordering_check(int chi, BipartiteDims dims);

struct WitnessBounds {
  bool min_ok = false;
  bool max_ok = false;
  double slack_min = 0.0;
  double slack_max = 0.0;
  double alpha_plus = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double trace = 0.0;
};

/// Spectral necessary conditions for a Schmidt-number-chi witness:
/// lambda_min >= -Tr(W)/alpha_+ and lambda_max <= Tr(W). alpha_+ is the
/// certified robustness value when n = m, chi + 1 otherwise.
WitnessBounds witness_spectral_bounds(const HermitianMatrix& w, int chi, BipartiteDims dims);

}  // namespace spectrabound
