#include "spectrabound/spectral_criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace spectrabound {

std::string_view to_string(Technique t) {
  switch (t) {
    case Technique::negfs: return "negfs";
    case Technique::sn_robustness: return "sn_robustness";
    case Technique::sn_general: return "sn_general";
    case Technique::sn_conjecture: return "sn_conjecture";
    case Technique::sn_negativity: return "sn_negativity";
    case Technique::predfs: return "predfs";
    case Technique::negredfs: return "negredfs";
  }
  return "unknown";
}

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::certified: return "certified";
    case CertificateKind::superset_only: return "superset_only";
    case CertificateKind::conjectural: return "conjectural";
  }
  return "unknown";
}

std::string_view to_string(BindingCondition b) {
  switch (b) {
    case BindingCondition::min_eigenvalue: return "min_eigenvalue";
    case BindingCondition::hull_inequality: return "hull_inequality";
    case BindingCondition::neither: return "neither";
  }
  return "unknown";
}

std::optional<Technique> technique_from_string(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, Technique>, 12> kNames{{
      {"negfs", Technique::negfs},
      {"sn_robustness", Technique::sn_robustness},
      {"robustness", Technique::sn_robustness},
      {"sn_general", Technique::sn_general},
      {"general", Technique::sn_general},
      {"sn_conjecture", Technique::sn_conjecture},
      {"conjecture", Technique::sn_conjecture},
      {"sn_negativity", Technique::sn_negativity},
      {"negativity", Technique::sn_negativity},
      {"predfs", Technique::predfs},
      {"reduction", Technique::predfs},
      {"negredfs", Technique::negredfs},
  }};
  for (const auto& [key, t] : kNames) {
    if (key == name) return t;
  }
  return std::nullopt;
}

CertificateKind certificate_kind_for(Technique t) {
  switch (t) {
    case Technique::negfs:
    case Technique::sn_robustness:
    case Technique::sn_general:
    case Technique::negredfs:
      return CertificateKind::certified;
    case Technique::sn_negativity:
    case Technique::predfs:
      return CertificateKind::superset_only;
    case Technique::sn_conjecture:
      return CertificateKind::conjectural;
  }
  return CertificateKind::conjectural;
}

// ---------------------------------------------------------------------------
// Hull hull

double HullTestResult::slack() const noexcept {
  switch (binding) {
    case BindingCondition::min_eigenvalue: return min_eigenvalue_slack;
    case BindingCondition::hull_inequality: return hull_slack;
    case BindingCondition::neither: break;
  }
  return std::max(min_eigenvalue_slack, hull_slack);
}

HullCoefficients hull_coefficients(HullParams params, int d) {
  const double am = params.alpha_minus;
  const double ap = params.alpha_plus;
  if (d < 2) throw InvalidInput("hull coefficients need d >= 2");
  if (!(am < 0.0)) throw InvalidInput("hull coefficients need alpha_minus < 0");
  if (!(ap >= 0.0) || !std::isfinite(ap)) {
    throw InvalidInput("hull coefficients need finite alpha_plus >= 0");
  }
  if (am == ap) throw InvalidInput("alpha_minus and alpha_plus coincide");
  HullCoefficients out;
  out.k_coeff = 1.0 - ap / am;
  out.c_raw = (ap + am * (d - 1 + ap)) / (am - ap);
  // When c_raw is an integer, the inequality for c and c + 1 coincides (the
  // coefficient of lambda_{c+1} vanishes), so rounding down a hair is safe.
  const double c = std::ceil(out.c_raw - 1e-9 * std::max(1.0, std::abs(out.c_raw)));
  out.c_index = static_cast<int>(std::clamp(c, 1.0, static_cast<double>(d - 1)));
  return out;
}

HullTestResult hull_test_holds(std::span<const double> ascending, HullParams params) {
  const int d = static_cast<int>(ascending.size());
  HullTestResult r;
  r.coeffs = hull_coefficients(params, d);
  const double ap = params.alpha_plus;
  const double lambda0 = ascending.front();

  r.min_eigenvalue_slack = lambda0 - 1.0 / (d + ap);
  const bool min_ok = lambda0 * (d + ap) >= 1.0 - kCertTol;

  const double k = r.coeffs.k_coeff;
  const int c = r.coeffs.c_index;
  double head = 0.0;
  for (int i = 0; i < c; ++i) head += ascending[static_cast<std::size_t>(i)];
  const double lhs = k * head + (d - k * c + ap) * ascending[static_cast<std::size_t>(c)];
  r.hull_slack = lhs - 1.0;
  const bool hull_ok = r.hull_slack >= -kCertTol;

  r.holds = min_ok || hull_ok;
  r.binding = min_ok    ? BindingCondition::min_eigenvalue
              : hull_ok ? BindingCondition::hull_inequality
                        : BindingCondition::neither;
  return r;
}

HullTestResult hull_test_holds(const Spectrum& spectrum, HullParams params) {
  return hull_test_holds(spectrum.values(), params);
}

// ---------------------------------------------------------------------------
// Negativity from spectrum

GammaOutOfRange::GammaOutOfRange(double gamma, double gamma_max)
    : std::out_of_range("gamma = " + std::to_string(gamma) +
                        " is beyond spectral certification (gamma_max = " +
                        std::to_string(gamma_max) + ")"),
      gamma_(gamma),
      gamma_max_(gamma_max) {}

NegfsAlpha negfs_alpha_plus(double gamma, BipartiteDims dims) {
  const int n = dims.n();
  const double d = dims.d();
  if (n < 2) throw InvalidInput("negativity thresholds need n >= 2");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInput("gamma must be >= 0");
  const double gamma_max = 0.5 * (n - 1);
  if (gamma >= gamma_max) throw GammaOutOfRange(gamma, gamma_max);

  // The tau = 1 bracket is empty, and tau's upper end equals tau+1's lower end.
  int tau = n;
  for (int t = 2; t < n; ++t) {
    const double upper = t * (t - 1.0) / (2.0 * (2.0 * t + d));
    if (gamma < upper) {
      tau = t;
      break;
    }
  }
  const double alpha = (tau * (tau - 1.0) + 2.0 * d * gamma) / (tau - 2.0 * gamma - 1.0);
  return {alpha, tau};
}

CriterionVerdict certify_negfs(const Spectrum& spectrum, double gamma) {
  const auto [alpha, tau] = negfs_alpha_plus(gamma, spectrum.dims());
  const auto hull = hull_test_holds(spectrum, {-1.0, alpha});
  CriterionVerdict v;
  v.satisfied = hull.holds;
  v.technique = Technique::negfs;
  v.certificate_kind = certificate_kind_for(Technique::negfs);
  v.parameter = gamma;
  v.alpha_used = alpha;
  v.binding_condition = hull.binding;
  v.slack = hull.slack();
  v.tau = tau;
  return v;
}

MaxGammaResult max_gamma_negfs(const Spectrum& spectrum) {
  const BipartiteDims dims = spectrum.dims();
  const int n = dims.n();
  const double d = dims.d();
  if (n < 2) return {0.0, std::numeric_limits<double>::infinity(), 1, false};

  const auto certified = [&](double g) {
    return hull_test_holds(spectrum, {-1.0, negfs_alpha_plus(g, dims).alpha_plus}).holds;
  };
  const auto result_at = [&](double g, bool trivial) {
    const auto a = negfs_alpha_plus(g, dims);
    return MaxGammaResult{g, a.alpha_plus, a.tau, trivial};
  };

  if (certified(0.0)) return result_at(0.0, false);

  // Probe alpha ~ 1e13 on the rank-n branch; failing there means only the
  // trivial bound (n-1)/2 is available.
  constexpr double kAlphaProbe = 1e13;
  const double hi_probe = (n - 1.0) * (kAlphaProbe - n) / (2.0 * (d + kAlphaProbe));
  if (!certified(hi_probe)) {
    return {0.5 * (n - 1), std::numeric_limits<double>::infinity(), n, true};
  }

  double lo = 0.0;
  double hi = hi_probe;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (certified(mid) ? hi : lo) = mid;
  }
  return result_at(hi, false);
}

// ---------------------------------------------------------------------------
// Schmidt number from spectrum

Rational snfs_alpha(Technique technique, int chi, BipartiteDims dims) {
  const long long n = dims.n();
  const long long m = dims.m();
  const long long x = chi;
  if (chi < 1) throw InvalidInput("chi must be at least 1");
  if (x >= n) {
    throw InvalidInput("chi = " + std::to_string(chi) + " >= n = " + std::to_string(n) +
                       ": every state has Schmidt number <= n");
  }
  switch (technique) {
    case Technique::sn_robustness:
      if (n != m) throw InvalidInput("the robustness bound holds for n = m only");
      return Rational(2 * (n * x - 1), n - x);
    case Technique::sn_general:
      return Rational(x + 1);
    case Technique::sn_conjecture:
      return Rational(2 * (2 * x * x - 1));
    case Technique::sn_negativity:
      return Rational(n * m * (x - 1) + n * (n - 1), n - x);
    case Technique::predfs:
      return Rational(n * (m * x - 1), n - x);
    case Technique::negfs:
    case Technique::negredfs:
      break;
  }
  throw InvalidInput("technique " + std::string(to_string(technique)) +
                     " has no Schmidt-number alpha");
}

CriterionVerdict certify_snfs(const Spectrum& spectrum, int chi, Technique technique) {
  const double alpha = boost::rational_cast<double>(snfs_alpha(technique, chi, spectrum.dims()));
  const auto hull = hull_test_holds(spectrum, {-1.0, alpha});
  CriterionVerdict v;
  v.satisfied = hull.holds;
  v.technique = technique;
  v.certificate_kind = certificate_kind_for(technique);
  v.parameter = chi;
  v.alpha_used = alpha;
  v.binding_condition = hull.binding;
  v.slack = hull.slack();
  return v;
}

bool ordering_check(int chi, BipartiteDims dims) {
  const Rational lb = dims.n() == dims.m() ? snfs_alpha(Technique::sn_robustness, chi, dims)
                                           : snfs_alpha(Technique::sn_general, chi, dims);
  const Rational c = snfs_alpha(Technique::sn_conjecture, chi, dims);
  const Rational neg = snfs_alpha(Technique::sn_negativity, chi, dims);
  const Rational red = snfs_alpha(Technique::predfs, chi, dims);
  return lb <= c && c <= neg && neg <= red;
}

// ---------------------------------------------------------------------------
// Witness spectra

WitnessBounds witness_spectral_bounds(const HermitianMatrix& w, int chi, BipartiteDims dims) {
  if (w.dim() != dims.d()) {
    throw InvalidInput("witness dimension " + std::to_string(w.dim()) +
                       " does not match bipartition " + to_string(dims));
  }
  const double trace = w.trace();
  if (!(trace > 0.0)) throw InvalidInput("witness must have positive trace");
  const Technique row = dims.n() == dims.m() ? Technique::sn_robustness : Technique::sn_general;
  const double alpha = boost::rational_cast<double>(snfs_alpha(row, chi, dims));

  const auto ev = eigvals_hermitian(w);
  WitnessBounds b;
  b.alpha_plus = alpha;
  b.trace = trace;
  b.lambda_min = ev.front();
  b.lambda_max = ev.back();
  b.slack_min = b.lambda_min + trace / alpha;
  b.slack_max = trace - b.lambda_max;
  b.min_ok = b.slack_min >= -1e-9;
  b.max_ok = b.slack_max >= -1e-9;
  return b;
}

}  // namespace spectrabound
