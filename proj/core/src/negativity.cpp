#include "spectrabound/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spectrabound/maps.hpp"
#include "spectrabound/pred_spectrum.hpp"

namespace spectrabound {

std::string_view to_string(NegativityFormula f) {
  switch (f) {
    case NegativityFormula::matrix_exact: return "matrix_exact";
    case NegativityFormula::pps_analytic: return "pps_analytic";
    case NegativityFormula::reduction_map: return "reduction_map";
  }
  return "unknown";
}

namespace {

struct NegativePart {
  double sum = 0.0;
  int count = 0;
  double abs_total = 0.0;
};

NegativePart negative_part(const HermitianMatrix& h) {
  NegativePart out;
  for (double ev : eigvals_hermitian(h)) {
    out.abs_total += std::abs(ev);
    if (ev < -kNegEigTol) {
      out.sum -= ev;
      ++out.count;
    }
  }
  return out;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidInput("alpha must be >= 0");
}

void check_rank(const SchmidtVector& a, BipartiteDims dims) {
  if (a.rank() > dims.n()) {
    throw InvalidInput("Schmidt rank " + std::to_string(a.rank()) + " exceeds n = " +
                       std::to_string(dims.n()));
  }
}

}  // namespace

NegativityReport negativity(const DensityMatrix& rho, Subsystem subsystem) {
  const auto part = negative_part(partial_transpose(rho, subsystem));
  NegativityReport r;
  r.value = part.sum;
  r.negative_eigenvalue_count = part.count;
  r.formula = NegativityFormula::matrix_exact;
  r.trace_norm_form = std::max(0.0, 0.5 * (part.abs_total - 1.0));
  return r;
}

double pps_negativity_analytic(const SchmidtVector& a, BipartiteDims dims, double alpha) {
  check_alpha(alpha);
  check_rank(a, dims);
  const auto c = a.coeffs();
  if (std::isinf(alpha)) {
    const double s = std::accumulate(c.begin(), c.end(), 0.0);
    return std::max(0.0, 0.5 * (s * s - 1.0));
  }
  const double d = dims.d();
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double t = alpha * c[i] * c[j];
      if (t > 1.0) total += t - 1.0;
    }
  }
  return total / (d + alpha);
}

double max_pps_negativity_for_rank(int chi, BipartiteDims dims, double alpha) {
  if (chi < 1 || chi > dims.n()) {
    throw InvalidInput("chi must lie in [1, n], got " + std::to_string(chi));
  }
  return pps_negativity_analytic(SchmidtVector::uniform(chi), dims, alpha);
}

double uniform_rank_closed_form(int chi, BipartiteDims dims, double alpha) {
  check_alpha(alpha);
  const double x = chi;
  if (std::isinf(alpha)) return 0.5 * (x - 1.0);
  return (alpha * (x - 1.0) / 2.0 - x * (x - 1.0) / 2.0) / (dims.d() + alpha);
}

PpsEnvelope max_pps_negativity(BipartiteDims dims, double alpha) {
  PpsEnvelope best{0.0, 1};
  for (int chi = 2; chi <= dims.n(); ++chi) {
    const double v = max_pps_negativity_for_rank(chi, dims, alpha);
    if (v > best.value) best = {v, chi};
  }
  return best;
}

std::pair<double, double> rank_crossing_alpha(int chi) {
  if (chi < 1) throw InvalidInput("chi must be at least 1");
  return {2.0 * (chi - 1), 2.0 * chi};
}

double negativity_bound_from_mk(double m_k, int k, int n) {
  if (k < 1 || k >= n) throw InvalidInput("k must satisfy 1 <= k < n");
  const double top = static_cast<double>(n - k) / n;
  if (!(m_k >= 0.0) || m_k > top + 1e-12) {
    throw InvalidInput("m_k = " + std::to_string(m_k) + " outside [0, (n-k)/n]");
  }
  const double m = std::min(m_k, top);
  const double x = std::sqrt((1.0 - m) / k);
  const double y = std::sqrt(m / (n - k));
  const double s = k * x + (n - k) * y;
  return 0.5 * s * s - 0.5;
}

SchmidtVector two_plateau_vector(double m_k, int k, int n) {
  negativity_bound_from_mk(m_k, k, n);
  const double m = std::min(m_k, static_cast<double>(n - k) / n);
  std::vector<double> raw(static_cast<std::size_t>(k), std::sqrt((1.0 - m) / k));
  raw.insert(raw.end(), static_cast<std::size_t>(n - k), std::sqrt(m / (n - k)));
  return SchmidtVector::normalized(std::move(raw));
}

int sn_floor_from_negativity(double neg) {
  if (!(neg >= 0.0) || !std::isfinite(neg)) throw InvalidInput("negativity must be >= 0");
  // neg = (chi-1)/2 exactly still allows chi.
  return static_cast<int>(std::ceil(2.0 * neg - 1e-12)) + 1;
}

ConcurrenceBounds concurrence_bounds(double neg, int chi) {
  if (!(neg >= 0.0) || !std::isfinite(neg)) throw InvalidInput("negativity must be >= 0");
  if (chi < 1) throw InvalidInput("chi must be at least 1");
  if (chi == 1) {
    if (neg > kNegEigTol) {
      throw InvalidInput("Schmidt number 1 is inconsistent with negativity " + std::to_string(neg));
    }
    return {0.0, 0.0};
  }
  const double x = chi;
  return {2.0 * std::sqrt(2.0 / (x * (x - 1.0))) * neg,
          std::min(2.0 * neg, std::sqrt(2.0 * (x - 1.0) / x))};
}

NegativityReport reduction_negativity(const DensityMatrix& rho, int kappa) {
  const auto part = negative_part(xi_kappa(rho, kappa));
  NegativityReport r;
  r.value = part.sum;
  r.negative_eigenvalue_count = part.count;
  r.formula = NegativityFormula::reduction_map;
  r.trace_norm_form = 0.5 * (part.abs_total - (rho.dims().m() - 1.0));
  return r;
}

double pps_reduction_negativity_analytic(const SchmidtVector& a, BipartiteDims dims, int kappa,
                                         double alpha) {
  check_alpha(alpha);
  check_rank(a, dims);
  if (alpha == 0.0) return 0.0;
  const double eta_q = xi_spectrum_structured(a, kappa, dims).etas.back();
  if (std::isinf(alpha)) return std::max(0.0, -eta_q);
  const double shift = dims.m() - 1.0 / kappa;
  return std::max(0.0, -(shift + alpha * eta_q) / (dims.d() + alpha));
}

namespace {

void check_negredfs(int kappa, int chi, double gamma, BipartiteDims dims) {
  if (kappa < 1) throw InvalidInput("kappa must be at least 1");
  if (chi <= kappa || chi > dims.n()) {
    throw InvalidInput("need kappa < chi <= n, got kappa = " + std::to_string(kappa) +
                       ", chi = " + std::to_string(chi));
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInput("gamma must be >= 0");
}

}  // namespace

double negredfs_alpha_plus(int kappa, int chi, double gamma, BipartiteDims dims) {
  check_negredfs(kappa, chi, gamma, dims);
  const double k = kappa;
  const double x = chi;
  const double denom = x - k - gamma * k * x;
  if (!(denom > 0.0)) {
    throw InvalidInput("gamma = " + std::to_string(gamma) +
                       " reaches the rank-chi limit 1/kappa - 1/chi; denominator vanishes");
  }
  return x * (k * gamma * dims.d() + k * dims.m() - 1.0) / denom;
}

double negredfs_alpha_printed(int kappa, int chi, double gamma, BipartiteDims dims) {
  check_negredfs(kappa, chi, gamma, dims);
  const double k = kappa;
  const double x = chi;
  const double m = dims.m();
  const double denom = gamma * x * k + x - k;
  if (denom == 0.0) throw InvalidInput("degenerate denominator");
  return x * (k * (m - gamma * m * dims.n()) - 1.0) / denom;
}

CriterionVerdict certify_negredfs(const Spectrum& spectrum, int kappa, int chi, double gamma) {
  const double alpha = negredfs_alpha_plus(kappa, chi, gamma, spectrum.dims());
  const auto hull = hull_test_holds(spectrum, {-1.0, alpha});
  CriterionVerdict v;
  v.satisfied = hull.holds;
  v.technique = Technique::negredfs;
  v.certificate_kind = certificate_kind_for(Technique::negredfs);
  v.parameter = gamma;
  v.alpha_used = alpha;
  v.binding_condition = hull.binding;
  v.slack = hull.slack();
  return v;
}

}  // namespace spectrabound
