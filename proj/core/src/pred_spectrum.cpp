#include "spectrabound/pred_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "spectrabound/maps.hpp"

namespace spectrabound {

int CompressedSchmidt::rank() const noexcept {
  return std::accumulate(mults.begin(), mults.end(), 0);
}

CompressedSchmidt compress_schmidt(const SchmidtVector& a, double grouping_tol) {
  CompressedSchmidt cs;
  const auto coeffs = a.coeffs();
  std::size_t i = 0;
  while (i < coeffs.size()) {
    const double head = coeffs[i];
    std::size_t j = i;
    double sum = 0.0;
    while (j < coeffs.size() && head - coeffs[j] <= grouping_tol * head) {
      sum += coeffs[j];
      ++j;
    }
    const int count = static_cast<int>(j - i);
    cs.distinct.push_back(sum / count);
    cs.mults.push_back(count);
    i = j;
  }
  return cs;
}

double secular_function(const CompressedSchmidt& cs, int kappa, double y) {
  double s = 0.0;
  for (int i = 0; i < cs.q(); ++i) {
    const double b2 = cs.distinct[i] * cs.distinct[i];
    s += cs.mults[i] * b2 / (b2 - y);
  }
  return 1.0 - s / kappa;
}

namespace {

// F decreases from +inf to -inf across (lo, hi).
double bracketed_root(const CompressedSchmidt& cs, int kappa, double lo, double hi) {
  const auto f = [&](double y) { return secular_function(cs, kappa, y); };
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double flo = f(lo);
  const double fhi = f(hi);
  double best = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  if (std::isfinite(flo) && std::isfinite(fhi) && fhi != flo) {
    const double y = lo - flo * (hi - lo) / (fhi - flo);
    if (y > lo && y < hi && std::abs(f(y)) < std::abs(f(best))) best = y;
  }
  return best;
}

}  // namespace

std::vector<double> secular_roots(const CompressedSchmidt& cs, int kappa) {
  if (kappa < 1) throw InvalidInput("kappa must be at least 1");
  const int q = cs.q();
  if (q == 0) throw InvalidInput("empty Schmidt vector");
  std::vector<double> roots(static_cast<std::size_t>(q));
  if (q == 1) {
    const double b2 = cs.distinct[0] * cs.distinct[0];
    roots[0] = b2 - cs.mults[0] * b2 / kappa;
    return roots;
  }
  for (int i = 0; i < q; ++i) {
    const double hi = cs.distinct[i] * cs.distinct[i];
    const double lo = i + 1 < q ? cs.distinct[i + 1] * cs.distinct[i + 1] : -1.0 / kappa;
    if (!(lo < hi)) {
      throw std::runtime_error("secular bracket collapsed at index " + std::to_string(i) +
                               "; widen the grouping tolerance");
    }
    roots[i] = bracketed_root(cs, kappa, lo, hi);
  }
  return roots;
}

int StructuredSpectrum::total_count() const noexcept {
  int total = null_mult + static_cast<int>(etas.size());
  for (const auto& b : blocks) total += b.multiplicity;
  return total;
}

std::vector<double> StructuredSpectrum::descending() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(total_count()));
  for (const auto& b : blocks) out.insert(out.end(), static_cast<std::size_t>(b.multiplicity), b.value);
  out.insert(out.end(), etas.begin(), etas.end());
  out.insert(out.end(), static_cast<std::size_t>(null_mult), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

StructuredSpectrum xi_spectrum_structured(const SchmidtVector& a, int kappa, BipartiteDims dims) {
  if (kappa < 1) throw InvalidInput("kappa must be at least 1");
  const int r = a.rank();
  if (r > dims.n()) {
    throw InvalidInput("Schmidt rank " + std::to_string(r) + " exceeds n = " +
                       std::to_string(dims.n()));
  }
  const int m = dims.m();
  const auto cs = compress_schmidt(a);

  StructuredSpectrum s;
  s.etas = secular_roots(cs, kappa);
  s.null_mult = (dims.n() - r) * m;
  double ablock_trace = 0.0;
  for (int i = 0; i < cs.q(); ++i) {
    const double b2 = cs.distinct[i] * cs.distinct[i];
    const int off = cs.mults[i] * (m - 1);
    const int in_a = cs.mults[i] - 1;
    s.offdiag_mults.push_back(off);
    s.ablock_mults.push_back(in_a);
    s.blocks.push_back({b2, off + in_a});
    ablock_trace += in_a * b2;
  }
  const double eta_q = s.etas.back();
  const double others = std::accumulate(s.etas.begin(), s.etas.end() - 1, 0.0);
  s.trace_residual = eta_q - (1.0 - 1.0 / kappa - others - ablock_trace);

  if (kappa < r && -eta_q > 1.0 / kappa - 1.0 / r + 1e-12) {
    throw std::logic_error("smallest secular root " + std::to_string(eta_q) +
                           " violates the norm bound 1/kappa - 1/r");
  }
  return s;
}

double structured_deviation(const StructuredSpectrum& s, const SchmidtVector& a, int kappa,
                            BipartiteDims dims) {
  auto direct = eigvals_hermitian(xi_kappa(schmidt_pure_state(a, dims), kappa));
  std::sort(direct.begin(), direct.end(), std::greater<>());
  const auto structured = s.descending();
  if (structured.size() != direct.size()) {
    throw InvalidInput("structured spectrum size does not match n m");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    dev = std::max(dev, std::abs(direct[i] - structured[i]));
  }
  return dev;
}

double rearrangement_min(const Spectrum& state_spectrum, const StructuredSpectrum& structured) {
  const auto gamma = structured.descending();
  if (static_cast<int>(gamma.size()) != state_spectrum.d()) {
    throw InvalidInput("spectrum dimension " + std::to_string(state_spectrum.d()) +
                       " does not match structured spectrum size " +
                       std::to_string(gamma.size()));
  }
  const auto lambda = state_spectrum.values();
  double s = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) s += lambda[i] * gamma[i];
  return s;
}

ComplexMatrix aligning_unitary(const DensityMatrix& rho, const HermitianMatrix& h) {
  if (rho.hermitian().dim() != h.dim()) throw InvalidInput("dimension mismatch");
  const auto er = eigh(rho.hermitian());
  const auto eg = eigh(h);
  const ComplexMatrix g_desc = eg.vectors.rowwise().reverse();
  return g_desc * er.vectors.adjoint();
}

std::string_view to_string(PredfsStatus s) {
  switch (s) {
    case PredfsStatus::certified: return "certified";
    case PredfsStatus::falsified: return "falsified";
    case PredfsStatus::numerically_supported: return "numerically_supported";
  }
  return "unknown";
}

namespace {

constexpr double kViolationTol = 1e-10;

SchmidtVector from_logits(const std::vector<double>& theta) {
  const double top = *std::max_element(theta.begin(), theta.end());
  std::vector<double> x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    x[i] = std::max(std::exp(theta[i] - top), 1e-16);
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v = std::sqrt(v / total);
  return SchmidtVector::normalized(std::move(x));
}

struct NelderMeadResult {
  std::vector<double> x;
  double value;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, int max_iter) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  const auto point_along = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (w[k] - c[k]);
    return out;
  };

  for (int it = 0; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto l, auto r) { return vals[l] < vals[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (vals[worst] - vals[best] <= 1e-15) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    auto refl = point_along(centroid, pts[worst], -1.0);
    const double fr = f(refl);
    if (fr < vals[best]) {
      auto exp = point_along(centroid, pts[worst], -2.0);
      const double fe = f(exp);
      if (fe < fr) {
        pts[worst] = std::move(exp);
        vals[worst] = fe;
      } else {
        pts[worst] = std::move(refl);
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = std::move(refl);
      vals[worst] = fr;
      continue;
    }
    auto contr = point_along(centroid, pts[worst], 0.5);
    const double fc = f(contr);
    if (fc < vals[worst]) {
      pts[worst] = std::move(contr);
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = point_along(pts[best], pts[i], 0.5);
      vals[i] = f(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto idx = static_cast<std::size_t>(it - vals.begin());
  return {pts[idx], *it};
}

}  // namespace

PredfsVerdict certify_predfs(const Spectrum& spectrum, int kappa, SearchBudget search) {
  if (kappa < 1) throw InvalidInput("kappa must be at least 1");
  const BipartiteDims dims = spectrum.dims();
  const int n = dims.n();

  PredfsVerdict out;
  CriterionVerdict& v = out.verdict;
  v.technique = Technique::predfs;
  v.certificate_kind = certificate_kind_for(Technique::predfs);
  v.parameter = kappa;

  if (kappa >= n) {
    // RED_kappa is n-positive, so every state passes.
    v.satisfied = true;
    v.alpha_used = std::numeric_limits<double>::infinity();
    v.binding_condition = BindingCondition::neither;
    v.slack = 0.0;
    out.status = PredfsStatus::certified;
    return out;
  }

  const double alpha = boost::rational_cast<double>(snfs_alpha(Technique::predfs, kappa, dims));
  const auto hull = hull_test_holds(spectrum, {-1.0, alpha});
  v.alpha_used = alpha;
  v.binding_condition = hull.binding;
  v.slack = hull.slack();
  if (hull.holds) {
    v.satisfied = true;
    out.status = PredfsStatus::certified;
    return out;
  }

  const auto objective = [&](const SchmidtVector& a) {
    return rearrangement_min(spectrum, xi_spectrum_structured(a, kappa, dims));
  };
  double best = std::numeric_limits<double>::infinity();
  std::optional<SchmidtVector> best_vec;
  const auto consider = [&](const SchmidtVector& a, double value) {
    if (value < best) {
      best = value;
      best_vec = a;
    }
  };

  for (int r = kappa + 1; r <= n; ++r) {
    const auto a = SchmidtVector::uniform(r);
    consider(a, objective(a));
  }

  const int iters = search.local_iterations > 0 ? search.local_iterations : 200 * n;
  const auto logit_objective = [&](const std::vector<double>& theta) {
    return objective(from_logits(theta));
  };
  for (int s = 0; s < search.starts && best >= -kViolationTol; ++s) {
    std::mt19937_64 rng(search.seed + static_cast<std::uint64_t>(s));
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (double& t : theta) t = std::log(expo(rng));
    const auto res = nelder_mead(logit_objective, std::move(theta), 0.5, iters);
    const auto a = from_logits(res.x);
    consider(a, objective(a));
  }

  out.best_value = best;
  out.witness = best_vec;
  out.status = best < -kViolationTol ? PredfsStatus::falsified : PredfsStatus::numerically_supported;
  v.satisfied = false;
  v.slack = best;
  return out;
}

PredfsRangeEndpoints predfs_range_endpoints(int r, int kappa, int chi, int m) {
  if (r < 1 || kappa < 1 || chi < 1 || m < 1) throw InvalidInput("parameters must be positive");
  if (chi >= r) throw InvalidInput("chi must be smaller than the rank r");
  const long long rr = r;
  const long long x = chi;
  return {Rational(rr * (static_cast<long long>(kappa) * x - 1), rr - x),
          Rational(rr * (static_cast<long long>(m) * x - 1), rr - x)};
}

}  // namespace spectrabound
