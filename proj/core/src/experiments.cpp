#include "spectrabound/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "spectrabound/maps.hpp"
#include "spectrabound/negativity.hpp"
#include "spectrabound/spectral_criteria.hpp"

#ifndef SPECTRABOUND_GIT_DESCRIBE
#define SPECTRABOUND_GIT_DESCRIBE "unknown"
#endif
#ifndef SPECTRABOUND_VERSION_STRING
#define SPECTRABOUND_VERSION_STRING "0.0.0"
#endif

namespace spectrabound {

std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::negativity: return "negativity";
    case MeasureKind::reduction_negativity: return "reduction_negativity";
    case MeasureKind::rearrangement: return "rearrangement";
  }
  return "unknown";
}

double evaluate_measure(const DensityMatrix& rho, const Measure& measure) {
  switch (measure.kind) {
    case MeasureKind::negativity:
      return negativity(rho).value;
    case MeasureKind::reduction_negativity:
      return reduction_negativity(rho, measure.kappa).value;
    case MeasureKind::rearrangement: {
      if (!measure.psi) throw InvalidInput("rearrangement measure needs a Schmidt vector");
      const auto h = xi_kappa(schmidt_pure_state(*measure.psi, rho.dims()), measure.kappa);
      return (rho.matrix().cwiseProduct(h.matrix().transpose())).sum().real();
    }
  }
  throw InvalidInput("unknown measure");
}

void SweepConfig::validate() const {
  if (n_unitaries < 1) throw InvalidInput("n_unitaries must be at least 1");
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise grid values must lie in [0, 1]");
  }
  if (measure.kind != MeasureKind::negativity && measure.kappa < 1) {
    throw InvalidInput("kappa must be at least 1");
  }
  if (measure.kind == MeasureKind::rearrangement && !measure.psi) {
    throw InvalidInput("rearrangement measure needs a Schmidt vector");
  }
}

int sweep_threads() {
  if (const char* env = std::getenv("SPECTRABOUND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

// Runs body(i) for i in [0, count) on up to sweep_threads() workers, each
// worker taking a contiguous block.
void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(sweep_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(count) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    pool.emplace_back([&, begin, end] {
      try {
        for (int i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

EmpiricalSummary empirical_max(const Spectrum& spectrum, const SweepConfig& cfg) {
  cfg.validate();
  if (!(spectrum.dims() == cfg.dims)) {
    throw InvalidInput("spectrum dims " + to_string(spectrum.dims()) +
                       " differ from sweep dims " + to_string(cfg.dims));
  }
  const int n = cfg.n_unitaries;
  const auto diag = DensityMatrix::diagonal(spectrum);
  std::vector<double> values(static_cast<std::size_t>(n));

  if (spectrum.is_uniform()) {
    // Unitarily invariant: every sample is the diagonal state itself.
    std::fill(values.begin(), values.end(), evaluate_measure(diag, cfg.measure));
  } else {
    const int d = spectrum.d();
    parallel_for(n, [&](int i) {
      const auto u = haar_unitary(d, cfg.base_seed + static_cast<std::uint64_t>(i) + 1);
      values[static_cast<std::size_t>(i)] = evaluate_measure(diag.conjugated(u), cfg.measure);
    });
  }

  EmpiricalSummary s;
  s.samples = n;
  const auto argmax = std::max_element(values.begin(), values.end());
  s.max = *argmax;
  s.seed_of_argmax = cfg.base_seed + static_cast<std::uint64_t>(argmax - values.begin()) + 1;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.median = quantile(sorted, 0.5);
  s.p90 = quantile(sorted, 0.9);
  return s;
}

// ---------------------------------------------------------------------------
// Figures

std::string_view to_string(Figure f) {
  switch (f) {
    case Figure::fig3: return "fig3";
    case Figure::fig4: return "fig4";
    case Figure::fig5: return "fig5";
    case Figure::figA1: return "figA1";
    case Figure::figA2: return "figA2";
  }
  return "unknown";
}

std::optional<Figure> figure_from_string(std::string_view name) {
  for (auto f : {Figure::fig3, Figure::fig4, Figure::fig5, Figure::figA1, Figure::figA2}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  std::array<char, 64> buf{};
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        std::snprintf(buf.data(), buf.size(), "%.17g", *d);
        out += buf.data();
      } else if (const auto* k = std::get_if<long long>(&row[i])) {
        out += std::to_string(*k);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return out;
}

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidInput("no column " + std::string(name));
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> default_p_grid() {
  std::vector<double> grid(51);
  for (int i = 0; i <= 50; ++i) grid[static_cast<std::size_t>(i)] = i / 50.0;
  return grid;
}

namespace {

struct FigureContext {
  BipartiteDims dims;
  std::vector<double> grid;
  const FigureParams& params;

  Cell empirical(const Spectrum& spectrum, Measure measure) const {
    if (params.analytic_only) return std::string();
    SweepConfig cfg;
    cfg.dims = spectrum.dims();
    cfg.n_unitaries = params.samples;
    cfg.base_seed = params.seed;
    cfg.measure = std::move(measure);
    return empirical_max(spectrum, cfg).max;
  }
};

Table fig3(const FigureContext& ctx) {
  Table t{{"p", "chi", "analytic_negativity", "envelope", "empirical_max"}, {}};
  const int d = ctx.dims.d();
  for (double p : ctx.grid) {
    const double alpha = pps_alpha_from_noise(d, p);
    const double env = max_pps_negativity(ctx.dims, alpha).value;
    const Cell emp = ctx.empirical(Spectrum::pseudo_pure(ctx.dims, p), {});
    for (int chi = 2; chi <= ctx.dims.n(); ++chi) {
      t.rows.push_back({p, static_cast<long long>(chi),
                        max_pps_negativity_for_rank(chi, ctx.dims, alpha), env, emp});
    }
  }
  return t;
}

struct Family {
  const char* name;
  std::array<double, 4> (*at)(double);
};

constexpr std::array<Family, 4> kFamilies{{
    {"blue", [](double p) { return std::array{1 - p / 2, p / 6, p / 6, p / 6}; }},
    {"red", [](double p) { return std::array{(1 - p) / 2, (1 - p) / 2, p / 2, p / 2}; }},
    {"green", [](double p) { return std::array{1 - 19 * p / 30, p / 3, p / 5, p / 10}; }},
    {"yellow", [](double p) { return std::array{1 - 13 * p / 15, p / 3, p / 3, p / 5}; }},
}};

Table fig4(const FigureContext& ctx) {
  Table t{{"p", "family", "bound", "empirical_max"}, {}};
  const BipartiteDims dims{2, 2};
  for (double p : ctx.grid) {
    for (const auto& fam : kFamilies) {
      const auto vals = fam.at(p);
      const Spectrum s({vals.begin(), vals.end()}, dims);
      t.rows.push_back({p, std::string(fam.name), max_gamma_negfs(s).gamma, ctx.empirical(s, {})});
    }
  }
  return t;
}

Table fig5(const FigureContext& ctx) {
  Table t{{"k", "m_k", "negativity_bound", "sn_floor"}, {}};
  const int n = ctx.dims.n();
  constexpr int kPoints = 200;
  for (int k = 1; k < n; ++k) {
    const double top = static_cast<double>(n - k) / n;
    for (int i = 0; i < kPoints; ++i) {
      const double m = top * i / (kPoints - 1);
      const double bound = negativity_bound_from_mk(m, k, n);
      t.rows.push_back({static_cast<long long>(k), m, bound,
                        static_cast<long long>(sn_floor_from_negativity(std::max(0.0, bound)))});
    }
  }
  return t;
}

Table figA1(const FigureContext& ctx) {
  Table t{{"p", "chi", "analytic_reduction_negativity", "envelope", "empirical_max"}, {}};
  const int d = ctx.dims.d();
  const int n = ctx.dims.n();
  Measure red{MeasureKind::reduction_negativity, 1, std::nullopt};
  for (double p : ctx.grid) {
    const double alpha = pps_alpha_from_noise(d, p);
    const double env = pps_reduction_negativity_analytic(SchmidtVector::uniform(n), ctx.dims, 1, alpha);
    const Cell emp = ctx.empirical(Spectrum::pseudo_pure(ctx.dims, p), red);
    for (int chi = 2; chi <= n; ++chi) {
      t.rows.push_back({p, static_cast<long long>(chi),
                        pps_reduction_negativity_analytic(SchmidtVector::uniform(chi), ctx.dims, 1, alpha),
                        env, emp});
    }
  }
  return t;
}

Table figA2(const FigureContext& ctx) {
  Table t{{"p", "kappa", "analytic_reduction_negativity", "empirical_max"}, {}};
  const int d = ctx.dims.d();
  const int n = ctx.dims.n();
  for (double p : ctx.grid) {
    const double alpha = pps_alpha_from_noise(d, p);
    const auto s = Spectrum::pseudo_pure(ctx.dims, p);
    for (int kappa = 1; kappa < n; ++kappa) {
      const double analytic =
          pps_reduction_negativity_analytic(SchmidtVector::uniform(n), ctx.dims, kappa, alpha);
      t.rows.push_back({p, static_cast<long long>(kappa), analytic,
                        ctx.empirical(s, {MeasureKind::reduction_negativity, kappa, std::nullopt})});
    }
  }
  return t;
}

}  // namespace

Table figure_data(Figure figure, const FigureParams& params) {
  if (params.samples < 1) throw InvalidInput("samples must be at least 1");
  BipartiteDims dims = params.dims.value_or(BipartiteDims{6, 6});
  if (figure == Figure::fig4) dims = BipartiteDims{2, 2};
  if (dims.n() < 2) throw InvalidInput("figures need n >= 2");
  std::vector<double> grid = params.p_grid.empty() ? default_p_grid() : params.p_grid;
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise grid values must lie in [0, 1]");
  }
  const FigureContext ctx{dims, std::move(grid), params};
  switch (figure) {
    case Figure::fig3: return fig3(ctx);
    case Figure::fig4: return fig4(ctx);
    case Figure::fig5: return fig5(ctx);
    case Figure::figA1: return figA1(ctx);
    case Figure::figA2: return figA2(ctx);
  }
  throw InvalidInput("unknown figure");
}

std::string build_version() { return SPECTRABOUND_VERSION_STRING; }
std::string build_git_describe() { return SPECTRABOUND_GIT_DESCRIBE; }

nlohmann::json figure_manifest(Figure figure, const FigureParams& params, const Table& table) {
  BipartiteDims dims = params.dims.value_or(BipartiteDims{6, 6});
  if (figure == Figure::fig4) dims = BipartiteDims{2, 2};
  return {
      {"figure", std::string(to_string(figure))},
      {"n", dims.n()},
      {"m", dims.m()},
      {"samples", params.analytic_only ? 0 : params.samples},
      {"seed", params.seed},
      {"p_grid", params.p_grid.empty() ? default_p_grid() : params.p_grid},
      {"columns", table.header},
      {"rows", table.rows.size()},
      {"version", build_version()},
      {"git_describe", build_git_describe()},
  };
}

// ---------------------------------------------------------------------------
// Noise estimation

std::string_view to_string(NoiseSource s) {
  return s == NoiseSource::fidelity ? "fidelity" : "purity";
}

namespace {

double checked_dim(BipartiteDims dims) {
  if (dims.d() < 2) throw InvalidInput("noise estimation needs d >= 2");
  return dims.d();
}

void check_unit_range(double v, double lo, const char* what) {
  constexpr double kTol = 1e-12;
  if (!(v >= lo - kTol && v <= 1.0 + kTol)) {
    throw InvalidInput(std::string(what) + " = " + std::to_string(v) + " outside [" +
                       std::to_string(lo) + ", 1]");
  }
}

}  // namespace

double pps_fidelity(double p, BipartiteDims dims) {
  return (1.0 - p) + p / checked_dim(dims);
}

double pps_purity(double p, BipartiteDims dims) {
  const double d = checked_dim(dims);
  return (1.0 - p) * (1.0 - p) + 2.0 * p * (1.0 - p) / d + p * p / d;
}

NoiseEstimate noise_from_fidelity(double f, BipartiteDims dims) {
  const double d = checked_dim(dims);
  check_unit_range(f, 1.0 / d, "fidelity");
  const double p = d * (1.0 - f) / (d - 1.0);
  return {std::clamp(p, 0.0, 1.0), NoiseSource::fidelity};
}

NoiseEstimate noise_from_purity(double purity, BipartiteDims dims) {
  const double d = checked_dim(dims);
  check_unit_range(purity, 1.0 / d, "purity");
  // purity = 1/d + (1 - 1/d)(1 - p)^2, decreasing in p on [0, 1].
  const double c = 1.0 - 1.0 / d;
  const double q2 = std::max(0.0, (purity - 1.0 / d) / c);
  return {std::clamp(1.0 - std::sqrt(q2), 0.0, 1.0), NoiseSource::purity};
}

OverlapSummary pairwise_overlap_check(BipartiteDims dims, double p, int n_pairs,
                                      std::uint64_t seed) {
  if (n_pairs < 100) throw InvalidInput("need at least 100 pairs");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  const int d = dims.d();
  const double dd = d;
  std::vector<double> values(static_cast<std::size_t>(n_pairs));
  parallel_for(n_pairs, [&](int i) {
    const auto k = static_cast<std::uint64_t>(i);
    const auto psi = haar_state(d, seed + 2 * k);
    const auto phi = haar_state(d, seed + 2 * k + 1);
    const double overlap = std::norm(psi.dot(phi));
    values[static_cast<std::size_t>(i)] =
        (1.0 - p) * (1.0 - p) * overlap + 2.0 * p * (1.0 - p) / dd + p * p / dd;
  });
  OverlapSummary s;
  s.pairs = n_pairs;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n_pairs;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_error = std::sqrt(ss / (n_pairs - 1)) / std::sqrt(static_cast<double>(n_pairs));
  return s;
}

}  // namespace spectrabound
