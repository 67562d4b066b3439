#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace oracle {

std::vector<double> random_schmidt(Rng& rng, int r) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(r));
  double norm = 0.0;
  for (double& x : a) {
    x = std::abs(g(rng)) + 1e-3;
    norm += x * x;
  }
  for (double& x : a) x /= std::sqrt(norm);
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

std::vector<double> random_probabilities(Rng& rng, int d) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (double& x : p) x = e(rng);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  std::sort(p.begin(), p.end());
  return p;
}

namespace {

ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = {g(rng), g(rng)};
  }
  return m;
}

}  // namespace

ComplexMatrix random_psd(Rng& rng, int d, int k) {
  const ComplexMatrix g = ginibre(rng, d, k);
  ComplexMatrix p = g * g.adjoint();
  return 0.5 * (p + p.adjoint());
}

ComplexMatrix random_state(Rng& rng, int d, int k) {
  ComplexMatrix p = random_psd(rng, d, k);
  return p / p.trace().real();
}

ComplexVector schmidt_vector(std::span<const double> a, BipartiteDims dims) {
  ComplexVector psi = ComplexVector::Zero(dims.d());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    psi(k * dims.m() + k) = a[i];
  }
  return psi;
}

ComplexMatrix pps_matrix(std::span<const double> a, BipartiteDims dims, double alpha) {
  const ComplexVector psi = schmidt_vector(a, dims);
  ComplexMatrix rho = ComplexMatrix::Identity(dims.d(), dims.d()) + alpha * psi * psi.adjoint();
  return rho / (dims.d() + alpha);
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& x, BipartiteDims dims) {
  const int n = dims.n();
  const int m = dims.m();
  ComplexMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) out(i * m + j, k * m + l) = x(i * m + l, k * m + j);
      }
    }
  }
  return out;
}

ComplexMatrix xi_of_schmidt(std::span<const double> a, BipartiteDims dims, int kappa) {
  const int m = dims.m();
  ComplexMatrix out = ComplexMatrix::Zero(dims.d(), dims.d());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int j = 0; j < m; ++j) {
      const auto idx = static_cast<Eigen::Index>(i) * m + j;
      out(idx, idx) = a[i] * a[i];
    }
  }
  const ComplexVector psi = schmidt_vector(a, dims);
  out -= psi * psi.adjoint() / static_cast<double>(kappa);
  return out;
}

std::vector<double> eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

double negativity(const ComplexMatrix& rho, BipartiteDims dims) {
  double s = 0.0;
  for (double ev : eigenvalues(partial_transpose_b(rho, dims))) {
    if (ev < 0.0) s -= ev;
  }
  return s;
}

bool hull_lp_feasible(std::span<const double> lambda, double alpha_plus, double tol) {
  const double d = static_cast<double>(lambda.size());
  const double a = 1.0 / (d + alpha_plus);
  const double b = 1.0 / (d - 1.0);
  const double lmin = *std::min_element(lambda.begin(), lambda.end());
  const double t_max = std::min(1.0, lmin / a);

  const auto g = [&](double t) {
    double s = -t;
    for (double l : lambda) s += std::max(t * a, l - (1.0 - t) * b);
    return s;
  };
  std::vector<double> candidates{0.0, t_max};
  for (double l : lambda) {
    const double t = (l - b) / (a - b);
    if (t > 0.0 && t < t_max) candidates.push_back(t);
  }
  double best = std::numeric_limits<double>::infinity();
  for (double t : candidates) best = std::min(best, g(t));
  return best <= tol;
}

ComplexMatrix haar_unitary(Rng& rng, int d) {
  const ComplexMatrix z = ginibre(rng, d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const auto rk = r(k, k);
    q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

}  // namespace oracle
