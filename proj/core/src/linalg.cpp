#include "spectrabound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace spectrabound {

BipartiteDims::BipartiteDims(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) {
    throw InvalidInput("bipartite dimensions must be positive, got " + std::to_string(n) +
                       "x" + std::to_string(m));
  }
  if (m < n) {
    throw InvalidInput("bipartite dimensions must satisfy n <= m, got " +
                       std::to_string(n) + "x" + std::to_string(m));
  }
}

std::string to_string(const BipartiteDims& dims) {
  return std::to_string(dims.n()) + "x" + std::to_string(dims.m());
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& entries, double tol) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw InvalidInput("Hermitian matrix must be square and non-empty");
  }
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= tol)) {
    throw InvalidInput("matrix is not Hermitian (max |A - A^dagger| = " +
                       std::to_string(dev) + ")");
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(diag.size()),
                                        static_cast<Eigen::Index>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw InvalidInput("dimension mismatch in sum");
  return HermitianMatrix(m_ + other.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw InvalidInput("dimension mismatch in difference");
  return HermitianMatrix(m_ - other.m_);
}

HermitianMatrix HermitianMatrix::scaled(double s) const { return HermitianMatrix(s * m_); }

// ---------------------------------------------------------------------------
// Eigensolvers

std::vector<double> eigvals_hermitian(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {{ev.data(), ev.data() + ev.size()}, solver.eigenvectors()};
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(HermitianMatrix h, BipartiteDims dims)
    : h_(std::move(h)), dims_(dims) {
  if (h_.dim() != dims_.d()) {
    throw InvalidInput("density matrix dimension " + std::to_string(h_.dim()) +
                       " does not match bipartition " + to_string(dims_));
  }
  if (std::abs(h_.trace() - 1.0) > kDensityTol) {
    throw InvalidInput("density matrix trace " + std::to_string(h_.trace()) + " != 1");
  }
  const auto ev = eigvals_hermitian(h_);
  if (ev.front() < -kDensityTol) {
    throw InvalidInput("density matrix has negative eigenvalue " + std::to_string(ev.front()));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(BipartiteDims dims) {
  const int d = dims.d();
  return {Trusted{}, HermitianMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d)),
          dims};
}

DensityMatrix DensityMatrix::diagonal(const Spectrum& spectrum) {
  return {Trusted{}, HermitianMatrix::diagonal(spectrum.values()), spectrum.dims()};
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, BipartiteDims dims) {
  if (psi.size() != dims.d()) throw InvalidInput("state vector dimension mismatch");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > kNormTol) throw InvalidInput("state vector is not normalized");
  return {Trusted{}, HermitianMatrix(psi * psi.adjoint()), dims};
}

DensityMatrix DensityMatrix::conjugated(const ComplexMatrix& u) const {
  if (u.rows() != dims_.d() || u.cols() != dims_.d()) {
    throw InvalidInput("unitary dimension mismatch");
  }
  ComplexMatrix out = u * h_.matrix() * u.adjoint();
  return {Trusted{}, HermitianMatrix(out, 1e-10), dims_};
}

DensityMatrix DensityMatrix::mixed_with(const DensityMatrix& other, double t) const {
  if (!(other.dims_ == dims_)) throw InvalidInput("cannot mix states of different dimensions");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("mixing weight must lie in [0, 1]");
  return {Trusted{}, HermitianMatrix(t * h_.matrix() + (1.0 - t) * other.matrix()), dims_};
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(std::vector<double> values, BipartiteDims dims, double clamp_tol)
    : values_(std::move(values)), dims_(dims) {
  if (static_cast<int>(values_.size()) != dims_.d()) {
    throw InvalidInput("spectrum has " + std::to_string(values_.size()) +
                       " values, expected " + std::to_string(dims_.d()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("spectrum contains a non-finite value");
  }
  const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormTol) {
    throw InvalidInput("spectrum sums to " + std::to_string(sum) + ", expected 1");
  }
  std::sort(values_.begin(), values_.end());
  if (values_.front() < -clamp_tol) {
    throw InvalidInput("spectrum has negative value " + std::to_string(values_.front()));
  }
  for (double& v : values_) v = std::max(v, 0.0);
}

Spectrum Spectrum::of(const DensityMatrix& rho) {
  return {eigvals_hermitian(rho.hermitian()), rho.dims(), kDensityTol};
}

Spectrum Spectrum::uniform(BipartiteDims dims) {
  return {std::vector<double>(static_cast<std::size_t>(dims.d()), 1.0 / dims.d()), dims};
}

Spectrum Spectrum::pseudo_pure(BipartiteDims dims, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise parameter p must lie in [0, 1]");
  const int d = dims.d();
  std::vector<double> values(static_cast<std::size_t>(d), p / d);
  values.back() = (1.0 - p) + p / d;
  return {std::move(values), dims};
}

// ---------------------------------------------------------------------------
// SchmidtVector

SchmidtVector::SchmidtVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("Schmidt vector is empty");
  double norm2 = 0.0;
  for (double a : coeffs_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw InvalidInput("Schmidt coefficients must be strictly positive");
    }
    norm2 += a * a;
  }
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InvalidInput("Schmidt coefficients have sum of squares " + std::to_string(norm2));
  }
  std::sort(coeffs_.begin(), coeffs_.end(), std::greater<>());
}

SchmidtVector SchmidtVector::normalized(std::vector<double> raw) {
  std::erase(raw, 0.0);
  double norm2 = 0.0;
  for (double a : raw) {
    if (a < 0.0 || !std::isfinite(a)) {
      throw InvalidInput("Schmidt coefficients must be non-negative");
    }
    norm2 += a * a;
  }
  if (raw.empty() || norm2 == 0.0) throw InvalidInput("Schmidt vector is zero");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& a : raw) a *= inv;
  return SchmidtVector(std::move(raw));
}

SchmidtVector SchmidtVector::uniform(int rank) {
  if (rank < 1) throw InvalidInput("Schmidt rank must be at least 1");
  return SchmidtVector(
      std::vector<double>(static_cast<std::size_t>(rank), 1.0 / std::sqrt(rank)));
}

// ---------------------------------------------------------------------------
// Partial transpose, partial trace, trace norm

ComplexMatrix partial_transpose(const ComplexMatrix& x, BipartiteDims dims,
                                Subsystem subsystem) {
  const int n = dims.n();
  const int m = dims.m();
  if (x.rows() != dims.d() || x.cols() != dims.d()) {
    throw InvalidInput("partial transpose: matrix is " + std::to_string(x.rows()) + "x" +
                       std::to_string(x.cols()) + ", bipartition " + to_string(dims));
  }
  ComplexMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
          // <ij| X^Gamma |kl>
          const Complex v = subsystem == Subsystem::B ? x(i * m + l, k * m + j)
                                                      : x(k * m + j, i * m + l);
          out(i * m + j, k * m + l) = v;
        }
      }
    }
  }
  return out;
}

HermitianMatrix partial_transpose(const HermitianMatrix& h, BipartiteDims dims,
                                  Subsystem subsystem) {
  return HermitianMatrix(partial_transpose(h.matrix(), dims, subsystem));
}

HermitianMatrix partial_transpose(const DensityMatrix& rho, Subsystem subsystem) {
  return partial_transpose(rho.hermitian(), rho.dims(), subsystem);
}

HermitianMatrix reduced_state_a(const DensityMatrix& rho) {
  const int n = rho.dims().n();
  const int m = rho.dims().m();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      out(i, k) = rho.matrix().block(i * m, k * m, m, m).trace();
    }
  }
  return HermitianMatrix(out);
}

double trace_norm(const HermitianMatrix& h) {
  double s = 0.0;
  for (double v : eigvals_hermitian(h)) s += std::abs(v);
  return s;
}

// ---------------------------------------------------------------------------
// Haar sampling

namespace {

ComplexMatrix ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  }
  return z;
}

}  // namespace

ComplexMatrix haar_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("unitary dimension must be at least 1");
  std::mt19937_64 rng(seed);
  const ComplexMatrix z = ginibre(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    const Complex phase = mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

ComplexVector haar_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("state dimension must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

// ---------------------------------------------------------------------------
// State constructions

ComplexVector schmidt_state_vector(const SchmidtVector& a, BipartiteDims dims) {
  if (a.rank() > dims.n()) {
    throw InvalidInput("Schmidt rank " + std::to_string(a.rank()) +
                       " exceeds local dimension " + std::to_string(dims.n()));
  }
  ComplexVector psi = ComplexVector::Zero(dims.d());
  for (int i = 0; i < a.rank(); ++i) psi(i * dims.m() + i) = a[static_cast<std::size_t>(i)];
  return psi;
}

DensityMatrix schmidt_pure_state(const SchmidtVector& a, BipartiteDims dims) {
  return DensityMatrix::pure(schmidt_state_vector(a, dims), dims);
}

DensityMatrix pps_state(const SchmidtVector& a, BipartiteDims dims, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise parameter p must lie in [0, 1]");
  const int d = dims.d();
  const ComplexVector psi = schmidt_state_vector(a, dims);
  ComplexMatrix m = (1.0 - p) * (psi * psi.adjoint());
  m.diagonal().array() += p / d;
  return DensityMatrix(HermitianMatrix(m), dims);
}

double pps_noise_from_alpha(int d, double alpha) {
  if (std::isinf(alpha) && alpha > 0) return 0.0;
  if (!(alpha > -d)) throw InvalidInput("alpha must exceed -d");
  return d / (d + alpha);
}

double pps_alpha_from_noise(int d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise parameter p must lie in [0, 1]");
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  return d * (1.0 - p) / p;
}

ComplexMatrix disentangling_unitary(const Spectrum& spectrum) {
  // The eigenvector of the k-th smallest eigenvalue of diag(lambda ascending)
  // is |k>, and |k> = |i j> with k = i m + j, so the map is the identity.
  const int d = spectrum.d();
  return ComplexMatrix::Identity(d, d);
}

ComplexMatrix disentangling_unitary(const DensityMatrix& rho) {
  // U = sum_k |k><v_k| with v_k the eigenvector of the k-th eigenvalue.
  const auto eig = eigh(rho.hermitian());
  return eig.vectors.adjoint();
}

}  // namespace spectrabound
