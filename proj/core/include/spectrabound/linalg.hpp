#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spectrabound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Entrywise Hermiticity tolerance (absolute).
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalue / trace tolerance for density matrices.
inline constexpr double kDensityTol = 1e-10;
/// Negative spectrum values above -kSpectrumClampTol are numerical noise.
inline constexpr double kSpectrumClampTol = 1e-12;
/// Normalization tolerance for spectra and Schmidt vectors.
inline constexpr double kNormTol = 1e-10;

/// Thrown for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Local dimensions of a bipartite system C^n (x) C^m with n <= m.
class BipartiteDims {
 public:
  BipartiteDims(int n, int m);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int d() const noexcept { return n_ * m_; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  int n_;
  int m_;
};

std::string to_string(const BipartiteDims& dims);

class HermitianMatrix {
 public:
  /// Rejects matrices that are not square or not Hermitian within `tol`;
  /// the stored matrix is the exact Hermitian part of the input.
  explicit HermitianMatrix(const ComplexMatrix& entries, double tol = kHermitianTol);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(std::span<const double> diag);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const noexcept { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix scaled(double s) const;

 private:
  ComplexMatrix m_;
};

class Spectrum;

/// Hermitian, positive semidefinite, unit-trace matrix with its bipartition.
class DensityMatrix {
 public:
  DensityMatrix(HermitianMatrix h, BipartiteDims dims);

  static DensityMatrix maximally_mixed(BipartiteDims dims);
  /// diag(lambda ascending) in the computational product basis.
  static DensityMatrix diagonal(const Spectrum& spectrum);
  static DensityMatrix pure(const ComplexVector& psi, BipartiteDims dims);

  const HermitianMatrix& hermitian() const noexcept { return h_; }
  const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  BipartiteDims dims() const noexcept { return dims_; }

  /// U rho U^dagger for a unitary U.
  DensityMatrix conjugated(const ComplexMatrix& u) const;
  /// t * this + (1 - t) * other, t in [0, 1].
  DensityMatrix mixed_with(const DensityMatrix& other, double t) const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, HermitianMatrix h, BipartiteDims dims)
      : h_(std::move(h)), dims_(dims) {}

  HermitianMatrix h_;
  BipartiteDims dims_;
};

/// Eigenvalues of a state, sorted ascending, clamped at zero, summing to one.
class Spectrum {
 public:
  Spectrum(std::vector<double> values, BipartiteDims dims,
           double clamp_tol = kSpectrumClampTol);

  static Spectrum of(const DensityMatrix& rho);
  static Spectrum uniform(BipartiteDims dims);
  /// Spectrum of (1-p)|psi><psi| + p 1/d for any pure psi.
  static Spectrum pseudo_pure(BipartiteDims dims, double p);

  std::span<const double> values() const noexcept { return values_; }
  BipartiteDims dims() const noexcept { return dims_; }
  int d() const noexcept { return dims_.d(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }
  bool is_uniform() const noexcept { return values_.front() == values_.back(); }

 private:
  std::vector<double> values_;
  BipartiteDims dims_;
};

/// Positive Schmidt coefficients a_1 >= a_2 >= ... with sum a_i^2 = 1.
class SchmidtVector {
 public:
  explicit SchmidtVector(std::vector<double> coeffs);

  /// Drops exact zeros, rescales to unit norm; rejects negative entries.
  static SchmidtVector normalized(std::vector<double> raw);
  static SchmidtVector uniform(int rank);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  int rank() const noexcept { return static_cast<int>(coeffs_.size()); }
  double operator[](std::size_t i) const { return coeffs_[i]; }

 private:
  std::vector<double> coeffs_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

std::vector<double> eigvals_hermitian(const HermitianMatrix& h);
EigenDecomposition eigh(const HermitianMatrix& h);

enum class Subsystem { A, B };

/// Index of |i j> in C^n (x) C^m is i * m + j.
ComplexMatrix partial_transpose(const ComplexMatrix& x, BipartiteDims dims,
                                Subsystem subsystem = Subsystem::B);
HermitianMatrix partial_transpose(const HermitianMatrix& h, BipartiteDims dims,
                                  Subsystem subsystem = Subsystem::B);
HermitianMatrix partial_transpose(const DensityMatrix& rho,
                                  Subsystem subsystem = Subsystem::B);

/// Reduced state on A (partial trace over B).
HermitianMatrix reduced_state_a(const DensityMatrix& rho);

double trace_norm(const HermitianMatrix& h);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q. Deterministic in `seed`.
ComplexMatrix haar_unitary(int dim, std::uint64_t seed);
/// Haar-random unit vector.
ComplexVector haar_state(int dim, std::uint64_t seed);

ComplexVector schmidt_state_vector(const SchmidtVector& a, BipartiteDims dims);
DensityMatrix schmidt_pure_state(const SchmidtVector& a, BipartiteDims dims);
DensityMatrix pps_state(const SchmidtVector& a, BipartiteDims dims, double p);

/// p = d / (d + alpha); alpha = +inf maps to p = 0.
double pps_noise_from_alpha(int d, double alpha);
/// alpha = d (1 - p) / p; p = 0 maps to +inf.
double pps_alpha_from_noise(int d, double p);

/// Permutation sending the ascending eigenbasis of a diagonal state with this
/// spectrum onto the product basis |ij>, eigenvalue k landing on index k.
ComplexMatrix disentangling_unitary(const Spectrum& spectrum);
/// U with U rho U^dagger diagonal in the product basis (hence separable).
ComplexMatrix disentangling_unitary(const DensityMatrix& rho);

}  // namespace spectrabound
