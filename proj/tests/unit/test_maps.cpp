#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spectrabound/maps.hpp"

using namespace spectrabound;

namespace {

HermitianMatrix random_hermitian(oracle::Rng& rng, int d) {
  std::normal_distribution<double> g;
  ComplexMatrix x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = Complex(g(rng), g(rng));
  return HermitianMatrix(ComplexMatrix((x + x.adjoint()) / 2.0));
}

double max_abs(const ComplexMatrix& x) { return x.cwiseAbs().maxCoeff(); }

HermitianMatrix projector(const ComplexVector& v) {
  return HermitianMatrix(ComplexMatrix(v * v.adjoint()));
}

}  // namespace

TEST_CASE("reduction_apply examples") {
  const auto mms = HermitianMatrix::identity(4).scaled(0.25);
  const auto out = reduction_apply(mms, 3.0);
  CHECK(max_abs(out.matrix() - ComplexMatrix::Identity(4, 4) * (1.0 + 3.0 / 4.0)) < 1e-15);

  oracle::Rng rng(1);
  const auto s = random_hermitian(rng, 3);
  CHECK(max_abs(reduction_apply(s, 0.0).matrix() - s.trace() * ComplexMatrix::Identity(3, 3)) < 1e-14);

  const auto ev = eigvals_hermitian(reduction_apply(projector(haar_state(4, 5)), 2.0));
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(3.0));
}

TEST_CASE("reduction_inverse round trips and rejects singular parameters") {
  oracle::Rng rng(2);
  for (double alpha : {-1.0, 0.5, 2.0, 10.0}) {
    const auto s = random_hermitian(rng, 5);
    const auto there = reduction_apply(reduction_inverse(s, alpha, 5), alpha);
    CHECK(max_abs(there.matrix() - s.matrix()) <= 1e-10);
    const auto back = reduction_inverse(reduction_apply(s, alpha), alpha, 5);
    CHECK(max_abs(back.matrix() - s.matrix()) <= 1e-10);
  }
  const auto id = reduction_inverse(HermitianMatrix::identity(4), 3.0, 4);
  CHECK(max_abs(id.matrix() - ComplexMatrix::Identity(4, 4) / 7.0) < 1e-15);
  const auto p = reduction_inverse(projector(haar_state(4, 1)), -1.0, 4);
  CHECK(std::isfinite(p.matrix().norm()));
  CHECK_THROWS_AS(reduction_inverse(HermitianMatrix::identity(4), 0.0, 4), SingularMap);
  CHECK_THROWS_AS(reduction_inverse(HermitianMatrix::identity(4), -4.0, 4), SingularMap);
}

TEST_CASE("reduction_apply is unitarily covariant and positive for alpha in [-1, 0]") {
  oracle::Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto s = random_hermitian(rng, 4);
    const auto u = haar_unitary(4, 100 + t);
    const HermitianMatrix us(ComplexMatrix(u * s.matrix() * u.adjoint()));
    const ComplexMatrix lhs = reduction_apply(us, 1.7).matrix();
    const ComplexMatrix rhs = u * reduction_apply(s, 1.7).matrix() * u.adjoint();
    CHECK(max_abs(lhs - rhs) <= 1e-10);

    const HermitianMatrix psd(oracle::random_psd(rng, 4, 1 + t % 4));
    for (double alpha : {-1.0, -0.5, 0.0}) {
      CHECK(eigvals_hermitian(reduction_apply(psd, alpha)).front() >= -1e-10);
    }
  }
}

TEST_CASE("red_kappa examples") {
  const auto out = red_kappa(HermitianMatrix::identity(3).scaled(1.0 / 3), 1);
  CHECK(max_abs(out.matrix() - ComplexMatrix::Identity(3, 3) * (2.0 / 3.0)) < 1e-15);

  oracle::Rng rng(4);
  const auto x = random_hermitian(rng, 3);
  CHECK(max_abs(red_kappa(x, 1000000).matrix() - x.trace() * ComplexMatrix::Identity(3, 3)) <
        1e-5 * (1.0 + x.matrix().norm()));

  const auto ev = eigvals_hermitian(red_kappa(projector(haar_state(3, 2)), 1));
  CHECK(std::abs(ev[0]) < 1e-12);
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(red_kappa(x, 0), InvalidInput);
}

TEST_CASE("xi_kappa examples") {
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 4}}) {
    const BipartiteDims dims(n, m);
    for (int kappa : {1, 2, 3}) {
      const auto ev = eigvals_hermitian(xi_kappa(DensityMatrix::maximally_mixed(dims), kappa));
      const double want = (m - 1.0 / kappa) / dims.d();
      for (double v : ev) CHECK(v == doctest::Approx(want).epsilon(1e-12));
    }
  }

  const BipartiteDims d22(2, 2);
  const auto bell = schmidt_pure_state(SchmidtVector::uniform(2), d22);
  CHECK(eigvals_hermitian(xi_kappa(bell, 1)).front() == doctest::Approx(-0.5));

  oracle::Rng rng(5);
  const BipartiteDims d23(2, 3);
  const ComplexMatrix a = oracle::random_state(rng, 2, 2);
  const ComplexMatrix b = oracle::random_state(rng, 3, 3);
  ComplexMatrix ab(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ab.block(3 * i, 3 * j, 3, 3) = a(i, j) * b;
  CHECK(eigvals_hermitian(xi_kappa(DensityMatrix(HermitianMatrix(ab), d23), 1)).front() >= -1e-12);
}

TEST_CASE("xi_kappa matches the Kronecker form rho_A (x) 1 - rho / kappa") {
  oracle::Rng rng(6);
  const BipartiteDims dims(3, 4);
  for (int t = 0; t < 5; ++t) {
    const DensityMatrix rho(HermitianMatrix(oracle::random_state(rng, 12, 1 + t)), dims);
    const ComplexMatrix ra = reduced_state_a(rho).matrix();
    ComplexMatrix want(12, 12);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) want.block(4 * i, 4 * j, 4, 4) = ra(i, j) * ComplexMatrix::Identity(4, 4);
    const int kappa = 1 + t % 3;
    want -= rho.matrix() / static_cast<double>(kappa);
    CHECK(max_abs(xi_kappa(rho, kappa).matrix() - want) <= 1e-14);
  }

  std::vector<double> a{0.8, 0.6};
  const ComplexMatrix x = oracle::xi_of_schmidt(a, BipartiteDims(2, 2), 2);
  const auto lib = xi_kappa(schmidt_pure_state(SchmidtVector(a), BipartiteDims(2, 2)), 2);
  CHECK(max_abs(lib.matrix() - x) <= 1e-14);
}

TEST_CASE("xi_kappa is self-adjoint and linear") {
  oracle::Rng rng(7);
  const BipartiteDims dims(2, 3);
  for (int kappa : {1, 2, 5}) {
    const auto x = random_hermitian(rng, 6);
    const auto y = random_hermitian(rng, 6);
    const Complex lhs = (x.matrix().adjoint() * xi_kappa(y, dims, kappa).matrix()).trace();
    const Complex rhs = (xi_kappa(x, dims, kappa).matrix().adjoint() * y.matrix()).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-9);

    const auto combo = xi_kappa(x.scaled(0.3) + y.scaled(-1.2), dims, kappa);
    const ComplexMatrix sep =
        0.3 * xi_kappa(x, dims, kappa).matrix() - 1.2 * xi_kappa(y, dims, kappa).matrix();
    CHECK(max_abs(combo.matrix() - sep) <= 1e-12);
  }
  CHECK_THROWS_AS(xi_kappa(HermitianMatrix::identity(6), dims, 0), InvalidInput);
  CHECK_THROWS_AS(xi_kappa(HermitianMatrix::identity(5), dims, 1), InvalidInput);
}
