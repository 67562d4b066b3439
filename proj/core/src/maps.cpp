#include "spectrabound/maps.hpp"

#include <cmath>
#include <string>

namespace spectrabound {

namespace {

void require_kappa(int kappa) {
  if (kappa < 1) throw InvalidInput("kappa must be a positive integer, got " + std::to_string(kappa));
}

}  // namespace

HermitianMatrix reduction_apply(const HermitianMatrix& sigma, double alpha) {
  ComplexMatrix out = alpha * sigma.matrix();
  out.diagonal().array() += sigma.trace();
  return HermitianMatrix(out);
}

HermitianMatrix reduction_inverse(const HermitianMatrix& sigma, double alpha, int d) {
  if (d != sigma.dim()) {
    throw InvalidInput("reduction_inverse: d = " + std::to_string(d) +
                       " but matrix dimension is " + std::to_string(sigma.dim()));
  }
  if (alpha == 0.0) throw SingularMap("Lambda_alpha is not invertible at alpha = 0");
  if (d + alpha == 0.0) throw SingularMap("Lambda_alpha is not invertible at alpha = -d");
  ComplexMatrix out = sigma.matrix();
  out.diagonal().array() -= sigma.trace() / (d + alpha);
  return HermitianMatrix(out / alpha);
}

HermitianMatrix red_kappa(const HermitianMatrix& x, int kappa) {
  require_kappa(kappa);
  ComplexMatrix out = -x.matrix() / static_cast<double>(kappa);
  out.diagonal().array() += x.trace();
  return HermitianMatrix(out);
}

HermitianMatrix xi_kappa(const HermitianMatrix& x, BipartiteDims dims, int kappa) {
  require_kappa(kappa);
  if (x.dim() != dims.d()) {
    throw InvalidInput("xi_kappa: matrix dimension " + std::to_string(x.dim()) +
                       " does not match bipartition " + to_string(dims));
  }
  const int n = dims.n();
  const int m = dims.m();
  const double inv_kappa = 1.0 / kappa;
  ComplexMatrix out = -inv_kappa * x.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex block_trace = x.matrix().block(i * m, j * m, m, m).trace();
      out.block(i * m, j * m, m, m).diagonal().array() += block_trace;
    }
  }
  return HermitianMatrix(out);
}

HermitianMatrix xi_kappa(const DensityMatrix& rho, int kappa) {
  return xi_kappa(rho.hermitian(), rho.dims(), kappa);
}

}  // namespace spectrabound
