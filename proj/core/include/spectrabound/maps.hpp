#pragma once

#include <stdexcept>

#include "spectrabound/linalg.hpp"

namespace spectrabound {

/// Raised when a map is not invertible for the requested parameter.
class SingularMap : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Lambda_alpha(sigma) = Tr(sigma) 1 + alpha sigma.
HermitianMatrix reduction_apply(const HermitianMatrix& sigma, double alpha);

/// Lambda_alpha^{-1}(sigma) = (sigma - Tr(sigma) 1 / (d + alpha)) / alpha.
/// Throws SingularMap for alpha = 0 or alpha = -d.
HermitianMatrix reduction_inverse(const HermitianMatrix& sigma, double alpha, int d);

/// RED_kappa(x) = Tr(x) 1 - x / kappa.
HermitianMatrix red_kappa(const HermitianMatrix& x, int kappa);

/// xi_kappa = 1 (x) RED_kappa acting on subsystem B. Each m x m block X_ij
/// is mapped to Tr(X_ij) 1_m - X_ij / kappa, i.e. rho_A (x) 1 - rho / kappa.
HermitianMatrix xi_kappa(const HermitianMatrix& x, BipartiteDims dims, int kappa);
HermitianMatrix xi_kappa(const DensityMatrix& rho, int kappa);

}  // namespace spectrabound
