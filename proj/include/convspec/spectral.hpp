#pragma once

#include <Eigen/Dense>
#include <vector>

#include "convspec/fock_sector.hpp"
#include "convspec/hamiltonian.hpp"

namespace convspec {

// Spectral decomposition of a sector Hamiltonian in polynomial form.
// coeffs(n, l) holds the degree-n recurrence polynomial evaluated at the
// l-th eigenvalue (so coeffs.row(0) is all ones), and the eigenvector for
// E_l has components sqrt(w_l) * coeffs(n, l) in the real gauge; gauge[n]
// carries the phase that undoes the realification.
struct SpectralData {
  Eigen::VectorXd eigenvalues;  // strictly ascending
  Eigen::MatrixXd coeffs;       // (N+1) x (N+1), P_n(E_l)
  Eigen::VectorXd weights;      // w_l = 1 / sum_n P_n(E_l)^2, sums to 1
  std::vector<double> gauge;    // chi_n, chi_0 = 0
};

// All eigenvalues of the real symmetric tridiagonal matrix with the given
// diagonal (size d) and off-diagonal (size d-1), ascending.
Eigen::VectorXd eigenvalues_tridiagonal(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag);

SpectralData spectral_decomposition(const ModelSpec& model, const SectorIndex& mu);
SpectralData spectral_decomposition(const JacobiOperator& j);

// Max absolute deviation of the weighted polynomial sums from the identity,
// checked in both orthogonality directions.
double verify_orthonormality(const SpectralData& s);

}  // namespace convspec
