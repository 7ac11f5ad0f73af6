#include "convspec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

#include "convspec/errors.hpp"
#include "convspec/polynomials.hpp"

namespace convspec {

Eigen::VectorXd eigenvalues_tridiagonal(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag) {
  if (diag.empty()) throw std::invalid_argument("tridiagonal matrix must be nonempty");
  if (offdiag.size() + 1 != diag.size())
    throw std::invalid_argument("tridiagonal matrix needs " +
                                std::to_string(diag.size() - 1) +
                                " off-diagonal entries, got " +
                                std::to_string(offdiag.size()));
  Eigen::Map<const Eigen::VectorXd> d(diag.data(), static_cast<long>(diag.size()));
  Eigen::VectorXd e(static_cast<long>(diag.size()) - 1);
  for (long i = 0; i < e.size(); ++i) e[i] = offdiag[static_cast<std::size_t>(i)];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("tridiagonal eigenvalue iteration did not converge");
  return solver.eigenvalues();
}

SpectralData spectral_decomposition(const JacobiOperator& j) {
  GaugedTridiagonal g = gauge_real(j);
  long long N = j.level();
  long long dim = N + 1;

  SpectralData s;
  s.gauge = g.chi;
  s.eigenvalues = eigenvalues_tridiagonal(g.diag, g.offdiag);

  // the polynomial construction needs a simple spectrum; a collision means
  // the paper-level assumption broke down, which is a numerical condition,
  // not a usage error
  double scale = std::max(1.0, std::max(std::abs(s.eigenvalues[0]),
                                        std::abs(s.eigenvalues[dim - 1])));
  for (long long l = 0; l + 1 < dim; ++l) {
    if (s.eigenvalues[l + 1] - s.eigenvalues[l] < 1e-12 * scale)
      throw numerical_error("eigenvalues " + std::to_string(l) + " and " +
                            std::to_string(l + 1) + " collide (" +
                            std::to_string(s.eigenvalues[l]) + ", " +
                            std::to_string(s.eigenvalues[l + 1]) +
                            "); the spectral decomposition needs a simple spectrum");
  }

  s.coeffs.resize(dim, dim);
  s.weights.resize(dim);
  for (long long l = 0; l < dim; ++l) {
    Eigen::VectorXd P = recurrence_eval(j, s.eigenvalues[l]);
    s.coeffs.col(l) = P;
    s.weights[l] = 1.0 / P.squaredNorm();
  }
  return s;
}

SpectralData spectral_decomposition(const ModelSpec& model, const SectorIndex& mu) {
  return spectral_decomposition(jacobi_operator(model, mu));
}

double verify_orthonormality(const SpectralData& s) {
  long dim = s.eigenvalues.size();
  Eigen::MatrixXd V = s.coeffs;
  for (long l = 0; l < dim; ++l) V.col(l) *= std::sqrt(s.weights[l]);
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  double r1 = (V * V.transpose() - I).cwiseAbs().maxCoeff();
  double r2 = (V.transpose() * V - I).cwiseAbs().maxCoeff();
  return std::max(r1, r2);
}

}  // namespace convspec
