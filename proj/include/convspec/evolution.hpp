#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "convspec/fock_sector.hpp"
#include "convspec/hamiltonian.hpp"
#include "convspec/spectral.hpp"

namespace convspec {

// State with finite support over conserved sectors; amplitudes[mu] has
// length mu.N + 1.
struct SectoredState {
  std::map<SectorIndex, Eigen::VectorXcd> amplitudes;
};

// Block-sparse observable; blocks[(mu, nu)](m, n) is the matrix element
// between level m of sector mu and level n of sector nu. A Hermitian
// observable stores every block together with its adjoint partner.
struct SectoredObservable {
  std::map<std::pair<SectorIndex, SectorIndex>, Eigen::MatrixXcd> blocks;
};

double state_norm(const SectoredState& psi);
SectoredState normalized(SectoredState psi);

// Throws std::invalid_argument when block shapes do not match their sector
// dimensions, a diagonal block is not Hermitian, or an off-diagonal block
// lacks (or contradicts) its adjoint partner.
void validate_observable(const SectoredObservable& x);

// Interaction-picture propagator exp(-i J t) on one sector, assembled from
// the spectral decomposition and re-phased back out of the real gauge.
Eigen::MatrixXcd propagator(const SpectralData& s, double t);

// Phases accumulated by the free part on each sector level: the full
// evolution is the propagator followed by exp(-i phase_n) per component.
std::vector<double> free_phases(const ModelSpec& model, const SectorIndex& mu, double t);

SectoredState evolve_state(const ModelSpec& model, const SectoredState& psi, double t);

// <phi| X |phi> for an already prepared state; no evolution, no
// normalization or Hermiticity requirement.
std::complex<double> bracket(const SectoredState& phi, const SectoredObservable& x);

// <psi(t)| X |psi(t)> as a complex number; no Hermiticity requirement.
std::complex<double> expectation_bracket(const ModelSpec& model, const SectoredState& psi,
                                         const SectoredObservable& x, double t);

// Real expectation value of a Hermitian observable in a normalized state.
double expectation(const ModelSpec& model, const SectoredState& psi,
                   const SectoredObservable& x, double t);

// One matrix element of the Heisenberg-picture observable X(t), computed
// through the explicit double spectral sums rather than by evolving states,
// so it cross-checks the propagator path independently.
std::complex<double> heisenberg_element(const ModelSpec& model, const SectorIndex& mu,
                                        long long m, const SectorIndex& nu, long long n,
                                        const SectoredObservable& x, double t);

}  // namespace convspec
