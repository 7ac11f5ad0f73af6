#include "convspec/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "convspec/errors.hpp"

namespace convspec {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

std::string sector_label(const SectorIndex& mu) {
  return "(r0=" + std::to_string(mu.r0) + ", r1=" + std::to_string(mu.r1) +
         ", N=" + std::to_string(mu.N) + ")";
}

void check_state_shapes(const SectoredState& psi) {
  for (const auto& [mu, v] : psi.amplitudes)
    if (v.size() != mu.N + 1)
      throw std::invalid_argument("state component on sector " + sector_label(mu) +
                                  " has " + std::to_string(v.size()) +
                                  " amplitudes, expected " + std::to_string(mu.N + 1));
}

void check_normalized(const SectoredState& psi) {
  check_state_shapes(psi);
  double norm = state_norm(psi);
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("state is not normalized (norm=" + std::to_string(norm) +
                                ")");
}

}  // namespace

double state_norm(const SectoredState& psi) {
  double s = 0.0;
  for (const auto& [mu, v] : psi.amplitudes) {
    (void)mu;
    s += v.squaredNorm();
  }
  return std::sqrt(s);
}

SectoredState normalized(SectoredState psi) {
  check_state_shapes(psi);
  double norm = state_norm(psi);
  if (!(norm > 0.0))
    throw std::invalid_argument("cannot normalize a zero state");
  for (auto& [mu, v] : psi.amplitudes) {
    (void)mu;
    v /= norm;
  }
  return psi;
}

void validate_observable(const SectoredObservable& x) {
  for (const auto& [key, block] : x.blocks) {
    const auto& [mu, nu] = key;
    if (block.rows() != mu.N + 1 || block.cols() != nu.N + 1)
      throw std::invalid_argument("observable block " + sector_label(mu) + " x " +
                                  sector_label(nu) + " is " + std::to_string(block.rows()) +
                                  "x" + std::to_string(block.cols()) + ", expected " +
                                  std::to_string(mu.N + 1) + "x" +
                                  std::to_string(nu.N + 1));
    auto it = x.blocks.find({nu, mu});
    if (it == x.blocks.end())
      throw std::invalid_argument("observable block " + sector_label(mu) + " x " +
                                  sector_label(nu) +
                                  " has no adjoint partner block; the observable is not "
                                  "Hermitian");
    double scale = std::max(1.0, block.cwiseAbs().maxCoeff());
    double dev = (it->second - block.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * scale)
      throw std::invalid_argument("observable blocks " + sector_label(mu) + " x " +
                                  sector_label(nu) +
                                  " and its partner are not adjoint to each other "
                                  "(max deviation " + std::to_string(dev) + ")");
  }
}

Eigen::MatrixXcd propagator(const SpectralData& s, double t) {
  long dim = s.eigenvalues.size();
  Eigen::VectorXcd phases(dim);
  for (long l = 0; l < dim; ++l)
    phases[l] = s.weights[l] * std::exp(-I * s.eigenvalues[l] * t);
  Eigen::MatrixXcd U =
      s.coeffs * phases.asDiagonal() * s.coeffs.transpose();
  for (long m = 0; m < dim; ++m)
    for (long n = 0; n < dim; ++n)
      U(m, n) *= std::exp(I * (s.gauge[static_cast<std::size_t>(n)] -
                               s.gauge[static_cast<std::size_t>(m)]));
  return U;
}

std::vector<double> free_phases(const ModelSpec& model, const SectorIndex& mu, double t) {
  std::vector<double> phases(static_cast<std::size_t>(mu.N) + 1);
  for (long long n = 0; n <= mu.N; ++n)
    phases[static_cast<std::size_t>(n)] =
        t * (model.omega0 * static_cast<double>(mu.r0 + mu.k0 * n) +
             model.omega1 * static_cast<double>(mu.r1 + mu.k1 * (mu.N - n)));
  return phases;
}

SectoredState evolve_state(const ModelSpec& model, const SectoredState& psi, double t) {
  check_normalized(psi);
  SectoredState out;
  for (const auto& [mu, v] : psi.amplitudes) {
    SpectralData s = spectral_decomposition(model, mu);
    Eigen::VectorXcd w = propagator(s, t) * v;
    std::vector<double> phases = free_phases(model, mu, t);
    for (long long n = 0; n <= mu.N; ++n)
      w[n] *= std::exp(-I * phases[static_cast<std::size_t>(n)]);
    out.amplitudes[mu] = std::move(w);
  }
  return out;
}

std::complex<double> bracket(const SectoredState& phi, const SectoredObservable& x) {
  std::complex<double> val = 0.0;
  for (const auto& [key, block] : x.blocks) {
    const auto& [mu, nu] = key;
    auto bra = phi.amplitudes.find(mu);
    auto ket = phi.amplitudes.find(nu);
    if (bra == phi.amplitudes.end() || ket == phi.amplitudes.end()) continue;
    if (block.rows() != mu.N + 1 || block.cols() != nu.N + 1)
      throw std::invalid_argument("observable block " + sector_label(mu) + " x " +
                                  sector_label(nu) + " has the wrong shape");
    val += bra->second.dot(block * ket->second);  // Eigen dot conjugates the left side
  }
  return val;
}

std::complex<double> expectation_bracket(const ModelSpec& model, const SectoredState& psi,
                                         const SectoredObservable& x, double t) {
  return bracket(evolve_state(model, psi, t), x);
}

double expectation(const ModelSpec& model, const SectoredState& psi,
                   const SectoredObservable& x, double t) {
  validate_observable(x);
  std::complex<double> val = expectation_bracket(model, psi, x, t);
  if (std::abs(val.imag()) > 1e-8 * std::max(1.0, std::abs(val.real())))
    throw numerical_error("expectation value of a Hermitian observable came out complex "
                          "(imaginary part " + std::to_string(val.imag()) + ")");
  return val.real();
}

std::complex<double> heisenberg_element(const ModelSpec& model, const SectorIndex& mu,
                                        long long m, const SectorIndex& nu, long long n,
                                        const SectoredObservable& x, double t) {
  if (m < 0 || m > mu.N || n < 0 || n > nu.N)
    throw std::invalid_argument("heisenberg_element indices (m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ") outside the sectors");

  auto it = x.blocks.find({mu, nu});
  if (it == x.blocks.end()) return 0.0;
  const Eigen::MatrixXcd& block = it->second;
  if (block.rows() != mu.N + 1 || block.cols() != nu.N + 1)
    throw std::invalid_argument("observable block " + sector_label(mu) + " x " +
                                sector_label(nu) + " has the wrong shape");

  SpectralData sm = spectral_decomposition(model, mu);
  SpectralData sn = spectral_decomposition(model, nu);
  std::vector<double> theta_m = free_phases(model, mu, t);
  std::vector<double> theta_n = free_phases(model, nu, t);

  long long dm = mu.N + 1;
  long long dn = nu.N + 1;

  // bra side: conj(U_full[r][m]) expanded through the spectral sums
  Eigen::VectorXcd A(dm);
  for (long long r = 0; r < dm; ++r) {
    std::complex<double> s = 0.0;
    for (long long l = 0; l < dm; ++l)
      s += sm.coeffs(r, l) * sm.coeffs(m, l) * sm.weights[l] *
           std::exp(I * sm.eigenvalues[l] * t);
    std::size_t ur = static_cast<std::size_t>(r);
    A[r] = std::exp(I * (theta_m[ur] + sm.gauge[ur] -
                         sm.gauge[static_cast<std::size_t>(m)])) * s;
  }

  // ket side: U_full[s][n]
  Eigen::VectorXcd B(dn);
  for (long long sidx = 0; sidx < dn; ++sidx) {
    std::complex<double> s = 0.0;
    for (long long k = 0; k < dn; ++k)
      s += sn.coeffs(sidx, k) * sn.coeffs(n, k) * sn.weights[k] *
           std::exp(-I * sn.eigenvalues[k] * t);
    std::size_t us = static_cast<std::size_t>(sidx);
    B[sidx] = std::exp(-I * (theta_n[us] + sn.gauge[us] -
                             sn.gauge[static_cast<std::size_t>(n)])) * s;
  }

  Eigen::VectorXcd xb = block * B;
  std::complex<double> total = 0.0;
  for (long long r = 0; r < dm; ++r) total += A[r] * xb[r];
  return total;
}

}  // namespace convspec
