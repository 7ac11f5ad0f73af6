#include "convspec/fock_sector.hpp"

#include <stdexcept>
#include <string>

namespace convspec {

namespace {

void check_multiplicities(long long k0, long long k1) {
  if (k0 < 1 || k1 < 1)
    throw std::invalid_argument("conversion multiplicities k0, k1 must be >= 1 (got k0=" +
                                std::to_string(k0) + ", k1=" + std::to_string(k1) + ")");
}

void check_occupations(FockState s) {
  if (s.n0 < 0 || s.n1 < 0)
    throw std::invalid_argument("occupation numbers must be nonnegative (got n0=" +
                                std::to_string(s.n0) + ", n1=" + std::to_string(s.n1) + ")");
}

}  // namespace

DecomposedState decompose_state(FockState s, long long k0, long long k1) {
  check_multiplicities(k0, k1);
  check_occupations(s);
  DecomposedState d;
  d.mu.k0 = k0;
  d.mu.k1 = k1;
  d.mu.r0 = s.n0 % k0;
  d.mu.r1 = s.n1 % k1;
  d.n = (s.n0 - d.mu.r0) / k0;
  d.mu.N = d.n + (s.n1 - d.mu.r1) / k1;
  return d;
}

FockState compose_state(const SectorIndex& mu, long long n) {
  check_multiplicities(mu.k0, mu.k1);
  if (mu.r0 < 0 || mu.r0 >= mu.k0 || mu.r1 < 0 || mu.r1 >= mu.k1 || mu.N < 0)
    throw std::invalid_argument("invalid sector index (r0=" + std::to_string(mu.r0) +
                                ", r1=" + std::to_string(mu.r1) + ", N=" + std::to_string(mu.N) +
                                ", k0=" + std::to_string(mu.k0) + ", k1=" + std::to_string(mu.k1) + ")");
  if (n < 0 || n > mu.N)
    throw std::invalid_argument("in-sector index n=" + std::to_string(n) +
                                " outside [0, " + std::to_string(mu.N) + "]");
  return FockState{mu.r0 + mu.k0 * n, mu.r1 + mu.k1 * (mu.N - n)};
}

Charges charges(FockState s, long long k0, long long k1) {
  DecomposedState d = decompose_state(s, k0, k1);
  Charges c;
  c.K = k1 * s.n0 + k0 * s.n1;
  c.r0 = d.mu.r0;
  c.r1 = d.mu.r1;
  c.dim = d.mu.N + 1;
  return c;
}

}  // namespace convspec
