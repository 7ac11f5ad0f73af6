#pragma once

#include "convspec/hamiltonian.hpp"

namespace convspec {

// Diagonal rescaling factor W for the multi-quantum conversion monomial,
// evaluated at occupation numbers (n0, n1) lying in the sector with
// remainders (r0, r1). Chosen so that W * a0^k0 * (a1*)^k1 acts on sector
// basis states exactly like the single-quantum ladder sqrt(n(N-n+1)).
double w_factor(long long k0, long long k1, long long n0, long long n1, long long r0,
                long long r1);

// Wraps a single-quantum model (k0 = k1 = 1) so that every sector of the
// (k0, k1) conversion problem reproduces its coefficients, spectra and
// polynomials. k0 = k1 = 1 returns the inner model unchanged.
ModelSpec lift_model(const ModelSpec& inner, long long k0, long long k1);

}  // namespace convspec
