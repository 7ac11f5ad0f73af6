#pragma once
#include <compare>

namespace convspec {

// Conserved-sector label (r0, r1, N) together with the conversion
// multiplicities (k0, k1) it belongs to.  The sector spans the N+1 basis
// states |r0 + k0*n, r1 + k1*(N-n)> for n = 0..N.
struct SectorIndex {
  long long r0 = 0;
  long long r1 = 0;
  long long N = 0;
  long long k0 = 1;
  long long k1 = 1;

  long long dim() const { return N + 1; }

  friend bool operator==(const SectorIndex&, const SectorIndex&) = default;
  friend auto operator<=>(const SectorIndex&, const SectorIndex&) = default;
};

// Two-mode occupation numbers |n0, n1>.
struct FockState {
  long long n0 = 0;
  long long n1 = 0;

  friend bool operator==(const FockState&, const FockState&) = default;
};

struct DecomposedState {
  SectorIndex mu;
  long long n = 0;  // in-sector index, 0 <= n <= mu.N
};

// Conserved quantities of a state under (k0, k1) conversion.
struct Charges {
  long long K = 0;    // k1*n0 + k0*n1
  long long r0 = 0;   // n0 mod k0
  long long r1 = 0;   // n1 mod k1
  long long dim = 1;  // N + 1 of the containing sector
};

// Splits |n0, n1> into its sector and in-sector index, so that
// n0 = r0 + k0*n and n1 = r1 + k1*(N - n).
DecomposedState decompose_state(FockState s, long long k0, long long k1);

// Inverse of decompose_state; n must lie in [0, N].
FockState compose_state(const SectorIndex& mu, long long n);

Charges charges(FockState s, long long k0, long long k1);

}  // namespace convspec
