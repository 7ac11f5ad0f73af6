#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "convspec/polynomials.hpp"

namespace convspec {

// The nine closed-form coupling families.
enum class Family {
  krawtchouk,
  dual_hahn,
  chebyshev,
  hahn,
  dual_q_hahn,
  affine_q_krawtchouk,
  q_krawtchouk,
  q_hahn,
  dual_q_krawtchouk,
};

Family family_from_name(const std::string& name);  // invalid_argument on unknown
const std::string& family_name(Family f);
bool family_is_q(Family f);
const std::vector<Family>& all_families();
// parameter names each family expects, in canonical flag order
const std::vector<std::string>& family_param_names(Family f);

// Diagonal entry and squared off-diagonal entry of the sector-N operator.
// b2 is exactly zero one step outside the sector (n = -1 and n = N),
// through vanishing factors of the stored coefficient formulas.
struct JacobiCoeffs {
  double a = 0.0;
  double b2 = 0.0;
};

struct FamilyDescriptor {
  Family name = Family::krawtchouk;
  std::map<std::string, double> params;
  // closed-form eigenvalue E_l of the sector-N operator
  std::function<double(long long l, long long N)> spectrum_map;
  // closed-form weight in the catalog's own normalization (w_0-anchored,
  // not summed to one); weight_norm(N) is the factor making the sum 1
  std::function<double(long long l, long long N)> weight_map;
  std::function<double(long long N)> weight_norm;
  // closed-form normalized polynomial value at the l-th eigenvalue
  std::function<double(long long n, long long l, long long N)> poly_eval;
  std::function<JacobiCoeffs(long long n, long long N)> jacobi_map;
};

FamilyDescriptor make_family(Family f, const std::map<std::string, double>& params);
FamilyDescriptor make_family(const std::string& name,
                             const std::map<std::string, double>& params);

// Range-checked accessors over a descriptor (l, n in [0, N], N capped).
double family_spectrum(const FamilyDescriptor& f, long long l, long long N);
double family_weight(const FamilyDescriptor& f, long long l, long long N);
double family_weight_normalized(const FamilyDescriptor& f, long long l, long long N);
double family_polynomial(const FamilyDescriptor& f, long long n, long long l,
                         long long N);

}  // namespace convspec
