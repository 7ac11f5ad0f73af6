#include "convspec/lifting.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "convspec/errors.hpp"

namespace convspec {

double w_factor(long long k0, long long k1, long long n0, long long n1, long long r0,
                long long r1) {
  if (k0 < 1 || k1 < 1)
    throw std::invalid_argument("w_factor needs k0 >= 1 and k1 >= 1 (got k0=" +
                                std::to_string(k0) + ", k1=" + std::to_string(k1) + ")");
  if (n0 < 0 || n1 < 0)
    throw std::invalid_argument("w_factor needs nonnegative occupations (got n0=" +
                                std::to_string(n0) + ", n1=" + std::to_string(n1) + ")");
  if (r0 < 0 || r0 >= k0 || r1 < 0 || r1 >= k1)
    throw std::invalid_argument("w_factor remainders must satisfy 0 <= r < k (got r0=" +
                                std::to_string(r0) + ", r1=" + std::to_string(r1) + ")");
  if (n0 % k0 != r0 || n1 % k1 != r1)
    throw std::invalid_argument("occupations (n0=" + std::to_string(n0) +
                                ", n1=" + std::to_string(n1) +
                                ") do not lie in the sector with remainders (r0=" +
                                std::to_string(r0) + ", r1=" + std::to_string(r1) + ")");
  if (n1 < k1)
    throw std::invalid_argument("w_factor needs n1 >= k1 (got n1=" + std::to_string(n1) +
                                ", k1=" + std::to_string(k1) + ")");

  double num = static_cast<double>(n0 - r0 + k0) * static_cast<double>(n1 - r1);
  double den = static_cast<double>(k0) * static_cast<double>(k1);
  for (long long j = 1; j <= k0; ++j) den *= static_cast<double>(n0 + j);
  for (long long j = 0; j < k1; ++j) den *= static_cast<double>(n1 - j);
  if (!(den > 0.0) || num < 0.0)
    throw numerical_error("w_factor ratio left its guaranteed-nonnegative domain (num=" +
                          std::to_string(num) + ", den=" + std::to_string(den) + ")");
  return std::sqrt(num / den);
}

ModelSpec lift_model(const ModelSpec& inner, long long k0, long long k1) {
  if (inner.k0 != 1 || inner.k1 != 1)
    throw std::invalid_argument("lift_model needs an inner model with k0 = k1 = 1 (got k0=" +
                                std::to_string(inner.k0) + ", k1=" +
                                std::to_string(inner.k1) + ")");
  if (k0 < 1 || k1 < 1)
    throw std::invalid_argument("lift_model targets need k0 >= 1 and k1 >= 1 (got k0=" +
                                std::to_string(k0) + ", k1=" + std::to_string(k1) + ")");
  validate_model(inner);
  if (k0 == 1 && k1 == 1) return inner;

  ModelSpec lifted;
  lifted.k0 = k0;
  lifted.k1 = k1;
  lifted.omega0 = inner.omega0;
  lifted.omega1 = inner.omega1;
  lifted.coupling = LiftedCoupling{std::make_shared<const ModelSpec>(inner)};
  return lifted;
}

}  // namespace convspec
