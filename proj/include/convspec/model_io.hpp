#pragma once

#include <string>

#include "json.hpp"

#include "convspec/evolution.hpp"
#include "convspec/hamiltonian.hpp"

namespace convspec {

// JSON shapes:
//   model:      {"k0":int, "k1":int, "omega0":num, "omega1":num, "coupling":{...}}
//   coupling:   {"type":"family", "name":str, "params":{name:num}}
//             | {"type":"tables", "sectors":[{"N":int, "a":[...], "b_mag":[...],
//                "b_phase":[...]}]}
//             | {"type":"lifted", "k0":int, "k1":int, "inner":<model>}
//   state:      [{"r0":int, "r1":int, "N":int, "re":[...], "im":[...]}]
//               ("im" may be omitted for real amplitudes)
//   observable: [{"bra":{"r0","r1","N"}, "ket":{"r0","r1","N"},
//                 "re":[[...]], "im":[[...]]}]
//               (blocks whose adjoint partner is not listed are mirrored
//               automatically so the stored observable is Hermitian)
// All loaders throw std::invalid_argument naming the offending field.

nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);
ModelSpec load_model(const std::string& path);
void save_model(const ModelSpec& model, const std::string& path);

nlohmann::json state_to_json(const SectoredState& psi);
SectoredState state_from_json(const nlohmann::json& j, const ModelSpec& model);
SectoredState load_state(const std::string& path, const ModelSpec& model);

nlohmann::json observable_to_json(const SectoredObservable& x);
SectoredObservable observable_from_json(const nlohmann::json& j, const ModelSpec& model);
SectoredObservable load_observable(const std::string& path, const ModelSpec& model);

}  // namespace convspec
