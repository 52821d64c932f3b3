#pragma once

#include <map>
#include <memory>
#include <string>

#include "cmkdv/profile.hpp"
#include "cmkdv/scattering.hpp"

namespace cmkdv::testing {

inline const char* const kPerturbed = "tanh_plus_sech2:0.3";

/// Solver on [-30, 30] with h = 0.02; built once per process and shared read-only.
inline const ScatteringSolver& solver_for(const std::string& spec) {
  static std::map<std::string, std::unique_ptr<ScatteringSolver>> cache;
  auto& slot = cache[spec];
  if (!slot) slot = std::make_unique<ScatteringSolver>(build_profile(spec, 30.0, 0.02));
  return *slot;
}

}  // namespace cmkdv::testing
