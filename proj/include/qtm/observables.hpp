// Copyright 2026 The qtm-ep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "qtm/dynamics.hpp"

namespace qtm {

/// Energy flow attributed to bath k's dissipator, with H = H_S + H_int in the
/// bookkeeping so that d/dt Tr(H rho) = J_1 + J_2 exactly along the flow.
/// Positive means energy flowing from the bath into the system. The global
/// regime uses the dressed jump operators.
double heat_current(const Mat4& rho, const MachineParams& p, int bath_index);

/// Wootters concurrence, eigenvalues of rho (sy (x) sy) rho* (sy (x) sy)
/// clipped at zero before the square roots.
double concurrence(const Mat4& rho);

struct ObservableSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> values;
  double steady_value = 0.0;
  bool normalized = false;

  ObservableSeries normalized_by_steady() const;
};

/// Known names: J1, J2, concurrence, p11, p22, p33, p44, abs_rho23,
/// trace_distance. Steady values come from the supplied steady state.
std::vector<ObservableSeries> trajectory_observables(
    const Trajectory& traj, const MachineParams& p, const Mat4& steady,
    const std::vector<std::string>& which);

/// Convenience overload: local regime, analytic steady state.
std::vector<ObservableSeries> trajectory_observables(
    const Trajectory& traj, const MachineParams& p,
    const std::vector<std::string>& which);

}  // namespace qtm
