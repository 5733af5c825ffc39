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

#include "qtm/matrices.hpp"
#include "qtm/params.hpp"

namespace qtm {

enum class LiouvillianKind { LocalFull, LocalReducedX8, LocalReduced6, GlobalFull };

std::string to_string(LiouvillianKind k);

/// Matrix representation of the master-equation generator acting on the
/// vectorized density matrix (16-dim), or on the reduced coordinate vectors
/// (6- or 8-dim).
struct Liouvillian {
  int dim = 16;
  LiouvillianKind kind = LiouvillianKind::LocalFull;
  MatX matrix;
  std::string basis_convention = kBasisConvention;

  /// Row vector annihilating the matrix from the left (vectorized identity
  /// restricted to this representation).
  VecX trace_left_vector() const;
};

/// The local Lindblad generator as a 16x16 matrix. Requires regime = Local.
Liouvillian build_local_liouvillian(const MachineParams& p);

/// Restriction of the local generator to the steady-state subspace (dim 6)
/// or to X-states (dim 8). Requires regime = Local.
Liouvillian build_reduced_liouvillian(const MachineParams& p, int dim);

/// The global master-equation generator (16x16) with jump operators built
/// from the dressed eigenstates. Requires regime = Global and bosonic baths.
/// At g = 0 the two transition frequencies are degenerate and the same-
/// frequency jump operators are summed coherently, which recovers the local
/// generator.
Liouvillian build_global_liouvillian(const MachineParams& p);

/// Transition-resolved bosonic rates of the global equation:
/// rates(j, a) = (gamma_j^+(e_a), gamma_j^-(e_a)) with a = 0 for e- and 1 for e+.
struct GlobalRates {
  // index [bath][transition]; transition 0 = eps - g, 1 = eps + g
  std::array<std::array<std::pair<double, double>, 2>, 2> rate{};
  double Gamma_total = 0.0;  // sum of all four Gamma_j(e_a)
  std::array<std::array<double, 2>, 2> Gamma_ja{};
};
GlobalRates global_rates(const MachineParams& p);

/// Jump operator L_j(e_a) of the global equation, in the product basis.
Mat4 global_jump_operator(const MachineParams& p, int bath, int transition);

/// Real 6x6 generator acting on the Hermitian steady-state subspace in the
/// real_coords() coordinates. Used by the Jordan-chain construction.
Mat6r reduced_generator_real(const BathRates& r);

}  // namespace qtm
