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

#include "qtm/liouvillian.hpp"

#include <cmath>

namespace qtm {

std::string to_string(LiouvillianKind k) {
  switch (k) {
    case LiouvillianKind::LocalFull: return "local_full";
    case LiouvillianKind::LocalReducedX8: return "local_reduced8";
    case LiouvillianKind::LocalReduced6: return "local_reduced6";
    case LiouvillianKind::GlobalFull: return "global_full";
  }
  return "?";
}

VecX Liouvillian::trace_left_vector() const {
  VecX v = VecX::Zero(dim);
  if (dim == 16) {
    v(0) = v(5) = v(10) = v(15) = 1.0;
  } else {
    v(0) = v(1) = v(2) = v(3) = 1.0;
  }
  return v;
}

Liouvillian build_local_liouvillian(const MachineParams& p) {
  p.validate();
  if (p.regime != Regime::Local)
    throw ConfigError("build_local_liouvillian requires the local regime");
  const BathRates r = derived_rates(p);
  MatX L = hamiltonian_superop(ops::hamiltonian(p.epsilon, p.g));
  for (int k = 0; k < 2; ++k) {
    L += r.gamma_plus[k] * dissipator_superop(ops::sigma_plus(k + 1));
    L += r.gamma_minus[k] * dissipator_superop(ops::sigma_minus(k + 1));
  }
  return Liouvillian{16, LiouvillianKind::LocalFull, std::move(L)};
}

Liouvillian build_reduced_liouvillian(const MachineParams& p, int dim) {
  p.validate();
  if (p.regime != Regime::Local)
    throw ConfigError("build_reduced_liouvillian requires the local regime");
  if (dim != 6 && dim != 8) throw ConfigError("reduced dim must be 6 or 8");
  const BathRates r = derived_rates(p);
  const double gp1 = r.gamma_plus[0], gm1 = r.gamma_minus[0];
  const double gp2 = r.gamma_plus[1], gm2 = r.gamma_minus[1];
  const Complex ig(0.0, p.g);
  MatX L = MatX::Zero(dim, dim);
  L.block<6, 6>(0, 0) << -gm1 - gm2, gp2, gp1, 0, 0, 0,
      gm2, -gm1 - gp2, 0, gp1, ig, -ig,
      gm1, 0, -gp1 - gm2, gp2, -ig, ig,
      0, gm1, gm2, -gp1 - gp2, 0, 0,
      0, ig, -ig, 0, -r.Gamma / 2.0, 0,
      0, -ig, ig, 0, 0, -r.Gamma / 2.0;
  if (dim == 8) {
    // |11><00| and |00><11| decay independently at -+2i eps - Gamma/2.
    L(6, 6) = Complex(-r.Gamma / 2.0, -2.0 * p.epsilon);
    L(7, 7) = Complex(-r.Gamma / 2.0, 2.0 * p.epsilon);
  }
  return Liouvillian{dim,
                     dim == 6 ? LiouvillianKind::LocalReduced6
                              : LiouvillianKind::LocalReducedX8,
                     std::move(L)};
}

GlobalRates global_rates(const MachineParams& p) {
  GlobalRates out;
  const double e[2] = {p.epsilon - p.g, p.epsilon + p.g};
  const double T[2] = {p.T1, p.T2};
  const double gam[2] = {p.gamma1, p.gamma2};
  for (int j = 0; j < 2; ++j)
    for (int a = 0; a < 2; ++a) {
      if (!(e[a] > 0.0))
        throw ConfigError("global regime requires g < epsilon");
      const double n = occupation(BathStatistics::Bosonic, e[a], T[j]);
      out.rate[j][a] = {gam[j] * n, gam[j] * (1.0 + n)};
      out.Gamma_ja[j][a] = gam[j] * (1.0 + 2.0 * n);
      out.Gamma_total += out.Gamma_ja[j][a];
    }
  return out;
}

namespace {

// Dressed eigenstates in the product basis {|11>,|10>,|01>,|00>}.
Eigen::Vector4cd dressed_state(int which) {
  const double s2 = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (which) {
    case 0: v(3) = 1.0; break;             // |0>
    case 1: v(1) = s2; v(2) = -s2; break;  // |e->
    case 2: v(1) = s2; v(2) = s2; break;   // |e+>
    default: v(0) = 1.0; break;            // |2>
  }
  return v;
}

Mat4 projector(int which) {
  const auto v = dressed_state(which);
  return v * v.adjoint();
}

}  // namespace

Mat4 global_jump_operator(const MachineParams& p, int bath, int transition) {
  const Mat4 sm = ops::sigma_minus(bath + 1);
  const Mat4 P0 = projector(0), Pm = projector(1), Pp = projector(2),
             P2 = projector(3);
  if (transition == 0)  // energy eps - g
    return P0 * sm * Pm + Pp * sm * P2;
  return P0 * sm * Pp + Pm * sm * P2;  // energy eps + g
}

Liouvillian build_global_liouvillian(const MachineParams& p) {
  p.validate();
  if (p.regime != Regime::Global)
    throw ConfigError("build_global_liouvillian requires the global regime");
  if (p.statistics != BathStatistics::Bosonic)
    throw ConfigError(
        "global regime is defined with bosonic occupations only");
  MatX L = hamiltonian_superop(ops::hamiltonian(p.epsilon, p.g));
  if (p.g == 0.0) {
    // Degenerate transition frequencies: the same-frequency jump operators
    // sum coherently, L_j(e-) + L_j(e+) = sigma_-^(j), and the generator
    // coincides with the local one.
    const GlobalRates r = global_rates(p);
    for (int j = 0; j < 2; ++j) {
      L += r.rate[j][0].second * dissipator_superop(ops::sigma_minus(j + 1));
      L += r.rate[j][0].first * dissipator_superop(ops::sigma_plus(j + 1));
    }
  } else {
    const GlobalRates r = global_rates(p);
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a) {
        const Mat4 A = global_jump_operator(p, j, a);
        L += r.rate[j][a].second * dissipator_superop(A);
        L += r.rate[j][a].first * dissipator_superop(A.adjoint().eval());
      }
  }
  return Liouvillian{16, LiouvillianKind::GlobalFull, std::move(L)};
}

Mat6r reduced_generator_real(const BathRates& r) {
  const double gp1 = r.gamma_plus[0], gm1 = r.gamma_minus[0];
  const double gp2 = r.gamma_plus[1], gm2 = r.gamma_minus[1];
  const double sg = std::sqrt(2.0) * r.g;
  Mat6r G;
  G << -gm1 - gm2, gp2, gp1, 0, 0, 0,
      gm2, -gm1 - gp2, 0, gp1, 0, -sg,
      gm1, 0, -gp1 - gm2, gp2, 0, sg,
      0, gm1, gm2, -gp1 - gp2, 0, 0,
      0, 0, 0, 0, -r.Gamma / 2.0, 0,
      0, sg, -sg, 0, 0, -r.Gamma / 2.0;
  return G;
}

}  // namespace qtm
