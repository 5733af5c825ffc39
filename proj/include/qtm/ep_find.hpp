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

#include "qtm/jordan.hpp"
#include "qtm/spectral.hpp"

namespace qtm {

enum class EPKind {
  EtaZero,         // lambda_4 = lambda_5 = lambda_6, third order
  BetaZero,        // simultaneous second-order pairs among lambda_9..16
  AlphaMinusBeta,  // lambda_9 = lambda_11 etc.
  AlphaPlusBeta,   // lambda_13 = lambda_15 etc.
  AlphaAndBeta,    // simultaneous fourth order
  GlobalX,         // global equation, X = 0
  GlobalY,         // global equation, Y = 0
};

std::string to_string(EPKind k);
int ep_order(EPKind k);

enum class FreeParameter { G, Gamma1, Gamma2, T1, T2 };
FreeParameter free_parameter_from_string(const std::string& s);
std::string to_string(FreeParameter f);

struct EPReport {
  EPKind kind{};
  int order = 0;
  FreeParameter free_parameter{};
  double value = 0.0;        // root of the condition function
  MachineParams params;      // full parameter point at the root
  std::vector<Complex> merged_eigenvalues;
  CoalescenceDiagnostics diagnostics;
  bool certified = false;    // eigenvector coalescence confirmed numerically
};

/// Real-valued EP condition functions (roots are candidate EPs).
double condition_eta(const MachineParams& p);        // DeltaGamma^2 - 4 g^2
double condition_beta(const MachineParams& p);       // beta radicand
double condition_alpha_beta(const MachineParams& p); // 64 alpha^2 - radicand
double condition_global_X(const MachineParams& p);
double condition_global_Y(const MachineParams& p);

/// Scans free_parameter over [lo, hi] for every EP condition of the active
/// regime (bracketing on a sign-change grid, bisection to 1e-12 relative;
/// eta = 0 additionally uses the closed form when the free parameter is g).
/// Roots whose coalescence diagnostics do not certify eigenvector
/// coalescence (degeneracy without defectiveness, e.g. decoupled qubits) are
/// reported with certified = false and excluded from the EP list unless
/// include_uncertified is set.
std::vector<EPReport> find_eps(const MachineParams& p, FreeParameter free,
                               double lo, double hi,
                               bool include_uncertified = false);

/// One point of a two-parameter EP locus curve.
struct LocusPoint {
  double scan_value = 0.0;  // the swept family parameter
  double g_root = 0.0;
  EPKind kind{};
};

enum class LocusFamily { GammaCommon, Epsilon };

/// EP loci in the (family parameter, g) plane; the family fixes
/// gamma1 = gamma2 = gamma (or sweeps epsilon) with everything else from p.
std::vector<LocusPoint> ep_locus_scan(const MachineParams& p, LocusFamily family,
                                      double lo, double hi, int points,
                                      double g_lo, double g_hi);

}  // namespace qtm
