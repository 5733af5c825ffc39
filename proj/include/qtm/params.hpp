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

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace qtm {

using Complex = std::complex<double>;

// Error hierarchy; the CLI maps these onto exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BathStatistics { Fermionic, Bosonic };
enum class Regime { Local, Global };

std::string to_string(BathStatistics s);
std::string to_string(Regime r);
BathStatistics statistics_from_string(const std::string& s);
Regime regime_from_string(const std::string& s);

/// Physical parameters of the two-qubit machine, units hbar = k_B = 1 and
/// energies in units of the qubit gap unless stated otherwise.
struct MachineParams {
  double epsilon = 1.0;  // qubit gap
  double T1 = 1.0;       // bath temperatures
  double T2 = 1.0;
  double gamma1 = 0.01;  // bare bath couplings
  double gamma2 = 0.01;
  double g = 0.0;        // inter-qubit coupling
  BathStatistics statistics = BathStatistics::Bosonic;
  Regime regime = Regime::Local;

  /// Throws ConfigError unless epsilon > 0, gammas > 0, T >= 0, g >= 0.
  void validate() const;

  /// Advisory only: the local master equation assumes g <~ gamma_k << epsilon.
  bool local_validity_warning() const;

  MachineParams with_g(double g_new) const {
    MachineParams p = *this;
    p.g = g_new;
    return p;
  }
};

/// Thermal occupation of a two-level gap at (epsilon, T). T = 0 gives 0.
double occupation(BathStatistics s, double epsilon, double T);

/// Incoming/outgoing rates (gamma n, gamma (1 -+ n)) for one bath.
/// Local detailed balance gamma_plus/gamma_minus = exp(-epsilon/T) holds for
/// both statistics.
std::pair<double, double> bath_rates(BathStatistics s, double epsilon, double T,
                                     double gamma);

/// Per-bath rates and the derived spectral parameters.
struct BathRates {
  std::array<double, 2> gamma_plus{};   // gamma_k^+
  std::array<double, 2> gamma_minus{};  // gamma_k^-
  std::array<double, 2> Gamma_k{};      // gamma_k^+ + gamma_k^-
  double Gamma = 0.0;                   // Gamma_1 + Gamma_2
  double DeltaGamma = 0.0;              // (Gamma_1 - Gamma_2) / 2
  double g = 0.0;
  Complex eta{};                        // principal sqrt(DeltaGamma^2 - 4 g^2)
  std::optional<double> zeta_tilde;     // DeltaGamma / (2 g), absent for g = 0

  static BathRates from_rates(double gp1, double gm1, double gp2, double gm2,
                              double g);
};

BathRates derived_rates(const MachineParams& p);

/// Spectral ill-conditioning switch: below this |eta| the reduced Liouvillian
/// is treated as defective and callers are routed to the Jordan path.
inline double eta_switch(double Gamma) { return 1e-6 * Gamma; }

/// g solving eta = 0 at fixed bath rates (|DeltaGamma| / 2).
double critical_g(const MachineParams& p);

}  // namespace qtm
