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

#include "qtm/params.hpp"

#include <algorithm>
#include <cmath>

namespace qtm {

std::string to_string(BathStatistics s) {
  return s == BathStatistics::Fermionic ? "fermionic" : "bosonic";
}

std::string to_string(Regime r) {
  return r == Regime::Local ? "local" : "global";
}

BathStatistics statistics_from_string(const std::string& s) {
  if (s == "fermionic") return BathStatistics::Fermionic;
  if (s == "bosonic") return BathStatistics::Bosonic;
  throw ConfigError("unknown bath_statistics: " + s);
}

Regime regime_from_string(const std::string& s) {
  if (s == "local") return Regime::Local;
  if (s == "global") return Regime::Global;
  throw ConfigError("unknown regime: " + s);
}

void MachineParams::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
    throw ConfigError("gamma1, gamma2 must be > 0");
  if (T1 < 0.0 || T2 < 0.0) throw ConfigError("temperatures must be >= 0");
  if (g < 0.0) throw ConfigError("g must be >= 0");
}

bool MachineParams::local_validity_warning() const {
  if (regime != Regime::Local) return false;
  const double gmax = std::max(gamma1, gamma2);
  return g > 10.0 * gmax || gmax > 0.1 * epsilon;
}

double occupation(BathStatistics s, double epsilon, double T) {
  if (!(epsilon > 0.0)) throw ConfigError("occupation: epsilon must be > 0");
  if (T < 0.0) throw ConfigError("occupation: T must be >= 0");
  if (T == 0.0) return 0.0;
  const double x = epsilon / T;
  if (s == BathStatistics::Fermionic) {
    // 1 / (e^x + 1), overflow-safe
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

std::pair<double, double> bath_rates(BathStatistics s, double epsilon, double T,
                                     double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("bath_rates: gamma must be > 0");
  const double n = occupation(s, epsilon, T);
  if (s == BathStatistics::Fermionic) return {gamma * n, gamma * (1.0 - n)};
  return {gamma * n, gamma * (1.0 + n)};
}

BathRates BathRates::from_rates(double gp1, double gm1, double gp2, double gm2,
                                double g) {
  if (gp1 < 0 || gm1 < 0 || gp2 < 0 || gm2 < 0)
    throw ConfigError("rates must be >= 0");
  BathRates r;
  r.gamma_plus = {gp1, gp2};
  r.gamma_minus = {gm1, gm2};
  r.Gamma_k = {gp1 + gm1, gp2 + gm2};
  r.Gamma = r.Gamma_k[0] + r.Gamma_k[1];
  r.DeltaGamma = (r.Gamma_k[0] - r.Gamma_k[1]) / 2.0;
  r.g = g;
  r.eta = std::sqrt(Complex(r.DeltaGamma * r.DeltaGamma - 4.0 * g * g, 0.0));
  if (g > 0.0) r.zeta_tilde = r.DeltaGamma / (2.0 * g);
  return r;
}

BathRates derived_rates(const MachineParams& p) {
  p.validate();
  auto [gp1, gm1] = bath_rates(p.statistics, p.epsilon, p.T1, p.gamma1);
  auto [gp2, gm2] = bath_rates(p.statistics, p.epsilon, p.T2, p.gamma2);
  return BathRates::from_rates(gp1, gm1, gp2, gm2, p.g);
}

double critical_g(const MachineParams& p) {
  return std::abs(derived_rates(p).DeltaGamma) / 2.0;
}

}  // namespace qtm
