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

#include "qtm/ep_find.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qtm {

std::string to_string(EPKind k) {
  switch (k) {
    case EPKind::EtaZero: return "eta_zero";
    case EPKind::BetaZero: return "beta_zero";
    case EPKind::AlphaMinusBeta: return "alpha_minus_beta";
    case EPKind::AlphaPlusBeta: return "alpha_plus_beta";
    case EPKind::AlphaAndBeta: return "alpha_and_beta";
    case EPKind::GlobalX: return "global_x";
    case EPKind::GlobalY: return "global_y";
  }
  return "?";
}

int ep_order(EPKind k) {
  switch (k) {
    case EPKind::EtaZero: return 3;
    case EPKind::AlphaAndBeta: return 4;
    default: return 2;
  }
}

FreeParameter free_parameter_from_string(const std::string& s) {
  if (s == "g") return FreeParameter::G;
  if (s == "gamma1") return FreeParameter::Gamma1;
  if (s == "gamma2") return FreeParameter::Gamma2;
  if (s == "t1") return FreeParameter::T1;
  if (s == "t2") return FreeParameter::T2;
  throw ConfigError("unknown free_parameter: " + s);
}

std::string to_string(FreeParameter f) {
  switch (f) {
    case FreeParameter::G: return "g";
    case FreeParameter::Gamma1: return "gamma1";
    case FreeParameter::Gamma2: return "gamma2";
    case FreeParameter::T1: return "t1";
    case FreeParameter::T2: return "t2";
  }
  return "?";
}

namespace {

MachineParams with_free(const MachineParams& p, FreeParameter f, double v) {
  MachineParams q = p;
  switch (f) {
    case FreeParameter::G: q.g = v; break;
    case FreeParameter::Gamma1: q.gamma1 = v; break;
    case FreeParameter::Gamma2: q.gamma2 = v; break;
    case FreeParameter::T1: q.T1 = v; break;
    case FreeParameter::T2: q.T2 = v; break;
  }
  return q;
}

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if ((b - a) <= 1e-12 * std::max(1.0, std::abs(m))) return m;
    const double fm = f(m);
    if ((fa <= 0) == (fm <= 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Sign-change grid (200 points per decade, at least 400 overall) + bisection.
std::vector<double> bracket_roots(const std::function<double(double)>& f,
                                  double lo, double hi) {
  std::vector<double> roots;
  if (!(hi > lo)) return roots;
  int n = 400;
  if (lo > 0)
    n = std::max(n, static_cast<int>(200.0 * std::log10(hi / lo)));
  n = std::min(n, 20000);
  double prev_x = lo, prev_f = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double fx = f(x);
    if (std::isfinite(prev_f) && std::isfinite(fx)) {
      if (prev_f == 0.0) roots.push_back(prev_x);
      else if ((prev_f < 0) != (fx < 0))
        roots.push_back(bisect(f, prev_x, x));
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

// Indices (sorted order) of the eigenvalues that merge for each kind, used
// for the coalescence diagnostics. Computed by clustering the analytic
// spectrum around the predicted merged values.
std::vector<int> merged_cluster(const std::vector<Complex>& sorted_analytic,
                                const std::vector<Complex>& merged) {
  std::vector<int> idx;
  for (size_t i = 0; i < sorted_analytic.size(); ++i)
    for (const Complex& m : merged)
      if (std::abs(sorted_analytic[i] - m) < 1e-7 * std::max(1.0, std::abs(m))) {
        idx.push_back(static_cast<int>(i));
        break;
      }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace

double condition_eta(const MachineParams& p) {
  const BathRates r = derived_rates(p);
  return r.DeltaGamma * r.DeltaGamma - 4.0 * p.g * p.g;
}

double condition_beta(const MachineParams& p) {
  return spectral_aux(derived_rates(p)).beta_radicand;
}

double condition_alpha_beta(const MachineParams& p) {
  const SpectralAux a = spectral_aux(derived_rates(p));
  return 64.0 * a.alpha_s * a.alpha_s - a.beta_radicand;
}

double condition_global_X(const MachineParams& p) {
  return global_spectral_aux(p).X;
}

double condition_global_Y(const MachineParams& p) {
  return global_spectral_aux(p).Y;
}

std::vector<EPReport> find_eps(const MachineParams& p, FreeParameter free,
                               double lo, double hi, bool include_uncertified) {
  p.validate();
  if (!(hi > lo)) throw ConfigError("find_eps: empty scan range");
  std::vector<EPReport> out;

  struct Candidate {
    EPKind kind;
    double value;
  };
  std::vector<Candidate> cands;

  auto scan = [&](EPKind kind, const std::function<double(double)>& f) {
    for (double root : bracket_roots(f, lo, hi)) cands.push_back({kind, root});
  };

  if (p.regime == Regime::Local) {
    if (free == FreeParameter::G) {
      // closed form: eta = 0 at g = |DeltaGamma| / 2
      const double gbar = critical_g(p);
      if (gbar > lo && gbar < hi) cands.push_back({EPKind::EtaZero, gbar});
    } else {
      scan(EPKind::EtaZero,
           [&](double v) { return condition_eta(with_free(p, free, v)); });
    }
    scan(EPKind::BetaZero,
         [&](double v) { return condition_beta(with_free(p, free, v)); });
    // 64 alpha^2 = radicand covers both alpha - beta = 0 (alpha >= 0) and
    // alpha + beta = 0 (alpha < 0); classify by the sign of alpha at the root.
    for (double root : bracket_roots(
             [&](double v) { return condition_alpha_beta(with_free(p, free, v)); },
             lo, hi)) {
      const SpectralAux a = spectral_aux(derived_rates(with_free(p, free, root)));
      const double scale = std::max(std::abs(a.alpha_s), std::abs(a.beta_s));
      if (std::abs(a.alpha_s) < 1e-9 * std::max(scale, 1e-30) &&
          std::abs(a.beta_s) < 1e-9 * std::max(scale, 1e-30))
        cands.push_back({EPKind::AlphaAndBeta, root});
      else if (a.alpha_s >= 0)
        cands.push_back({EPKind::AlphaMinusBeta, root});
      else
        cands.push_back({EPKind::AlphaPlusBeta, root});
    }
  } else {
    scan(EPKind::GlobalX,
         [&](double v) { return condition_global_X(with_free(p, free, v)); });
    scan(EPKind::GlobalY,
         [&](double v) { return condition_global_Y(with_free(p, free, v)); });
  }

  for (const Candidate& c : cands) {
    EPReport rep;
    rep.kind = c.kind;
    rep.order = ep_order(c.kind);
    rep.free_parameter = free;
    rep.value = c.value;
    rep.params = with_free(p, free, c.value);

    const bool global = p.regime == Regime::Global;
    std::vector<Complex> lam = global ? analytic_spectrum_global(rep.params)
                                      : analytic_spectrum_local(rep.params);
    std::vector<Complex> merged;
    switch (c.kind) {
      case EPKind::EtaZero:
        merged = {lam[3], lam[4], lam[5]};
        break;
      case EPKind::BetaZero:
      case EPKind::AlphaAndBeta:
        merged.assign(lam.begin() + 8, lam.end());
        break;
      case EPKind::AlphaMinusBeta:
        merged.assign(lam.begin() + 8, lam.begin() + 12);
        break;
      case EPKind::AlphaPlusBeta:
        merged.assign(lam.begin() + 12, lam.end());
        break;
      case EPKind::GlobalX:
        merged.assign(lam.begin() + 8, lam.begin() + 12);
        break;
      case EPKind::GlobalY:
        merged.assign(lam.begin() + 12, lam.end());
        break;
    }
    std::vector<Complex> sorted = lam;
    sort_spectrum(sorted);
    rep.merged_eigenvalues = merged;

    const Liouvillian L = global ? build_global_liouvillian(rep.params)
                                 : build_local_liouvillian(rep.params);
    rep.diagnostics = coalescence_diagnostics(L, merged_cluster(sorted, merged));
    // An EP must coalesce eigenvectors, not just eigenvalues; a degeneracy
    // with a well-conditioned basis (e.g. decoupled qubits at DeltaGamma = 0)
    // is not one.
    rep.certified = rep.diagnostics.basis_condition > 1e6 ||
                    rep.diagnostics.min_eigenmatrix_distance < 1e-3;
    if (rep.certified || include_uncertified) out.push_back(rep);
  }

  std::sort(out.begin(), out.end(), [](const EPReport& a, const EPReport& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.value < b.value;
  });
  return out;
}

std::vector<LocusPoint> ep_locus_scan(const MachineParams& p, LocusFamily family,
                                      double lo, double hi, int points,
                                      double g_lo, double g_hi) {
  if (points < 2) throw ConfigError("ep_locus_scan: need at least 2 points");
  std::vector<LocusPoint> out;
  for (int i = 0; i < points; ++i) {
    const double v = lo * std::pow(hi / lo, double(i) / (points - 1));
    MachineParams q = p;
    if (family == LocusFamily::GammaCommon)
      q.gamma1 = q.gamma2 = v;
    else
      q.epsilon = v;
    for (const EPReport& rep : find_eps(q, FreeParameter::G, g_lo, g_hi))
      out.push_back({v, rep.value, rep.kind});
  }
  return out;
}

}  // namespace qtm
