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

#include "qtm/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qtm/dynamics.hpp"
#include "qtm/ep_find.hpp"
#include "qtm/ho.hpp"
#include "qtm/io.hpp"
#include "qtm/observables.hpp"

namespace qtm::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommonKeys = {
    "epsilon", "t1", "t2", "gamma1", "gamma2", "g", "bath_statistics",
    "regime", "precision", "g_critical"};
const std::set<std::string> kGridKeys = {"t_min", "t_max", "t_points",
                                         "t_spacing"};

std::set<std::string> allowed_keys(const std::string& command) {
  std::set<std::string> keys = kCommonKeys;
  auto add = [&](std::initializer_list<const char*> more) {
    for (const char* k : more) keys.insert(k);
  };
  if (command == "spectrum") {
    add({"dim"});
  } else if (command == "ep-find") {
    add({"free_parameter", "scan_min", "scan_max", "locus_parameter",
         "locus_min", "locus_max", "locus_points", "locus_g_min",
         "locus_g_max"});
  } else if (command == "evolve") {
    keys.insert(kGridKeys.begin(), kGridKeys.end());
    add({"initial_states", "g_values", "with_ode_oracle", "dim"});
  } else if (command == "ratio") {
    keys.insert(kGridKeys.begin(), kGridKeys.end());
    add({"initial_states"});
  } else if (command == "ho") {
    keys.insert(kGridKeys.begin(), kGridKeys.end());
    add({"m", "k", "gamma_comparators", "f0"});
  } else {
    throw ConfigError("unknown command: " + command);
  }
  return keys;
}

double get_num(const json& j, const std::string& key) {
  if (!j.at(key).is_number())
    throw ConfigError("config key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text,
                                    const std::string& command) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto allowed = allowed_keys(command);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ConfigError("unknown config key for " + command + ": " + key);

  RunConfig c;
  if (j.contains("epsilon")) c.params.epsilon = get_num(j, "epsilon");
  if (j.contains("t1")) c.params.T1 = get_num(j, "t1");
  if (j.contains("t2")) c.params.T2 = get_num(j, "t2");
  if (j.contains("gamma1")) c.params.gamma1 = get_num(j, "gamma1");
  if (j.contains("gamma2")) c.params.gamma2 = get_num(j, "gamma2");
  if (j.contains("g")) c.params.g = get_num(j, "g");
  if (j.contains("bath_statistics"))
    c.params.statistics =
        statistics_from_string(j.at("bath_statistics").get<std::string>());
  if (j.contains("regime"))
    c.params.regime = regime_from_string(j.at("regime").get<std::string>());
  if (j.contains("precision")) {
    c.precision = j.at("precision").get<int>();
    if (c.precision < 1 || c.precision > 17)
      throw ConfigError("precision must be in [1, 17]");
  }
  if (j.contains("g_critical")) c.g_critical = j.at("g_critical").get<bool>();
  if (j.contains("t_min")) c.t_min = get_num(j, "t_min");
  if (j.contains("t_max")) c.t_max = get_num(j, "t_max");
  if (j.contains("t_points")) c.t_points = j.at("t_points").get<int>();
  if (j.contains("t_spacing")) {
    c.t_spacing = j.at("t_spacing").get<std::string>();
    if (c.t_spacing != "log" && c.t_spacing != "linear")
      throw ConfigError("t_spacing must be 'log' or 'linear'");
  }
  if (j.contains("dim")) {
    c.dim = j.at("dim").get<int>();
    if (c.dim != 6 && c.dim != 8 && c.dim != 16)
      throw ConfigError("dim must be 6, 8 or 16");
  }
  if (j.contains("free_parameter"))
    c.free_parameter = j.at("free_parameter").get<std::string>();
  if (j.contains("scan_min")) c.scan_min = get_num(j, "scan_min");
  if (j.contains("scan_max")) c.scan_max = get_num(j, "scan_max");
  if (j.contains("locus_parameter")) {
    c.locus_parameter = j.at("locus_parameter").get<std::string>();
    if (c.locus_parameter != "gamma" && c.locus_parameter != "epsilon")
      throw ConfigError("locus_parameter must be 'gamma' or 'epsilon'");
  }
  if (j.contains("locus_min")) c.locus_min = get_num(j, "locus_min");
  if (j.contains("locus_max")) c.locus_max = get_num(j, "locus_max");
  if (j.contains("locus_points")) c.locus_points = j.at("locus_points").get<int>();
  if (j.contains("locus_g_min")) c.locus_g_min = get_num(j, "locus_g_min");
  if (j.contains("locus_g_max")) c.locus_g_max = get_num(j, "locus_g_max");
  if (j.contains("initial_states"))
    c.initial_states = j.at("initial_states").get<std::vector<std::string>>();
  if (j.contains("g_values"))
    c.g_values = j.at("g_values").get<std::vector<double>>();
  if (j.contains("with_ode_oracle"))
    c.with_ode_oracle = j.at("with_ode_oracle").get<bool>();
  if (j.contains("m")) c.ho_m = get_num(j, "m");
  if (j.contains("k")) c.ho_k = get_num(j, "k");
  if (j.contains("gamma_comparators"))
    c.ho_comparators = j.at("gamma_comparators").get<std::vector<double>>();
  if (j.contains("f0")) {
    const auto f0 = j.at("f0").get<std::vector<double>>();
    if (f0.size() != 2) throw ConfigError("f0 must be [p, x]");
    c.ho_f0_p = f0[0];
    c.ho_f0_x = f0[1];
  }
  return c;
}

std::string RunConfig::to_json_text(const std::string& command) const {
  json j;
  j["epsilon"] = params.epsilon;
  j["t1"] = params.T1;
  j["t2"] = params.T2;
  j["gamma1"] = params.gamma1;
  j["gamma2"] = params.gamma2;
  j["g"] = params.g;
  j["bath_statistics"] = to_string(params.statistics);
  j["regime"] = to_string(params.regime);
  j["precision"] = precision;
  j["g_critical"] = g_critical;
  if (command == "spectrum") j["dim"] = dim;
  if (command == "evolve" || command == "ratio" || command == "ho") {
    if (t_min) j["t_min"] = *t_min;
    if (t_max) j["t_max"] = *t_max;
    j["t_points"] = t_points;
    j["t_spacing"] = t_spacing;
  }
  if (command == "ep-find") {
    j["free_parameter"] = free_parameter;
    if (scan_min) j["scan_min"] = *scan_min;
    if (scan_max) j["scan_max"] = *scan_max;
    if (!locus_parameter.empty()) {
      j["locus_parameter"] = locus_parameter;
      j["locus_min"] = locus_min;
      j["locus_max"] = locus_max;
      j["locus_points"] = locus_points;
      j["locus_g_min"] = locus_g_min;
      j["locus_g_max"] = locus_g_max;
    }
  }
  if (command == "evolve") {
    j["initial_states"] = initial_states;
    if (!g_values.empty()) j["g_values"] = g_values;
    j["with_ode_oracle"] = with_ode_oracle;
    j["dim"] = dim;
  }
  if (command == "ratio") j["initial_states"] = initial_states;
  if (command == "ho") {
    j["m"] = ho_m;
    j["k"] = ho_k;
    j["gamma_comparators"] = ho_comparators;
    j["f0"] = std::vector<double>{ho_f0_p, ho_f0_x};
  }
  return j.dump(2) + "\n";
}

namespace {

namespace fs = std::filesystem;

std::vector<double> make_grid(const RunConfig& c, const MachineParams& p,
                              double default_tmax_factor = 20.0) {
  const BathRates r = derived_rates(p);
  const double tmin = c.t_min.value_or(1e-2 / p.epsilon);
  const double tmax = c.t_max.value_or(default_tmax_factor / r.Gamma);
  return c.t_spacing == "linear" ? linear_grid(tmin, tmax, c.t_points)
                                 : log_grid(std::max(tmin, 1e-12), tmax, c.t_points);
}

MachineParams effective_params(const RunConfig& c) {
  MachineParams p = c.params;
  if (c.g_critical) p.g = critical_g(p);
  p.validate();
  return p;
}

json eta_json(const BathRates& r, int precision) {
  json j;
  j["re"] = r.eta.real();
  j["im"] = r.eta.imag();
  (void)precision;
  return j;
}

void cmd_spectrum(const RunConfig& c, const fs::path& out) {
  const MachineParams p = effective_params(c);
  Liouvillian L = [&] {
    if (p.regime == Regime::Global) return build_global_liouvillian(p);
    if (c.dim == 16) return build_local_liouvillian(p);
    return build_reduced_liouvillian(p, c.dim);
  }();
  std::vector<Complex> analytic = [&] {
    if (p.regime == Regime::Global) return analytic_spectrum_global(p);
    if (c.dim == 16) return analytic_spectrum_local(p);
    std::vector<Complex> lam = analytic_spectrum_reduced(p);
    if (c.dim == 8) {
      const BathRates r = derived_rates(p);
      lam.push_back(Complex(-r.Gamma / 2, 2 * p.epsilon));
      lam.push_back(Complex(-r.Gamma / 2, -2 * p.epsilon));
    }
    return lam;
  }();
  sort_spectrum(analytic);
  Eigen::ComplexEigenSolver<MatX> es(L.matrix, false);
  std::vector<Complex> numeric(es.eigenvalues().data(),
                               es.eigenvalues().data() + L.dim);

  // greedy nearest-match against the sorted analytic list
  std::vector<Complex> matched(analytic.size());
  std::vector<bool> used(numeric.size(), false);
  double max_mismatch = 0.0;
  for (size_t i = 0; i < analytic.size(); ++i) {
    int jb = -1;
    double db = 0;
    for (size_t k = 0; k < numeric.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(analytic[i] - numeric[k]);
      if (jb < 0 || d < db) {
        jb = static_cast<int>(k);
        db = d;
      }
    }
    used[jb] = true;
    matched[i] = numeric[jb];
    max_mismatch = std::max(max_mismatch, db);
  }

  CsvTable t;
  t.header = {"index", "re_lambda", "im_lambda", "source", "kind"};
  const std::string kind = to_string(L.kind);
  for (size_t i = 0; i < analytic.size(); ++i)
    t.rows.push_back({std::to_string(i + 1),
                      format_sig(analytic[i].real(), c.precision),
                      format_sig(analytic[i].imag(), c.precision), "analytic",
                      kind});
  for (size_t i = 0; i < matched.size(); ++i)
    t.rows.push_back({std::to_string(i + 1),
                      format_sig(matched[i].real(), c.precision),
                      format_sig(matched[i].imag(), c.precision), "numeric",
                      kind});
  atomic_write(out / "spectrum.csv", t.serialize());

  const BathRates r = derived_rates(p);
  const SpectralAux aux = spectral_aux(r);
  json s;
  s["kind"] = kind;
  s["Gamma"] = r.Gamma;
  s["Gamma1"] = r.Gamma_k[0];
  s["Gamma2"] = r.Gamma_k[1];
  s["DeltaGamma"] = r.DeltaGamma;
  s["eta"] = eta_json(r, c.precision);
  if (r.zeta_tilde) s["zeta_tilde"] = *r.zeta_tilde;
  else s["zeta_tilde"] = nullptr;
  s["max_mismatch"] = max_mismatch;
  s["local_validity_warning"] = p.local_validity_warning();
  json flags;
  const double rad_scale = std::max(
      {std::abs(aux.beta_radicand), 1e-30,
       4.0 * r.DeltaGamma * r.DeltaGamma * r.Gamma * r.Gamma});
  flags["eta_zero"] = std::abs(r.eta) < eta_switch(r.Gamma);
  flags["beta_zero"] = p.g > 0 && std::abs(aux.beta_radicand) < 1e-10 * rad_scale;
  const double ab = 64.0 * aux.alpha_s * aux.alpha_s - aux.beta_radicand;
  const double ab_scale =
      std::max({std::abs(ab), 64.0 * aux.alpha_s * aux.alpha_s, 1e-30});
  flags["alpha_minus_beta"] =
      p.g > 0 && std::abs(ab) < 1e-10 * ab_scale && aux.alpha_s >= 0;
  flags["alpha_plus_beta"] =
      p.g > 0 && std::abs(ab) < 1e-10 * ab_scale && aux.alpha_s < 0;
  s["ep_flags"] = flags;
  if (p.regime == Regime::Global) {
    const GlobalSpectralAux ga = global_spectral_aux(p);
    s["global_X"] = ga.X;
    s["global_Y"] = ga.Y;
  }
  atomic_write(out / "spectrum_summary.json", s.dump(2) + "\n");
}

void cmd_ep_find(const RunConfig& c, const fs::path& out) {
  const MachineParams p = effective_params(c);
  if (!c.scan_min || !c.scan_max)
    throw ConfigError("ep-find requires scan_min and scan_max");
  const FreeParameter free = free_parameter_from_string(c.free_parameter);
  const auto reports = find_eps(p, free, *c.scan_min, *c.scan_max);

  CsvTable t;
  t.header = {"kind", "free_parameter", "value", "order", "merged_re",
              "merged_im", "min_eig_gap", "min_eigmat_distance",
              "basis_condition"};
  for (const EPReport& rep : reports) {
    const Complex m0 = rep.merged_eigenvalues.empty()
                           ? Complex(0)
                           : rep.merged_eigenvalues.front();
    t.rows.push_back(
        {to_string(rep.kind), to_string(rep.free_parameter),
         format_sig(rep.value, c.precision), std::to_string(rep.order),
         format_sig(m0.real(), c.precision), format_sig(m0.imag(), c.precision),
         format_sig(rep.diagnostics.min_eigenvalue_gap, 6),
         format_sig(rep.diagnostics.min_eigenmatrix_distance, 6),
         format_sig(rep.diagnostics.basis_condition, 6)});
  }
  atomic_write(out / "ep_roots.csv", t.serialize());

  json s;
  s["roots"] = reports.size();
  json per_kind = json::object();
  for (const EPReport& rep : reports) {
    const std::string k = to_string(rep.kind);
    per_kind[k] = per_kind.contains(k) ? per_kind[k].get<int>() + 1 : 1;
  }
  s["per_kind"] = per_kind;

  if (!c.locus_parameter.empty()) {
    const LocusFamily fam = c.locus_parameter == "gamma"
                                ? LocusFamily::GammaCommon
                                : LocusFamily::Epsilon;
    const auto locus = ep_locus_scan(p, fam, c.locus_min, c.locus_max,
                                     c.locus_points, c.locus_g_min,
                                     c.locus_g_max);
    CsvTable lt;
    lt.header = {"scan_parameter", "scan_value", "g_root", "kind"};
    for (const LocusPoint& pt : locus)
      lt.rows.push_back({c.locus_parameter, format_sig(pt.scan_value, c.precision),
                         format_sig(pt.g_root, c.precision), to_string(pt.kind)});
    atomic_write(out / "ep_locus.csv", lt.serialize());
    s["locus_points"] = locus.size();
  }
  atomic_write(out / "ep_summary.json", s.dump(2) + "\n");
}

struct PropagationResult {
  Trajectory traj;
  Mat4 steady;
  DampingRegime regime;
};

PropagationResult propagate_for_cli(const MachineParams& p, const Mat4& rho0,
                                    const std::vector<double>& grid, int dim_cap) {
  PropagationResult out;
  if (p.regime == Regime::Global) {
    const Liouvillian L = build_global_liouvillian(p);
    const SpectralData sd = numeric_spectral_data(L);
    out.traj = propagate_spectral(rho0, grid, sd);
    out.steady = sd.right[0];
    out.regime = DampingRegime::Overdamped;  // not meaningful globally
    return out;
  }
  const BathRates r = derived_rates(p);
  out.steady = analytic_steady_state(p);
  out.regime = p.g > 0 ? classify_damping(p) : DampingRegime::Overdamped;
  if (p.g > 0 && std::abs(r.eta) < eta_switch(r.Gamma)) {
    out.traj = propagate_spectral_ep(rho0, grid, ep_decomposition(p));
    return out;
  }
  int dim = 16;
  if (in_reduced_subspace(rho0, 6) && dim_cap >= 6) dim = 6;
  else if (in_reduced_subspace(rho0, 8) && dim_cap >= 8) dim = 8;
  dim = std::min(dim, dim_cap == 6 || dim_cap == 8 ? dim_cap : 16);
  const Liouvillian L = dim == 16 ? build_local_liouvillian(p)
                                  : build_reduced_liouvillian(p, dim);
  const SpectralData sd = numeric_spectral_data(L, &r);
  out.traj = propagate_spectral(rho0, grid, sd);
  return out;
}

std::string g_label(double g, bool critical) {
  if (critical) return "gcrit";
  std::string v = format_sig(g, 6);
  for (char& ch : v)
    if (ch == '.') ch = 'p';
    else if (ch == '-') ch = 'm';
  return "g" + v;
}

void cmd_evolve(const RunConfig& c, const fs::path& out) {
  MachineParams base = c.params;
  base.validate();
  std::vector<std::pair<double, bool>> gs;  // (value, is_critical)
  for (double g : c.g_values) gs.emplace_back(g, false);
  if (c.g_critical) gs.emplace_back(critical_g(base), true);
  if (gs.empty()) gs.emplace_back(base.g, false);

  std::vector<std::string> states = c.initial_states;
  if (states.empty()) states = {"thermal_product"};

  json summary;
  summary["runs"] = json::array();
  const std::vector<std::string> obs = {"J1", "J2", "concurrence"};
  for (const auto& [gval, crit] : gs) {
    const MachineParams p = base.with_g(gval);
    const std::vector<double> grid = make_grid(c, p);
    for (const std::string& sname : states) {
      const InitialStateSpec spec = initial_state_spec_from_string(sname);
      const Mat4 rho0 = initial_state(spec, p);
      PropagationResult pr = propagate_for_cli(p, rho0, grid, c.dim);
      CsvTable t;
      t.header = {"t", "p11", "p22", "p33", "p44", "re_rho23", "im_rho23",
                  "trace_distance", "J1", "J2", "concurrence", "provenance"};
      const std::string prov = to_string(pr.traj.provenance);
      for (size_t i = 0; i < grid.size(); ++i) {
        const Mat4& rho = pr.traj.states[i];
        t.rows.push_back({format_sig(grid[i], c.precision),
                          format_sig(rho(0, 0).real(), c.precision),
                          format_sig(rho(1, 1).real(), c.precision),
                          format_sig(rho(2, 2).real(), c.precision),
                          format_sig(rho(3, 3).real(), c.precision),
                          format_sig(rho(1, 2).real(), c.precision),
                          format_sig(rho(1, 2).imag(), c.precision),
                          format_sig(trace_distance(rho, pr.steady), c.precision),
                          format_sig(heat_current(rho, p, 1), c.precision),
                          format_sig(heat_current(rho, p, 2), c.precision),
                          format_sig(concurrence(rho), c.precision), prov});
      }
      const std::string label =
          g_label(gval, crit) + "_" + initial_state_label(spec);
      atomic_write(out / ("evolve_" + label + ".csv"), t.serialize());

      json run;
      run["label"] = label;
      run["g"] = gval;
      run["critical"] = crit;
      run["initial_state"] = sname;
      run["provenance"] = prov;
      if (p.regime == Regime::Local && p.g > 0)
        run["damping_regime"] = to_string(classify_damping(p));
      json steady;
      steady["J1"] = heat_current(pr.steady, p, 1);
      steady["J2"] = heat_current(pr.steady, p, 2);
      steady["concurrence"] = concurrence(pr.steady);
      run["steady"] = steady;
      if (c.with_ode_oracle) {
        const Liouvillian L = p.regime == Regime::Global
                                  ? build_global_liouvillian(p)
                                  : build_local_liouvillian(p);
        const Trajectory oracle = propagate_ode(L, p, rho0, grid);
        double dev = 0;
        for (size_t i = 0; i < grid.size(); ++i)
          dev = std::max(dev,
                         trace_distance(pr.traj.states[i], oracle.states[i]));
        run["ode_max_trace_distance"] = dev;
      }
      summary["runs"].push_back(run);
    }
  }
  atomic_write(out / "evolve_summary.json", summary.dump(2) + "\n");
}

void cmd_ratio(const RunConfig& c, const fs::path& out) {
  MachineParams p = c.params;
  p.validate();
  if (p.regime != Regime::Local)
    throw ConfigError("ratio requires the local regime");
  const MachineParams p_ep = p.with_g(critical_g(p));
  std::vector<std::string> states = c.initial_states;
  if (states.empty()) states = {"thermal_product", "ground", "singlet"};
  RunConfig cgrid = c;
  if (!cgrid.t_max) cgrid.t_max = 2000.0;
  const std::vector<double> grid = make_grid(cgrid, p);

  const EPDecomposition ep = ep_decomposition(p_ep);
  json summary;
  summary["g_nonep"] = p.g;
  summary["g_ep"] = ep.params.g;
  summary["states"] = json::array();
  for (const std::string& sname : states) {
    const InitialStateSpec spec = initial_state_spec_from_string(sname);
    // EP-subspace states are built at the EP parameters
    const Mat4 rho0 = spec.kind == InitialStateKind::EPSubspace
                          ? ep_subspace_state(ep, spec.w_prime, spec.w_dprime)
                          : initial_state(spec, p);
    const RatioSeries rs = ratio_R(p_ep, p, rho0, grid);
    CsvTable t;
    t.header = {"t", "R"};
    for (size_t i = 0; i < rs.t.size(); ++i)
      t.rows.push_back(
          {format_sig(rs.t[i], c.precision), format_sig(rs.R[i], c.precision)});
    const std::string label = initial_state_label(spec);
    atomic_write(out / ("ratio_" + label + ".csv"), t.serialize());

    json st;
    st["label"] = label;
    double first_below = -1, last_at_or_above = 0;
    for (size_t i = 0; i < rs.t.size(); ++i) {
      if (rs.R[i] < 1.0 && first_below < 0) first_below = rs.t[i];
      if (rs.R[i] >= 1.0) last_at_or_above = rs.t[i];
    }
    st["first_t_below_1"] = first_below;
    st["last_t_at_or_above_1"] = last_at_or_above;
    st["R_at_end"] = rs.R.empty() ? 0.0 : rs.R.back();
    st["truncated"] = rs.truncated;
    const OverlapCoefficients oc = overlap_coefficients(ep, rho0);
    st["c6_bar"] = std::abs(oc.c[5]);
    st["no_crossing_guarantee"] = std::abs(oc.c[5]) < 1e-6;
    summary["states"].push_back(st);
  }
  atomic_write(out / "ratio_summary.json", summary.dump(2) + "\n");
}

void cmd_ho(const RunConfig& c, const fs::path& out) {
  HOParams base{c.ho_m, std::sqrt(c.ho_m * c.ho_k), c.ho_k};
  base.validate();
  const double tmin = c.t_min.value_or(0.0);
  const double tmax = c.t_max.value_or(60.0);
  const std::vector<double> grid =
      c.t_spacing == "log" && tmin > 0
          ? log_grid(tmin, tmax, c.t_points)
          : linear_grid(tmin, tmax, c.t_points);
  const HOState f0{c.ho_f0_p, c.ho_f0_x};
  json summary;
  summary["gamma_ep"] = base.gamma;
  summary["comparators"] = json::array();
  for (double gamma : c.ho_comparators) {
    HOParams comp = base;
    comp.gamma = gamma;
    const RatioSeries rs = ho_ratio(base, comp, f0, grid);
    CsvTable t;
    t.header = {"t", "R_HO"};
    for (size_t i = 0; i < rs.t.size(); ++i)
      t.rows.push_back(
          {format_sig(rs.t[i], c.precision), format_sig(rs.R[i], c.precision)});
    std::string label = format_sig(gamma, 6);
    for (char& ch : label)
      if (ch == '.') ch = 'p';
    atomic_write(out / ("ho_ratio_gamma" + label + ".csv"), t.serialize());
    json comp_j;
    comp_j["gamma"] = gamma;
    comp_j["regime"] = to_string(ho_regime(comp));
    comp_j["R_at_end"] = rs.R.empty() ? 0.0 : rs.R.back();
    comp_j["truncated"] = rs.truncated;
    summary["comparators"].push_back(comp_j);
  }
  atomic_write(out / "ho_summary.json", summary.dump(2) + "\n");
}

}  // namespace

void run_command(const std::string& command, const RunConfig& config,
                 const std::string& out_dir) {
  const fs::path out(out_dir);
  if (command == "spectrum") cmd_spectrum(config, out);
  else if (command == "ep-find") cmd_ep_find(config, out);
  else if (command == "evolve") cmd_evolve(config, out);
  else if (command == "ratio") cmd_ratio(config, out);
  else if (command == "ho") cmd_ho(config, out);
  else throw ConfigError("unknown command: " + command);
}

namespace {

json error_json(int code, const std::string& kind, const std::string& message) {
  json e;
  e["error"]["exit_code"] = code;
  e["error"]["kind"] = kind;
  e["error"]["message"] = message;
  return e;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& err) {
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "help") {
      err << "usage: qtm-ep <spectrum|ep-find|evolve|ratio|ho> --config <path>"
             " [--out <dir>] [--override key=value ...]\n";
      return args.empty() ? 2 : 0;
    }
    const std::string command = args[0];
    std::string config_path, out_dir = ".";
    std::vector<std::pair<std::string, std::string>> overrides;
    for (size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[++i];
      } else if (args[i] == "--out" && i + 1 < args.size()) {
        out_dir = args[++i];
      } else if (args[i] == "--override" && i + 1 < args.size()) {
        const std::string kv = args[++i];
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw ConfigError("--override expects key=value, got: " + kv);
        overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      } else {
        throw ConfigError("unknown argument: " + args[i]);
      }
    }
    if (config_path.empty()) throw ConfigError("--config is required");
    std::ifstream f(config_path);
    if (!f) throw IoError("cannot read config file: " + config_path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::string text = buf.str();
    if (!overrides.empty()) {
      json j = json::parse(text, nullptr, false);
      if (j.is_discarded()) throw ConfigError("config is not valid JSON");
      for (const auto& [key, value] : overrides) {
        const json v = json::parse(value, nullptr, false);
        j[key] = v.is_discarded() || v.is_object() || v.is_array()
                     ? json(value)
                     : v;
      }
      text = j.dump();
    }
    const RunConfig cfg = RunConfig::from_json_text(text, command);
    run_command(command, cfg, out_dir);
    return 0;
  } catch (const ConfigError& e) {
    err << error_json(2, "config", e.what()).dump() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << error_json(4, "io", e.what()).dump() << "\n";
    return 4;
  } catch (const NumericError& e) {
    err << error_json(3, "numeric", e.what()).dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << error_json(3, "numeric", e.what()).dump() << "\n";
    return 3;
  }
}

}  // namespace qtm::cli
