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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qtm/params.hpp"

namespace qtm::cli {

/// Flat configuration document shared by all commands. Unknown keys are
/// rejected; serialization round-trips byte-identically.
struct RunConfig {
  MachineParams params;
  int precision = 12;
  bool g_critical = false;  // replace g by the eta = 0 solution

  std::optional<double> t_min, t_max;
  int t_points = 400;
  std::string t_spacing = "log";

  int dim = 16;  // spectrum / evolve representation ceiling

  std::string free_parameter = "g";
  std::optional<double> scan_min, scan_max;
  std::string locus_parameter;  // "", "gamma", "epsilon"
  double locus_min = 1e-3, locus_max = 0.1;
  int locus_points = 40;
  double locus_g_min = 1e-6, locus_g_max = 0.3;

  std::vector<std::string> initial_states;
  std::vector<double> g_values;
  bool with_ode_oracle = false;

  double ho_m = 1.0, ho_k = 1.0;
  std::vector<double> ho_comparators = {2.0, 0.5};
  double ho_f0_p = 1.0, ho_f0_x = 1.0;

  static RunConfig from_json_text(const std::string& text,
                                  const std::string& command);
  std::string to_json_text(const std::string& command) const;
};

/// Known commands: spectrum, ep-find, evolve, ratio, ho. Writes the
/// command's CSV/JSON outputs under out_dir.
void run_command(const std::string& command, const RunConfig& config,
                 const std::string& out_dir);

/// Full argv-level entry: <command> --config <path> [--out <dir>]
/// [--override key=value ...]. Returns the process exit code
/// (0 ok, 2 config, 3 numeric, 4 I/O) and writes a machine-readable error
/// document to err on failure.
int cli_main(const std::vector<std::string>& args, std::ostream& err);

}  // namespace qtm::cli
