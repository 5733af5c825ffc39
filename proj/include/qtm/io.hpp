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

#include <filesystem>
#include <string>
#include <vector>

namespace qtm {

/// Shortest representation at the given number of significant digits
/// ("%.Ng"); all CSV floats go through this.
std::string format_sig(double x, int sig_digits = 12);

/// One output table: header row + rows of already-formatted cells,
/// serialized as UTF-8, comma-separated, LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string serialize() const;
};

/// Write via temp file + atomic rename; either the complete file appears or
/// nothing does.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace qtm
