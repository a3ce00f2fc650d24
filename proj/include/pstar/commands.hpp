// Copyright 2026 The pstar Authors.
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

// Command layer shared by the C API and the CLI: each command runs a
// pipeline on parsed inputs and returns a Report. Reports never carry
// timestamps, so equal inputs and policy give byte-identical output.

#include <optional>
#include <string>
#include <vector>

#include "pstar/cbmap.hpp"
#include "pstar/cone.hpp"
#include "pstar/dilation.hpp"
#include "pstar/io.hpp"
#include "pstar/palgebra.hpp"

namespace pstar {

enum class CheckStatus { Pass, Fail, Error, Skipped };
const char* to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  bool advisory = false;  // reported, not counted
  io::Json data = io::Json::object();
};

struct CommandOptions {
  TolerancePolicy policy;
  Mode mode = Mode::Quasi;
  Index falsify_samples = 10000;
};

struct Report {
  std::string command;
  std::vector<std::string> args;
  CommandOptions options;
  std::vector<Check> checks;
  /// Set when the command could not run at all.
  std::optional<ErrorCode> error;
  std::string error_message;

  /// 0 all counted checks pass, 1 a property failed, 2 malformed input / I/O.
  int exit_code() const;
  std::string status() const;
  io::Json to_json() const;
  std::string to_text() const;
};

/// Input-class errors map to exit code 2, everything else to 1.
bool is_input_error(ErrorCode code);

/// Report for a command that failed before producing checks.
Report error_report(const std::string& command, std::vector<std::string> args,
                    const CommandOptions& opt, const Error& e);

Report run_validate(const Algebra& a, const CommandOptions& opt);
Report run_cp_check(const CBMap& phi, const CommandOptions& opt);
Report run_core_check(const CBMap& phi, const CommandOptions& opt);
/// `out` receives the dilation when it succeeds.
Report run_dilate(const CBMap& phi, const CommandOptions& opt, DilationResult* out);
Report run_verify(const CBMap& phi, const DilationResult& dil, const CommandOptions& opt);
Report run_equiv(const DilationResult& d1, const DilationResult& d2, const CBMap& phi1,
                 const CBMap& phi2, const CommandOptions& opt);
Report run_largest_core(const CBMap& phi, const DilationResult& dil, const CommandOptions& opt);
Report run_cone_check(const GeneratorTuple& gens, const std::vector<PolyMatrix>& ps,
                      const CommandOptions& opt);

}  // namespace pstar
