// Copyright 2026 The loqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOQEC_TOOLS_CLI_H
#define LOQEC_TOOLS_CLI_H

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "loqec/experiment.h"

namespace loqec::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitValidationFailure = 3,
};

enum class Format { Csv, Json };

/// Schema violation; the message starts with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Strict parse of a run config. Relative "network" paths resolve against `base_dir`.
ExperimentConfig parse_run_config(const nlohmann::json &j, const std::filesystem::path &base_dir = {});

SweepGrid parse_sweep_config(const nlohmann::json &j, const std::filesystem::path &base_dir = {});

/// Truth table of one CNOT. With `network` non-empty, the elements are evaluated with control q1,
/// target anc and dumps dump0/dump1 instead of the built network.
int cmd_truth_table(double eta, Format format, std::ostream &out, std::ostream &err,
                    const std::vector<Element> &network = {});

int cmd_run(const ExperimentConfig &cfg, Format format, std::ostream &out);

int cmd_sweep(const SweepGrid &grid, Format format, std::ostream &out, std::ostream &err);

int cmd_validate(Format format, std::ostream &out, const TestHooks &hooks = {});

/// Full command line entry point.
int run_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace loqec::cli

#endif
