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

#ifndef LOQEC_SERIALIZE_H
#define LOQEC_SERIALIZE_H

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "loqec/experiment.h"
#include "loqec/fock.h"
#include "loqec/optics.h"
#include "loqec/qubit_oracle.h"

namespace loqec {

/// {"register": ["1:H", ...], "amplitudes": [{"counts": [...], "re": x, "im": y}, ...]}
nlohmann::json state_to_json(const PureState &state);
PureState state_from_json(const nlohmann::json &j, int max_photons = kDefaultMaxPhotons);

/// {alpha, beta, p, p_outcome1, fidelity_corrected, fidelity_uncorrected}. Complex amplitudes are
/// written as numbers when real and as {"re", "im"} otherwise.
nlohmann::json oracle_report_to_json(const oracle::OracleReport &report);

/// {"kind": "BS", "params": {"eta": 0.33}, "ports": ["anc:V", "q1:V"]}
nlohmann::json element_to_json(const Element &element);
/// Throws std::invalid_argument naming the offending field.
Element element_from_json(const nlohmann::json &j, const std::string &path = "element");

/// {"elements": [...]}
nlohmann::json network_to_json(const std::vector<Element> &elements);
std::vector<Element> network_from_json(const nlohmann::json &j);

/// 12 significant digits.
std::string format_real(double x);
/// The value that format_real prints, parsed back.
double round_real(double x);
/// round_real followed by clamping into [0, 1].
double round_probability(double p);

inline constexpr std::string_view kRunCsvHeader =
    "theta,p_flip,chi,correction,coinc_prob,anc_p0,anc_p1,fid_corrected,fid_uncorrected";

std::string run_csv_row(const ExperimentConfig &cfg, const RunResult &result);
/// Same fields as the CSV row, keyed by the header names.
nlohmann::json run_to_json(const ExperimentConfig &cfg, const RunResult &result);

}  // namespace loqec

#endif
