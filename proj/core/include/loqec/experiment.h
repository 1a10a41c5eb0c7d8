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

#ifndef LOQEC_EXPERIMENT_H
#define LOQEC_EXPERIMENT_H

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loqec/fock.h"
#include "loqec/optics.h"
#include "loqec/qubit_oracle.h"

namespace loqec {

/// Spatial ids of the named beams. Dump beam k has id kDump0 + k.
namespace port {
inline constexpr int kQ1 = 1;
inline constexpr int kQ2 = 2;
inline constexpr int kAncilla = 3;
inline constexpr int kTrigger = 4;
inline constexpr int kDump0 = 5;
inline constexpr int kNumDumps = 4;
}  // namespace port

/// "q1", "q2", "anc", "trig", "dump0".."dumpN" with an ":H" or ":V" suffix.
ModeLabel parse_port(std::string_view name);
std::string port_name(const ModeLabel &mode);

inline constexpr double kDefaultCnotEta = 1.0 / 3.0;

struct SourceConfig {
    /// Pump polarization angle away from vertical; alpha = cos(theta).
    double pump_angle = 0;
    /// Pair amplitude.
    double chi = 0.1;
    /// Keep the vacuum term of the down-converter output.
    bool include_vacuum = false;
};

/// Polarization-entangled pair on beams q1 and q2, normalized:
///   (|vac> + chi (alpha|H,H> + beta|V,V>)) / sqrt(1 + chi^2)
/// or, without the vacuum term, alpha|H,H> + beta|V,V>.
PureState source_state(const SourceConfig &cfg);

/// Horizontal pair on the ancilla and trigger beams. Without the trigger, a single H photon on the
/// ancilla beam (heralded three-photon variant); the vacuum term is dropped in that case.
PureState ancilla_source(double chi, bool include_vacuum, bool model_trigger = true);

/// Dual-rail ports of one coincidence-basis CNOT. Each dump is a single H mode on its own beam.
struct CnotPorts {
    int control = port::kQ1;
    int target = port::kAncilla;
    int control_dump = port::kDump0;
    int target_dump = port::kDump0 + 1;
};

struct CnotOptions {
    /// Test hook: reverses the port orientation of the central splitter, which breaks the gate.
    bool flip_central_sign = false;
};

struct CnotNetwork {
    std::vector<Element> elements;
    CnotPorts ports;
    /// eta^2; equals the true post-selected rate only at eta = 1/3.
    double nominal_success = 0;

    ModeRegister modes() const;
    ModeTransform transform() const;
};

/// Hadamard plates around the target rails, a central eta splitter mixing the control V rail with the
/// target V rail, and eta splitters leaking c:H and t:H into empty dump modes.
CnotNetwork build_cnot_network(double eta, const CnotPorts &ports = {}, const CnotOptions &options = {});

/// Post-selected action on a two-qubit input given over [c:H, c:V, t:H, t:V].
struct GateAction {
    double success_probability = 0;
    /// Conditional output over [c:H, c:V, t:H, t:V]; null when the gate never succeeds.
    PureState output;
};

GateAction apply_postselected(const CnotNetwork &network, const PureState &two_qubit_input);

struct TruthTableRow {
    int control_in = 0;
    int target_in = 0;
    double success_probability = 0;
    /// Conditional output distribution indexed 2*control + target.
    std::array<double, 4> output_probabilities{};
    int most_likely_output = 0;
};

struct TruthTable {
    double eta = 0;
    std::array<TruthTableRow, 4> rows;
    /// Every row maps to the CNOT output with probability 1 within tolerance.
    bool correct_outputs = false;
    /// All rows share one success probability within tolerance.
    bool uniform_success = false;

    bool is_cnot() const {
        return correct_outputs && uniform_success;
    }
};

inline constexpr double kTruthTableTolerance = 1e-9;

TruthTable evaluate_truth_table(const CnotNetwork &network);

/// Mutation switches used to check that the validation suite can fail.
struct TestHooks {
    bool flip_central_sign = false;
    bool disable_channel = false;
};

struct ExperimentConfig {
    SourceConfig source;
    double p_flip = 0;
    bool correction_enabled = true;
    double cnot_eta = kDefaultCnotEta;
    /// Model the trigger photon explicitly (fourfold coincidence). Off gives the three-photon variant.
    bool model_trigger = true;
    /// Replaces the built element list when non-empty.
    std::vector<Element> network;
    TestHooks hooks;
};

void check_config(const ExperimentConfig &cfg);

/// q1, q2, anc, trig (when modeled), then the four dump modes.
ModeRegister experiment_register(bool model_trigger);

/// [q1:H, q1:V, q2:H, q2:V]
ModeRegister logical_register();

/// CNOT(q1 -> anc) followed by CNOT(q2 -> anc).
std::vector<Element> build_syndrome_network(double eta, const CnotOptions &options = {});

/// Full element list: BRC on q2, the syndrome network, and a Pockels cell on q2 gated by "anc:V".
std::vector<Element> experiment_elements(const ExperimentConfig &cfg);

/// One photon per logical beam, the ancilla photon in `ancilla` polarization, the trigger photon
/// (when modeled), and nothing in any dump.
DetectionPattern coincidence_pattern(bool model_trigger, Polarization ancilla);

struct RunResult {
    /// Probability that the accepted coincidence pattern occurs at all.
    double coincidence_probability = 0;
    /// Set when no accepted pattern has nonzero probability; other fields are then zero.
    bool null_result = false;
    /// Conditional state of the two logical beams, corrected when correction is enabled.
    WeightedEnsemble conditional_output;
    double fidelity_vs_input = 0;
    double fidelity_corrected = 0;
    double fidelity_uncorrected = 0;
    double anc_p0 = 0;
    double anc_p1 = 0;
    /// Logical basis statistics indexed 2*q1 + q2 (H = 0, V = 1).
    std::array<double, 4> basis_probabilities{};
    std::array<double, 4> basis_corrected{};
    std::array<double, 4> basis_uncorrected{};
};

RunResult run_experiment(const ExperimentConfig &cfg);

/// alpha|H,H> + beta|V,V> on logical_register().
PureState logical_target(const oracle::LogicalInput &input);

std::array<double, 4> logical_basis_probabilities(const WeightedEnsemble &ensemble);

struct DeviationReport {
    double ancilla = 0;
    double fidelity = 0;
    double basis = 0;
    oracle::OracleReport oracle;
    RunResult optical;

    double max() const;
};

DeviationReport compare_to_oracle(const ExperimentConfig &cfg);

struct SweepGrid {
    ExperimentConfig base;
    std::vector<double> theta;
    std::vector<double> p_flip;
    std::vector<double> chi;
    std::vector<bool> correction;
};

struct SweepRow {
    ExperimentConfig config;
    std::optional<RunResult> result;
    std::string error;
};

/// Cartesian product in (theta, p_flip, chi, correction) order with theta slowest. Rows run in
/// parallel; a failing row records its error and the sweep continues.
std::vector<SweepRow> sweep(const SweepGrid &grid, unsigned num_threads = 0);

}  // namespace loqec

#endif
