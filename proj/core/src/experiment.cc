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

#include "loqec/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace loqec {

ModeLabel parse_port(std::string_view name) {
    auto colon = name.find(':');
    if (colon == std::string_view::npos || colon + 2 != name.size()) {
        throw std::invalid_argument("Port '" + std::string(name) + "' must end in ':H' or ':V'.");
    }
    auto beam = name.substr(0, colon);
    char pol = name[colon + 1];
    if (pol != 'H' && pol != 'V') {
        throw std::invalid_argument("Port '" + std::string(name) + "' has polarization other than H or V.");
    }
    int id = 0;
    if (beam == "q1") {
        id = port::kQ1;
    } else if (beam == "q2") {
        id = port::kQ2;
    } else if (beam == "anc") {
        id = port::kAncilla;
    } else if (beam == "trig") {
        id = port::kTrigger;
    } else if (beam.starts_with("dump") && beam.size() > 4) {
        int k = 0;
        auto digits = beam.substr(4);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 0) {
            throw std::invalid_argument("Port '" + std::string(name) + "' has a malformed dump index.");
        }
        id = port::kDump0 + k;
    } else {
        throw std::invalid_argument("Unknown port '" + std::string(name) + "'.");
    }
    return {id, pol == 'H' ? Polarization::H : Polarization::V};
}

std::string port_name(const ModeLabel &mode) {
    std::string beam;
    switch (mode.spatial_id) {
        case port::kQ1:
            beam = "q1";
            break;
        case port::kQ2:
            beam = "q2";
            break;
        case port::kAncilla:
            beam = "anc";
            break;
        case port::kTrigger:
            beam = "trig";
            break;
        default:
            if (mode.spatial_id < port::kDump0) {
                throw std::invalid_argument("Spatial id " + std::to_string(mode.spatial_id) + " has no port name.");
            }
            beam = "dump" + std::to_string(mode.spatial_id - port::kDump0);
    }
    return beam + (mode.polarization == Polarization::H ? ":H" : ":V");
}

PureState source_state(const SourceConfig &cfg) {
    auto input = oracle::LogicalInput::from_pump_angle(cfg.pump_angle);
    ModeRegister modes{mode_h(port::kQ1), mode_v(port::kQ1), mode_h(port::kQ2), mode_v(port::kQ2)};
    PureState::AmplitudeMap amps;
    double pair = 1;
    if (cfg.include_vacuum) {
        if (!(cfg.chi > 0)) {
            throw std::invalid_argument("Pair amplitude chi must be positive.");
        }
        amps[OccupationVector{0, 0, 0, 0}] = 1;
        pair = cfg.chi;
    }
    amps[OccupationVector{1, 0, 1, 0}] += pair * input.alpha;
    amps[OccupationVector{0, 1, 0, 1}] += pair * input.beta;
    return PureState(std::move(modes), std::move(amps)).normalized();
}

PureState ancilla_source(double chi, bool include_vacuum, bool model_trigger) {
    if (!model_trigger) {
        return make_fock({mode_h(port::kAncilla), mode_v(port::kAncilla)}, {1, 0});
    }
    ModeRegister modes{mode_h(port::kAncilla), mode_v(port::kAncilla), mode_h(port::kTrigger), mode_v(port::kTrigger)};
    if (!include_vacuum) {
        return make_fock(std::move(modes), {1, 0, 1, 0});
    }
    if (!(chi > 0)) {
        throw std::invalid_argument("Pair amplitude chi must be positive.");
    }
    PureState::AmplitudeMap amps{{OccupationVector{0, 0, 0, 0}, 1.0}, {OccupationVector{1, 0, 1, 0}, chi}};
    return PureState(std::move(modes), std::move(amps)).normalized();
}

ModeRegister CnotNetwork::modes() const {
    return {mode_h(ports.control), mode_v(ports.control), mode_h(ports.target), mode_v(ports.target),
            mode_h(ports.control_dump), mode_h(ports.target_dump)};
}

ModeTransform CnotNetwork::transform() const {
    return compose_elements(elements);
}

CnotNetwork build_cnot_network(double eta, const CnotPorts &ports, const CnotOptions &options) {
    if (!(eta > 0 && eta < 1)) {
        throw std::invalid_argument("CNOT splitter reflectivity must lie in (0, 1), got " + std::to_string(eta) + ".");
    }
    std::vector<int> ids{ports.control, ports.target, ports.control_dump, ports.target_dump};
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw std::invalid_argument("CNOT ports must use four distinct beams.");
    }

    constexpr double kHadamardAngle = std::numbers::pi / 8;
    ModeLabel central_a = mode_v(ports.target);
    ModeLabel central_b = mode_v(ports.control);
    if (options.flip_central_sign) {
        std::swap(central_a, central_b);
    }

    CnotNetwork network;
    network.ports = ports;
    network.nominal_success = eta * eta;
    network.elements = {
        make_hwp(kHadamardAngle, ports.target),
        make_bs(eta, central_a, central_b),
        make_bs(eta, mode_h(ports.control_dump), mode_h(ports.control)),
        make_bs(eta, mode_h(ports.target), mode_h(ports.target_dump)),
        make_hwp(kHadamardAngle, ports.target),
    };
    return network;
}

GateAction apply_postselected(const CnotNetwork &network, const PureState &two_qubit_input) {
    const auto &p = network.ports;
    ModeRegister qubits{mode_h(p.control), mode_v(p.control), mode_h(p.target), mode_v(p.target)};
    if (two_qubit_input.modes() != qubits) {
        throw std::invalid_argument("apply_postselected: input must be given over [c:H, c:V, t:H, t:V].");
    }
    auto full = with_vacuum_modes(two_qubit_input, {mode_h(p.control_dump), mode_h(p.target_dump)});
    auto out = apply_mode_transform(full, network.transform());

    DetectionPattern pattern;
    pattern.total({mode_h(p.control), mode_v(p.control)}, 1)
        .total({mode_h(p.target), mode_v(p.target)}, 1)
        .exactly(mode_h(p.control_dump), 0)
        .exactly(mode_h(p.target_dump), 0);
    auto projection = project_pattern(out, pattern);
    if (projection.empty()) {
        return {0, PureState::null_state(qubits)};
    }
    return {projection.probability, restrict_to(projection.state, qubits)};
}

TruthTable evaluate_truth_table(const CnotNetwork &network) {
    const auto &p = network.ports;
    ModeRegister qubits{mode_h(p.control), mode_v(p.control), mode_h(p.target), mode_v(p.target)};
    TruthTable table;
    table.correct_outputs = true;
    for (int c = 0; c < 2; c++) {
        for (int t = 0; t < 2; t++) {
            auto &row = table.rows[static_cast<size_t>(2 * c + t)];
            row.control_in = c;
            row.target_in = t;
            auto action = apply_postselected(network, make_fock(qubits, {1 - c, c, 1 - t, t}));
            row.success_probability = action.success_probability;
            if (!action.output.is_null()) {
                for (int oc = 0; oc < 2; oc++) {
                    for (int ot = 0; ot < 2; ot++) {
                        row.output_probabilities[static_cast<size_t>(2 * oc + ot)] =
                            std::norm(action.output.amplitude(OccupationVector{1 - oc, oc, 1 - ot, ot}));
                    }
                }
            }
            row.most_likely_output = static_cast<int>(
                std::max_element(row.output_probabilities.begin(), row.output_probabilities.end()) -
                row.output_probabilities.begin());
            int expected = 2 * c + (t ^ c);
            if (std::abs(row.output_probabilities[static_cast<size_t>(expected)] - 1) > kTruthTableTolerance) {
                table.correct_outputs = false;
            }
        }
    }
    double first = table.rows[0].success_probability;
    table.uniform_success = first > 0;
    for (const auto &row : table.rows) {
        if (std::abs(row.success_probability - first) > kTruthTableTolerance) {
            table.uniform_success = false;
        }
    }
    // Infer eta from the central splitter for reporting.
    for (const auto &e : network.elements) {
        if (e.kind == ElementKind::Beamsplitter) {
            table.eta = e.param;
            break;
        }
    }
    return table;
}

void check_config(const ExperimentConfig &cfg) {
    oracle::NoiseParam{cfg.p_flip};
    if (!(cfg.cnot_eta > 0 && cfg.cnot_eta < 1)) {
        throw std::invalid_argument("cnot_eta must lie in (0, 1).");
    }
    if (cfg.source.include_vacuum && !(cfg.source.chi > 0)) {
        throw std::invalid_argument("chi must be positive when vacuum terms are included.");
    }
    if (!std::isfinite(cfg.source.pump_angle)) {
        throw std::invalid_argument("Pump angle must be finite.");
    }
    for (const auto &e : cfg.network) {
        check_element(e);
    }
}

ModeRegister experiment_register(bool model_trigger) {
    ModeRegister modes{mode_h(port::kQ1), mode_v(port::kQ1), mode_h(port::kQ2), mode_v(port::kQ2),
                       mode_h(port::kAncilla), mode_v(port::kAncilla)};
    if (model_trigger) {
        modes.push_back(mode_h(port::kTrigger));
        modes.push_back(mode_v(port::kTrigger));
    }
    for (int k = 0; k < port::kNumDumps; k++) {
        modes.push_back(mode_h(port::kDump0 + k));
    }
    return modes;
}

ModeRegister logical_register() {
    return {mode_h(port::kQ1), mode_v(port::kQ1), mode_h(port::kQ2), mode_v(port::kQ2)};
}

std::vector<Element> build_syndrome_network(double eta, const CnotOptions &options) {
    auto first = build_cnot_network(eta, {port::kQ1, port::kAncilla, port::kDump0, port::kDump0 + 1}, options);
    auto second = build_cnot_network(eta, {port::kQ2, port::kAncilla, port::kDump0 + 2, port::kDump0 + 3}, options);
    auto elements = first.elements;
    elements.insert(elements.end(), second.elements.begin(), second.elements.end());
    return elements;
}

std::vector<Element> experiment_elements(const ExperimentConfig &cfg) {
    std::vector<Element> elements{make_brc(cfg.p_flip, port::kQ2)};
    auto syndrome = build_syndrome_network(cfg.cnot_eta, {cfg.hooks.flip_central_sign});
    elements.insert(elements.end(), syndrome.begin(), syndrome.end());
    elements.push_back(make_pockels(port::kQ2, port_name(mode_v(port::kAncilla))));
    return elements;
}

DetectionPattern coincidence_pattern(bool model_trigger, Polarization ancilla) {
    DetectionPattern pattern;
    pattern.total({mode_h(port::kQ1), mode_v(port::kQ1)}, 1).total({mode_h(port::kQ2), mode_v(port::kQ2)}, 1);
    pattern.exactly({port::kAncilla, ancilla}, 1);
    pattern.exactly({port::kAncilla, ancilla == Polarization::H ? Polarization::V : Polarization::H}, 0);
    if (model_trigger) {
        pattern.exactly(mode_h(port::kTrigger), 1).exactly(mode_v(port::kTrigger), 0);
    }
    for (int k = 0; k < port::kNumDumps; k++) {
        pattern.exactly(mode_h(port::kDump0 + k), 0);
    }
    return pattern;
}

PureState logical_target(const oracle::LogicalInput &input) {
    return PureState(logical_register(),
                     {{OccupationVector{1, 0, 1, 0}, input.alpha}, {OccupationVector{0, 1, 0, 1}, input.beta}});
}

std::array<double, 4> logical_basis_probabilities(const WeightedEnsemble &ensemble) {
    std::array<double, 4> p{};
    for (const auto &b : ensemble.branches()) {
        for (int q1 = 0; q1 < 2; q1++) {
            for (int q2 = 0; q2 < 2; q2++) {
                p[static_cast<size_t>(2 * q1 + q2)] +=
                    b.weight * std::norm(b.state.amplitude(OccupationVector{1 - q1, q1, 1 - q2, q2}));
            }
        }
    }
    return p;
}

namespace {

struct Feedforward {
    int port = 0;
    ModeLabel condition;
};

WeightedEnsemble apply_feedforward(const WeightedEnsemble &ensemble, const std::vector<Feedforward> &cells) {
    WeightedEnsemble out = ensemble;
    for (const auto &cell : cells) {
        std::vector<Branch> branches;
        for (const auto &b : out.branches()) {
            // The pattern fixes every non-logical mode, so any ket tells the detector outcome.
            size_t k = b.state.mode_index(cell.condition);
            bool fired = b.state.amplitudes().begin()->first[k] > 0;
            auto flipped = pockels_flip(WeightedEnsemble::pure(b.state), fired, cell.port);
            branches.push_back({b.weight, flipped.branches().front().state});
        }
        out = WeightedEnsemble(std::move(branches));
    }
    return out;
}

WeightedEnsemble restrict_ensemble(const WeightedEnsemble &ensemble, double scale) {
    std::vector<Branch> out;
    for (const auto &b : ensemble.branches()) {
        out.push_back({b.weight * scale, restrict_to(b.state, logical_register())});
    }
    return WeightedEnsemble(std::move(out));
}

WeightedEnsemble concat(const WeightedEnsemble &a, const WeightedEnsemble &b) {
    auto branches = a.branches();
    branches.insert(branches.end(), b.branches().begin(), b.branches().end());
    return WeightedEnsemble(std::move(branches));
}

}  // namespace

RunResult run_experiment(const ExperimentConfig &cfg) {
    check_config(cfg);
    auto elements = cfg.network.empty() ? experiment_elements(cfg) : cfg.network;

    auto initial = tensor(source_state(cfg.source),
                          ancilla_source(cfg.source.chi, cfg.source.include_vacuum, cfg.model_trigger));
    ModeRegister dumps;
    for (int k = 0; k < port::kNumDumps; k++) {
        dumps.push_back(mode_h(port::kDump0 + k));
    }
    auto ensemble = WeightedEnsemble::pure(with_vacuum_modes(initial, dumps));

    // Consecutive linear elements are merged into one transform before touching the state.
    std::vector<Feedforward> cells;
    std::optional<ModeTransform> pending;
    auto flush = [&] {
        if (pending) {
            const auto &t = *pending;
            ensemble = ensemble_map(ensemble, [&](const PureState &s) { return apply_mode_transform(s, t); });
            pending.reset();
        }
    };
    for (const auto &e : elements) {
        if (is_unitary_kind(e.kind)) {
            auto t = element_transform(e);
            pending = pending ? pending->then(t) : t;
        } else if (e.kind == ElementKind::Birefringent) {
            flush();
            if (!cfg.hooks.disable_channel) {
                ensemble = decohere(ensemble, e.param, e.ports.front().spatial_id);
            }
        } else {
            check_element(e);
            cells.push_back({e.ports.front().spatial_id, parse_port(e.condition)});
        }
    }
    flush();

    RunResult result;
    std::array<EnsembleProjection, 2> outcomes;
    for (auto pol : {Polarization::H, Polarization::V}) {
        outcomes[static_cast<size_t>(pol)] = ensemble_project(ensemble, coincidence_pattern(cfg.model_trigger, pol));
    }
    result.coincidence_probability = outcomes[0].probability + outcomes[1].probability;
    if (result.coincidence_probability == 0) {
        result.null_result = true;
        return result;
    }
    result.anc_p0 = outcomes[0].probability / result.coincidence_probability;
    result.anc_p1 = outcomes[1].probability / result.coincidence_probability;

    WeightedEnsemble uncorrected;
    WeightedEnsemble corrected;
    for (size_t o = 0; o < 2; o++) {
        if (outcomes[o].empty()) {
            continue;
        }
        double share = outcomes[o].probability / result.coincidence_probability;
        uncorrected = concat(uncorrected, restrict_ensemble(outcomes[o].ensemble, share));
        corrected = concat(corrected, restrict_ensemble(apply_feedforward(outcomes[o].ensemble, cells), share));
    }

    auto target = logical_target(oracle::LogicalInput::from_pump_angle(cfg.source.pump_angle));
    result.fidelity_corrected = fidelity(corrected, target);
    result.fidelity_uncorrected = fidelity(uncorrected, target);
    result.basis_corrected = logical_basis_probabilities(corrected);
    result.basis_uncorrected = logical_basis_probabilities(uncorrected);
    if (cfg.correction_enabled) {
        result.conditional_output = std::move(corrected);
        result.fidelity_vs_input = result.fidelity_corrected;
        result.basis_probabilities = result.basis_corrected;
    } else {
        result.conditional_output = std::move(uncorrected);
        result.fidelity_vs_input = result.fidelity_uncorrected;
        result.basis_probabilities = result.basis_uncorrected;
    }
    return result;
}

double DeviationReport::max() const {
    return std::max({ancilla, fidelity, basis});
}

DeviationReport compare_to_oracle(const ExperimentConfig &cfg) {
    DeviationReport report;
    report.optical = run_experiment(cfg);
    report.oracle = oracle::run_oracle_circuit(oracle::LogicalInput::from_pump_angle(cfg.source.pump_angle),
                                               oracle::NoiseParam(cfg.p_flip));
    if (report.optical.null_result) {
        double inf = std::numeric_limits<double>::infinity();
        report.ancilla = report.fidelity = report.basis = inf;
        return report;
    }
    const auto &opt = report.optical;
    const auto &ora = report.oracle;
    report.ancilla = std::max(std::abs(opt.anc_p1 - ora.p_outcome1), std::abs(opt.anc_p0 - (1 - ora.p_outcome1)));
    report.fidelity = std::max(std::abs(opt.fidelity_corrected - ora.fidelity_corrected),
                               std::abs(opt.fidelity_uncorrected - ora.fidelity_uncorrected));
    for (size_t k = 0; k < 4; k++) {
        report.basis = std::max({report.basis, std::abs(opt.basis_corrected[k] - ora.basis_corrected[k]),
                                 std::abs(opt.basis_uncorrected[k] - ora.basis_uncorrected[k])});
    }
    return report;
}

std::vector<SweepRow> sweep(const SweepGrid &grid, unsigned num_threads) {
    std::vector<SweepRow> rows;
    for (double theta : grid.theta) {
        for (double p : grid.p_flip) {
            for (double chi : grid.chi) {
                for (bool correction : grid.correction) {
                    SweepRow row;
                    row.config = grid.base;
                    row.config.source.pump_angle = theta;
                    row.config.p_flip = p;
                    row.config.source.chi = chi;
                    row.config.correction_enabled = correction;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    if (rows.empty()) {
        return rows;
    }

    if (num_threads == 0) {
        num_threads = std::max(1u, std::thread::hardware_concurrency());
    }
    num_threads = std::min<unsigned>(num_threads, static_cast<unsigned>(rows.size()));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < rows.size(); k = next++) {
            try {
                rows[k].result = run_experiment(rows[k].config);
            } catch (const std::exception &ex) {
                rows[k].error = ex.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < num_threads; t++) {
            pool.emplace_back(worker);
        }
        worker();
    }
    return rows;
}

}  // namespace loqec
