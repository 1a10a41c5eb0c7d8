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

#include "loqec/serialize.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace loqec {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json &j, const std::set<std::string> &allowed, const std::string &path) {
    if (!j.is_object()) {
        throw std::invalid_argument(path + ": expected an object.");
    }
    for (const auto &[key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw std::invalid_argument(path + "." + key + ": unknown field.");
        }
    }
}

const json &field(const json &j, const std::string &key, const std::string &path) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw std::invalid_argument(path + "." + key + ": missing required field.");
    }
    return *it;
}

double number(const json &j, const std::string &path) {
    if (!j.is_number()) {
        throw std::invalid_argument(path + ": expected a number.");
    }
    return j.get<double>();
}

json amplitude_json(std::complex<double> a) {
    if (a.imag() == 0) {
        return round_real(a.real());
    }
    return {{"re", round_real(a.real())}, {"im", round_real(a.imag())}};
}

std::string param_key(ElementKind kind) {
    switch (kind) {
        case ElementKind::Beamsplitter:
            return "eta";
        case ElementKind::HalfWavePlate:
            return "theta";
        case ElementKind::Birefringent:
            return "p_flip";
        default:
            return "";
    }
}

}  // namespace

nlohmann::json state_to_json(const PureState &state) {
    json reg = json::array();
    for (const auto &m : state.modes()) {
        reg.push_back(m.str());
    }
    json amps = json::array();
    for (const auto &[occupation, amp] : state.amplitudes()) {
        json counts = json::array();
        for (auto c : occupation.counts()) {
            counts.push_back(static_cast<int>(c));
        }
        amps.push_back({{"counts", counts}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return {{"register", reg}, {"amplitudes", amps}};
}

PureState state_from_json(const nlohmann::json &j, int max_photons) {
    reject_unknown_keys(j, {"register", "amplitudes"}, "state");
    ModeRegister modes;
    const auto &reg = field(j, "register", "state");
    if (!reg.is_array()) {
        throw std::invalid_argument("state.register: expected an array.");
    }
    for (const auto &m : reg) {
        modes.push_back(ModeLabel::parse(m.get<std::string>()));
    }
    PureState::AmplitudeMap amps;
    const auto &list = field(j, "amplitudes", "state");
    if (!list.is_array()) {
        throw std::invalid_argument("state.amplitudes: expected an array.");
    }
    for (size_t k = 0; k < list.size(); k++) {
        std::string path = "state.amplitudes[" + std::to_string(k) + "]";
        const auto &entry = list[k];
        reject_unknown_keys(entry, {"counts", "re", "im"}, path);
        std::vector<std::uint8_t> counts;
        for (const auto &c : field(entry, "counts", path)) {
            int n = c.get<int>();
            if (n < 0 || n > 255) {
                throw std::invalid_argument(path + ".counts: photon count out of range.");
            }
            counts.push_back(static_cast<std::uint8_t>(n));
        }
        double re = number(field(entry, "re", path), path + ".re");
        double im = number(field(entry, "im", path), path + ".im");
        amps[OccupationVector(std::move(counts))] += Amplitude{re, im};
    }
    return PureState(std::move(modes), std::move(amps), max_photons);
}

nlohmann::json oracle_report_to_json(const oracle::OracleReport &r) {
    return {
        {"alpha", amplitude_json(r.input.alpha)},
        {"beta", amplitude_json(r.input.beta)},
        {"p", round_real(r.p)},
        {"p_outcome1", round_probability(r.p_outcome1)},
        {"fidelity_corrected", round_probability(r.fidelity_corrected)},
        {"fidelity_uncorrected", round_probability(r.fidelity_uncorrected)},
    };
}

nlohmann::json element_to_json(const Element &e) {
    json params = json::object();
    auto key = param_key(e.kind);
    if (!key.empty()) {
        params[key] = e.param;
    }
    if (e.kind == ElementKind::PockelsX) {
        params["condition"] = e.condition;
    }
    json ports = json::array();
    for (const auto &m : e.ports) {
        ports.push_back(port_name(m));
    }
    return {{"kind", std::string(kind_name(e.kind))}, {"params", params}, {"ports", ports}};
}

Element element_from_json(const nlohmann::json &j, const std::string &path) {
    reject_unknown_keys(j, {"kind", "params", "ports"}, path);
    Element e;
    const auto &kind = field(j, "kind", path);
    if (!kind.is_string()) {
        throw std::invalid_argument(path + ".kind: expected a string.");
    }
    try {
        e.kind = parse_kind(kind.get<std::string>());
    } catch (const std::invalid_argument &ex) {
        throw std::invalid_argument(path + ".kind: " + ex.what());
    }

    json params = j.contains("params") ? j.at("params") : json::object();
    auto key = param_key(e.kind);
    std::set<std::string> allowed;
    if (!key.empty()) {
        allowed.insert(key);
    }
    if (e.kind == ElementKind::PockelsX) {
        allowed.insert("condition");
    }
    reject_unknown_keys(params, allowed, path + ".params");
    if (!key.empty()) {
        e.param = number(field(params, key, path + ".params"), path + ".params." + key);
    }
    if (e.kind == ElementKind::PockelsX) {
        const auto &cond = field(params, "condition", path + ".params");
        if (!cond.is_string()) {
            throw std::invalid_argument(path + ".params.condition: expected a port name.");
        }
        e.condition = cond.get<std::string>();
        try {
            parse_port(e.condition);
        } catch (const std::invalid_argument &ex) {
            throw std::invalid_argument(path + ".params.condition: " + ex.what());
        }
    }

    const auto &ports = field(j, "ports", path);
    if (!ports.is_array()) {
        throw std::invalid_argument(path + ".ports: expected an array of port names.");
    }
    for (size_t k = 0; k < ports.size(); k++) {
        try {
            e.ports.push_back(parse_port(ports[k].get<std::string>()));
        } catch (const std::exception &ex) {
            throw std::invalid_argument(path + ".ports[" + std::to_string(k) + "]: " + ex.what());
        }
    }
    try {
        check_element(e);
    } catch (const std::invalid_argument &ex) {
        throw std::invalid_argument(path + ": " + ex.what());
    }
    return e;
}

nlohmann::json network_to_json(const std::vector<Element> &elements) {
    json list = json::array();
    for (const auto &e : elements) {
        list.push_back(element_to_json(e));
    }
    return {{"elements", list}};
}

std::vector<Element> network_from_json(const nlohmann::json &j) {
    reject_unknown_keys(j, {"elements"}, "network");
    const auto &list = field(j, "elements", "network");
    if (!list.is_array()) {
        throw std::invalid_argument("network.elements: expected an array.");
    }
    std::vector<Element> elements;
    for (size_t k = 0; k < list.size(); k++) {
        elements.push_back(element_from_json(list[k], "network.elements[" + std::to_string(k) + "]"));
    }
    return elements;
}

std::string format_real(double x) {
    if (x == 0) {
        x = 0;  // drops the sign of -0
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round_real(double x) {
    return std::stod(format_real(x));
}

double round_probability(double p) {
    return std::clamp(round_real(p), 0.0, 1.0);
}

std::string run_csv_row(const ExperimentConfig &cfg, const RunResult &r) {
    std::string row;
    for (double x : {cfg.source.pump_angle, cfg.p_flip, cfg.source.chi}) {
        row += format_real(round_real(x)) + ",";
    }
    row += cfg.correction_enabled ? "true" : "false";
    for (double p : {r.coincidence_probability, r.anc_p0, r.anc_p1, r.fidelity_corrected, r.fidelity_uncorrected}) {
        row += "," + format_real(round_probability(p));
    }
    return row;
}

nlohmann::json run_to_json(const ExperimentConfig &cfg, const RunResult &r) {
    json row = {
        {"theta", round_real(cfg.source.pump_angle)},
        {"p_flip", round_real(cfg.p_flip)},
        {"chi", round_real(cfg.source.chi)},
        {"correction", cfg.correction_enabled},
        {"coinc_prob", round_probability(r.coincidence_probability)},
        {"anc_p0", round_probability(r.anc_p0)},
        {"anc_p1", round_probability(r.anc_p1)},
        {"fid_corrected", round_probability(r.fidelity_corrected)},
        {"fid_uncorrected", round_probability(r.fidelity_uncorrected)},
    };
    if (r.null_result) {
        row["null_result"] = true;
    }
    return row;
}

}  // namespace loqec
