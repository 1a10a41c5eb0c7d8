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

#include "loqec/optics.h"

#include <cmath>
#include <stdexcept>

namespace loqec {

namespace {

constexpr Amplitude kReflectionPhase{0, 1};

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(p) + ".");
    }
}

bool is_hv_pair(const ModeRegister &ports, size_t offset) {
    return ports.size() >= offset + 2 && ports[offset].polarization == Polarization::H &&
           ports[offset + 1].polarization == Polarization::V &&
           ports[offset].spatial_id == ports[offset + 1].spatial_id;
}

}  // namespace

std::string_view kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::PbsHV:
            return "PBS_HV";
        case ElementKind::PbsVH:
            return "PBS_VH";
        case ElementKind::Beamsplitter:
            return "BS";
        case ElementKind::HalfWavePlate:
            return "HWP";
        case ElementKind::Birefringent:
            return "BRC";
        case ElementKind::PockelsX:
            return "POCKELS_X";
    }
    throw std::invalid_argument("Unknown element kind.");
}

ElementKind parse_kind(std::string_view name) {
    for (auto k : {ElementKind::PbsHV, ElementKind::PbsVH, ElementKind::Beamsplitter, ElementKind::HalfWavePlate,
                   ElementKind::Birefringent, ElementKind::PockelsX}) {
        if (kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("Unknown element kind '" + std::string(name) + "'.");
}

bool is_unitary_kind(ElementKind kind) {
    return kind != ElementKind::Birefringent && kind != ElementKind::PockelsX;
}

Element make_pbs(ElementKind kind, int port_a, int port_b) {
    Element e{kind, 0, {mode_h(port_a), mode_v(port_a), mode_h(port_b), mode_v(port_b)}, {}};
    check_element(e);
    return e;
}

Element make_bs(double eta, const ModeLabel &a, const ModeLabel &b) {
    Element e{ElementKind::Beamsplitter, eta, {a, b}, {}};
    check_element(e);
    return e;
}

Element make_hwp(double theta, int port) {
    return {ElementKind::HalfWavePlate, theta, {mode_h(port), mode_v(port)}, {}};
}

Element make_brc(double p_flip, int port) {
    Element e{ElementKind::Birefringent, p_flip, {mode_h(port), mode_v(port)}, {}};
    check_element(e);
    return e;
}

Element make_pockels(int port, std::string condition) {
    return {ElementKind::PockelsX, 0, {mode_h(port), mode_v(port)}, std::move(condition)};
}

void check_element(const Element &e) {
    check_register(e.ports);
    switch (e.kind) {
        case ElementKind::PbsHV:
        case ElementKind::PbsVH:
            if (e.ports.size() != 4 || !is_hv_pair(e.ports, 0) || !is_hv_pair(e.ports, 2)) {
                throw std::invalid_argument(
                    std::string(kind_name(e.kind)) + " needs ports [a:H, a:V, b:H, b:V]; a polarization mode is missing.");
            }
            break;
        case ElementKind::Beamsplitter:
            check_probability(e.param, "Beamsplitter reflectivity");
            if (e.ports.size() != 2) {
                throw std::invalid_argument("BS acts on exactly two modes.");
            }
            break;
        case ElementKind::Birefringent:
            check_probability(e.param, "Flip probability");
            [[fallthrough]];
        case ElementKind::HalfWavePlate:
        case ElementKind::PockelsX:
            if (e.ports.size() != 2 || !is_hv_pair(e.ports, 0)) {
                throw std::invalid_argument(std::string(kind_name(e.kind)) + " needs ports [s:H, s:V].");
            }
            break;
    }
}

ModeTransform pbs_transform(ElementKind kind, int port_a, int port_b) {
    if (kind != ElementKind::PbsHV && kind != ElementKind::PbsVH) {
        throw std::invalid_argument("pbs_transform needs PBS_HV or PBS_VH.");
    }
    if (port_a == port_b) {
        throw std::invalid_argument("pbs_transform needs two distinct spatial ports.");
    }
    // Mode order: a:H, a:V, b:H, b:V.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    Eigen::Index pass = kind == ElementKind::PbsHV ? 0 : 1;
    Eigen::Index reflect = 1 - pass;
    m(pass, pass) = 1;
    m(2 + pass, 2 + pass) = 1;
    m(2 + reflect, reflect) = kReflectionPhase;
    m(reflect, 2 + reflect) = kReflectionPhase;
    return ModeTransform({mode_h(port_a), mode_v(port_a), mode_h(port_b), mode_v(port_b)}, std::move(m));
}

ModeTransform hwp_transform(double theta, int port) {
    double c = std::cos(2 * theta);
    double s = std::sin(2 * theta);
    Eigen::MatrixXcd m(2, 2);
    m << c, s,
         s, -c;
    return ModeTransform({mode_h(port), mode_v(port)}, std::move(m));
}

ModeTransform bs_transform(double eta, const ModeLabel &a, const ModeLabel &b) {
    return ModeTransform({a, b}, Eigen::MatrixXcd(beamsplitter_matrix(eta)));
}

ModeTransform polarization_swap(int port) {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1,
         1, 0;
    return ModeTransform({mode_h(port), mode_v(port)}, std::move(m));
}

ModeTransform element_transform(const Element &e) {
    check_element(e);
    switch (e.kind) {
        case ElementKind::PbsHV:
        case ElementKind::PbsVH:
            return pbs_transform(e.kind, e.ports[0].spatial_id, e.ports[2].spatial_id);
        case ElementKind::Beamsplitter:
            return bs_transform(e.param, e.ports[0], e.ports[1]);
        case ElementKind::HalfWavePlate:
            return hwp_transform(e.param, e.ports[0].spatial_id);
        default:
            throw std::invalid_argument(std::string(kind_name(e.kind)) + " is a channel, not a mode transform.");
    }
}

ModeTransform compose_elements(const std::vector<Element> &elements) {
    ModeTransform total = ModeTransform::identity({});
    for (const auto &e : elements) {
        total = total.then(element_transform(e));
    }
    return total;
}

WeightedEnsemble decohere(const WeightedEnsemble &ensemble, double p_flip, int port) {
    check_probability(p_flip, "Flip probability");
    auto swap = polarization_swap(port);
    std::vector<Branch> out;
    for (const auto &b : ensemble.branches()) {
        if (p_flip < 1) {
            out.push_back({b.weight * (1 - p_flip), b.state});
        }
        if (p_flip > 0) {
            out.push_back({b.weight * p_flip, apply_mode_transform(b.state, swap)});
        }
    }
    return WeightedEnsemble(std::move(out));
}

double delay_to_pflip(double delay, double coherence_time) {
    if (!(coherence_time > 0)) {
        throw std::invalid_argument("Coherence time must be positive.");
    }
    if (!(delay >= 0)) {
        throw std::invalid_argument("Birefringent delay must be non-negative.");
    }
    double x = delay / coherence_time;
    double visibility = std::exp(-x * x / 2);
    return (1 - visibility) / 2;
}

WeightedEnsemble pockels_flip(const WeightedEnsemble &ensemble, bool condition, int port) {
    if (!condition) {
        return ensemble;
    }
    auto swap = polarization_swap(port);
    return ensemble_map(ensemble, [&](const PureState &s) { return apply_mode_transform(s, swap); });
}

}  // namespace loqec
