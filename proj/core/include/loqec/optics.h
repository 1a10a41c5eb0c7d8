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

#ifndef LOQEC_OPTICS_H
#define LOQEC_OPTICS_H

#include <string>
#include <string_view>
#include <vector>

#include "loqec/fock.h"

namespace loqec {

enum class ElementKind {
    PbsHV,         // transmits H, reflects V
    PbsVH,         // transmits V, reflects H
    Beamsplitter,  // param = reflectivity eta
    HalfWavePlate, // param = rotation angle
    Birefringent,  // param = bit-flip probability
    PockelsX,      // classically controlled H<->V exchange
};

std::string_view kind_name(ElementKind kind);
ElementKind parse_kind(std::string_view name);
bool is_unitary_kind(ElementKind kind);

/// One optical component and the modes it acts on.
///
/// Port layouts: PBS [a:H, a:V, b:H, b:V]; BS [x, y]; HWP, BRC, POCKELS_X [s:H, s:V].
struct Element {
    ElementKind kind = ElementKind::Beamsplitter;
    double param = 0;
    ModeRegister ports;
    /// Name of the classical bit gating a Pockels cell, e.g. "anc:V".
    std::string condition;

    bool operator==(const Element &) const = default;
};

Element make_pbs(ElementKind kind, int port_a, int port_b);
Element make_bs(double eta, const ModeLabel &a, const ModeLabel &b);
Element make_hwp(double theta, int port);
Element make_brc(double p_flip, int port);
Element make_pockels(int port, std::string condition);

/// Validates an element's parameter range and port layout; throws std::invalid_argument.
void check_element(const Element &element);

/// Reflected light picks up a factor i; transmitted light is unchanged. Outputs keep the input
/// spatial labels: the transmitted path of port a is port a.
ModeTransform pbs_transform(ElementKind kind, int port_a, int port_b);

/// H -> cos2t H + sin2t V, V -> sin2t H - cos2t V.
ModeTransform hwp_transform(double theta, int port);

ModeTransform bs_transform(double eta, const ModeLabel &a, const ModeLabel &b);

ModeTransform polarization_swap(int port);

/// Transform of a unitary element. Throws for channel kinds (BRC, POCKELS_X).
ModeTransform element_transform(const Element &element);

/// Product of the unitary elements in list order.
ModeTransform compose_elements(const std::vector<Element> &elements);

/// Birefringent decoherence reduced to its action in the H/V basis: every branch splits into an
/// unchanged part of weight 1-P and an H<->V exchanged part of weight P. Zero-weight parts are dropped.
WeightedEnsemble decohere(const WeightedEnsemble &ensemble, double p_flip, int port);

/// Flip probability from a birefringent delay under a Gaussian wavepacket:
/// P = (1 - exp(-tau^2 / (2 tau_c^2))) / 2.
double delay_to_pflip(double delay, double coherence_time);

/// Feedforward H<->V exchange on `port`, applied when `condition` is set.
WeightedEnsemble pockels_flip(const WeightedEnsemble &ensemble, bool condition, int port);

}  // namespace loqec

#endif
