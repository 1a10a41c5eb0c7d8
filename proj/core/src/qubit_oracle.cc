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

#include "loqec/qubit_oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace loqec::oracle {

namespace {

int bit_of(size_t index, Wire w) {
    return static_cast<int>((index >> (2 - static_cast<int>(w))) & 1);
}

size_t toggle(size_t index, Wire w) {
    return index ^ (size_t{1} << (2 - static_cast<int>(w)));
}

}  // namespace

LogicalInput LogicalInput::make(Amplitude alpha, Amplitude beta) {
    double n = std::norm(alpha) + std::norm(beta);
    if (std::abs(n - 1) > kNormTolerance) {
        throw std::invalid_argument("Logical input is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(n));
    }
    return {alpha, beta};
}

LogicalInput LogicalInput::from_pump_angle(double theta) {
    double a = std::cos(theta);
    return {a, std::sqrt(std::max(0.0, 1 - a * a))};
}

NoiseParam::NoiseParam(double p_flip) : p_(p_flip) {
    if (!(p_flip >= 0 && p_flip <= 1)) {
        throw std::invalid_argument("Flip probability must lie in [0, 1], got " + std::to_string(p_flip) + ".");
    }
}

ThreeQubitState::ThreeQubitState(const std::array<Amplitude, 8> &amplitudes) : amps_(amplitudes) {
}

ThreeQubitState ThreeQubitState::basis(int q1, int q2, int ancilla) {
    std::array<Amplitude, 8> a{};
    a[index(q1, q2, ancilla)] = 1;
    return ThreeQubitState(a);
}

double ThreeQubitState::norm_squared() const {
    double n = 0;
    for (auto a : amps_) {
        n += std::norm(a);
    }
    return n;
}

ThreeQubitState encode(const LogicalInput &input) {
    auto checked = LogicalInput::make(input.alpha, input.beta);
    std::array<Amplitude, 8> a{};
    a[ThreeQubitState::index(0, 0, 0)] = checked.alpha;
    a[ThreeQubitState::index(1, 1, 0)] = checked.beta;
    return ThreeQubitState(a);
}

ThreeQubitState apply_x(const ThreeQubitState &state, Wire target) {
    std::array<Amplitude, 8> out{};
    for (size_t k = 0; k < 8; k++) {
        out[toggle(k, target)] = state.amplitudes()[k];
    }
    return ThreeQubitState(out);
}

QubitEnsemble bit_flip_channel(const ThreeQubitState &state, const NoiseParam &p, Wire target) {
    if (target == Wire::Ancilla) {
        throw std::invalid_argument("bit_flip_channel: the noise acts on a data qubit (q1 or q2).");
    }
    QubitEnsemble out;
    if (p.value() < 1) {
        out.push_back({1 - p.value(), state});
    }
    if (p.value() > 0) {
        out.push_back({p.value(), apply_x(state, target)});
    }
    return out;
}

ThreeQubitState cnot(const ThreeQubitState &state, Wire control, Wire target) {
    if (control == target) {
        throw std::invalid_argument("cnot: control and target must differ.");
    }
    std::array<Amplitude, 8> out{};
    for (size_t k = 0; k < 8; k++) {
        size_t dst = bit_of(k, control) ? toggle(k, target) : k;
        out[dst] = state.amplitudes()[k];
    }
    return ThreeQubitState(out);
}

QubitEnsemble map_ensemble(const QubitEnsemble &ensemble, ThreeQubitState (*f)(const ThreeQubitState &)) {
    QubitEnsemble out;
    for (const auto &b : ensemble) {
        out.push_back({b.weight, f(b.state)});
    }
    return out;
}

AncillaMeasurement measure_ancilla(const QubitEnsemble &ensemble) {
    AncillaMeasurement m;
    for (int outcome = 0; outcome < 2; outcome++) {
        auto &slot = m.outcomes[static_cast<size_t>(outcome)];
        for (const auto &b : ensemble) {
            std::array<Amplitude, 8> kept{};
            double p = 0;
            for (size_t k = 0; k < 8; k++) {
                if (bit_of(k, Wire::Ancilla) == outcome) {
                    kept[k] = b.state.amplitudes()[k];
                    p += std::norm(kept[k]);
                }
            }
            if (b.weight * p > 0) {
                double scale = 1 / std::sqrt(p);
                for (auto &a : kept) {
                    a *= scale;
                }
                slot.posterior.push_back({b.weight * p, ThreeQubitState(kept)});
                slot.probability += b.weight * p;
            }
        }
        for (auto &b : slot.posterior) {
            b.weight /= slot.probability;
        }
    }
    return m;
}

QubitEnsemble correct(const QubitEnsemble &ensemble, int outcome) {
    if (outcome == 0) {
        return ensemble;
    }
    QubitEnsemble out;
    for (const auto &b : ensemble) {
        out.push_back({b.weight, apply_x(b.state, Wire::Q2)});
    }
    return out;
}

ZZDecomposition zz_syndrome(const ThreeQubitState &state) {
    std::array<Amplitude, 8> plus{};
    std::array<Amplitude, 8> minus{};
    for (size_t k = 0; k < 8; k++) {
        bool even = bit_of(k, Wire::Q1) == bit_of(k, Wire::Q2);
        (even ? plus : minus)[k] = state.amplitudes()[k];
    }
    ZZDecomposition d{ThreeQubitState(plus), ThreeQubitState(minus), 0, 0};
    d.weight_plus = d.plus_component.norm_squared();
    d.weight_minus = d.minus_component.norm_squared();
    return d;
}

std::array<double, 2> zz_weights(const QubitEnsemble &ensemble) {
    std::array<double, 2> w{};
    for (const auto &b : ensemble) {
        auto d = zz_syndrome(b.state);
        w[0] += b.weight * d.weight_plus;
        w[1] += b.weight * d.weight_minus;
    }
    return w;
}

double data_fidelity(const QubitEnsemble &ensemble, const LogicalInput &input) {
    double f = 0;
    for (const auto &b : ensemble) {
        for (int anc = 0; anc < 2; anc++) {
            Amplitude overlap = std::conj(input.alpha) * b.state.amplitude(0, 0, anc) +
                                std::conj(input.beta) * b.state.amplitude(1, 1, anc);
            f += b.weight * std::norm(overlap);
        }
    }
    return f;
}

std::array<double, 4> data_basis_probabilities(const QubitEnsemble &ensemble) {
    std::array<double, 4> p{};
    for (const auto &b : ensemble) {
        for (size_t k = 0; k < 8; k++) {
            p[k >> 1] += b.weight * std::norm(b.state.amplitudes()[k]);
        }
    }
    return p;
}

OracleReport run_oracle_circuit(const LogicalInput &input, const NoiseParam &p) {
    OracleReport report;
    report.input = input;
    report.p = p.value();

    auto noisy = bit_flip_channel(encode(input), p, Wire::Q2);
    report.fidelity_uncorrected = data_fidelity(noisy, input);
    report.basis_uncorrected = data_basis_probabilities(noisy);
    report.zz_after_channel = zz_weights(noisy);

    auto syndrome = map_ensemble(noisy, [](const ThreeQubitState &s) { return cnot(s, Wire::Q1, Wire::Ancilla); });
    syndrome = map_ensemble(syndrome, [](const ThreeQubitState &s) { return cnot(s, Wire::Q2, Wire::Ancilla); });
    auto m = measure_ancilla(syndrome);
    report.p_outcome1 = m.outcomes[1].probability;

    QubitEnsemble corrected;
    for (int outcome = 0; outcome < 2; outcome++) {
        const auto &o = m.outcomes[static_cast<size_t>(outcome)];
        for (const auto &b : correct(o.posterior, outcome)) {
            corrected.push_back({o.probability * b.weight, b.state});
        }
    }
    report.fidelity_corrected = data_fidelity(corrected, input);
    report.basis_corrected = data_basis_probabilities(corrected);
    return report;
}

}  // namespace loqec::oracle
