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

#ifndef LOQEC_QUBIT_ORACLE_H
#define LOQEC_QUBIT_ORACLE_H

#include <array>
#include <complex>
#include <vector>

namespace loqec {

/// Gate-level model of the two-qubit bit-flip code with one syndrome ancilla.
///
/// Register order is (q1, q2, ancilla) with the ancilla last; basis index = 4*q1 + 2*q2 + ancilla.
namespace oracle {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;

enum class Wire : int { Q1 = 0, Q2 = 1, Ancilla = 2 };

/// Logical qubit alpha|0>_L + beta|1>_L.
struct LogicalInput {
    Amplitude alpha{1};
    Amplitude beta{0};

    /// Throws std::invalid_argument unless |alpha|^2 + |beta|^2 = 1 within kNormTolerance.
    static LogicalInput make(Amplitude alpha, Amplitude beta);
    /// alpha = cos(theta), beta = sqrt(1 - alpha^2): the down-conversion pump parameterization.
    static LogicalInput from_pump_angle(double theta);
};

/// Bit-flip probability, validated to lie in [0, 1].
class NoiseParam {
   public:
    explicit NoiseParam(double p_flip);
    double value() const {
        return p_;
    }

   private:
    double p_;
};

class ThreeQubitState {
   public:
    ThreeQubitState() = default;
    explicit ThreeQubitState(const std::array<Amplitude, 8> &amplitudes);

    static ThreeQubitState basis(int q1, int q2, int ancilla);
    static size_t index(int q1, int q2, int ancilla) {
        return static_cast<size_t>(4 * q1 + 2 * q2 + ancilla);
    }

    const std::array<Amplitude, 8> &amplitudes() const {
        return amps_;
    }
    Amplitude amplitude(int q1, int q2, int ancilla) const {
        return amps_[index(q1, q2, ancilla)];
    }
    double norm_squared() const;

   private:
    std::array<Amplitude, 8> amps_{};
};

struct QubitBranch {
    double weight = 0;
    ThreeQubitState state;
};

using QubitEnsemble = std::vector<QubitBranch>;

/// alpha|0,0,0> + beta|1,1,0>.
ThreeQubitState encode(const LogicalInput &input);

ThreeQubitState apply_x(const ThreeQubitState &state, Wire target);

/// Two branches: weight 1-P unchanged, weight P with X on `target`. Zero-weight branches are dropped.
/// Only the data wires may be targeted.
QubitEnsemble bit_flip_channel(const ThreeQubitState &state, const NoiseParam &p, Wire target);

ThreeQubitState cnot(const ThreeQubitState &state, Wire control, Wire target);

QubitEnsemble map_ensemble(const QubitEnsemble &ensemble, ThreeQubitState (*f)(const ThreeQubitState &));

struct AncillaOutcome {
    double probability = 0;
    /// Posterior ensemble, renormalized; empty when probability is zero.
    QubitEnsemble posterior;
};

struct AncillaMeasurement {
    std::array<AncillaOutcome, 2> outcomes;
};

AncillaMeasurement measure_ancilla(const QubitEnsemble &ensemble);

/// Outcome 1 applies X to q2; outcome 0 is the identity.
QubitEnsemble correct(const QubitEnsemble &ensemble, int outcome);

/// Orthogonal split of the data register into the ZZ = +1 span{|00>,|11>} and ZZ = -1 span{|01>,|10>}.
struct ZZDecomposition {
    ThreeQubitState plus_component;
    ThreeQubitState minus_component;
    double weight_plus = 0;
    double weight_minus = 0;
};

ZZDecomposition zz_syndrome(const ThreeQubitState &state);

/// ZZ weights of an ensemble, branch weights folded in.
std::array<double, 2> zz_weights(const QubitEnsemble &ensemble);

/// <psi|rho_data|psi> with psi = alpha|00> + beta|11> and rho_data the data-qubit reduced state.
double data_fidelity(const QubitEnsemble &ensemble, const LogicalInput &input);

/// Probabilities of the data register in the computational basis, indexed 2*q1 + q2.
std::array<double, 4> data_basis_probabilities(const QubitEnsemble &ensemble);

struct OracleReport {
    LogicalInput input;
    double p = 0;
    double p_outcome1 = 0;
    double fidelity_corrected = 0;
    double fidelity_uncorrected = 0;
    std::array<double, 4> basis_corrected{};
    std::array<double, 4> basis_uncorrected{};
    /// ZZ weights right after the channel, before any CNOT.
    std::array<double, 2> zz_after_channel{};
};

/// Encode, flip q2 with probability P, extract the syndrome with two CNOTs, measure the ancilla and
/// correct.
OracleReport run_oracle_circuit(const LogicalInput &input, const NoiseParam &p);

}  // namespace oracle
}  // namespace loqec

#endif
