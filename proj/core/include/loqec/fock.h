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

#ifndef LOQEC_FOCK_H
#define LOQEC_FOCK_H

#include <Eigen/Dense>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace loqec {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultMaxPhotons = 4;
inline constexpr double kUnitarityTolerance = 1e-12;
/// Amplitudes with magnitude below this are dropped from stored states.
inline constexpr double kPruneThreshold = 1e-15;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

/// One optical mode: a spatial beam together with a linear polarization.
struct ModeLabel {
    int spatial_id = 0;
    Polarization polarization = Polarization::H;

    auto operator<=>(const ModeLabel &) const = default;

    /// Renders as "spatialId:H" or "spatialId:V".
    std::string str() const;
    static ModeLabel parse(std::string_view text);
};

inline ModeLabel mode_h(int spatial_id) {
    return {spatial_id, Polarization::H};
}
inline ModeLabel mode_v(int spatial_id) {
    return {spatial_id, Polarization::V};
}

/// Ordered list of distinct modes. The order fixes the meaning of every OccupationVector.
using ModeRegister = std::vector<ModeLabel>;

/// Throws std::invalid_argument if a mode appears twice.
void check_register(const ModeRegister &modes);

/// Photon count per mode, in register order.
class OccupationVector {
   public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<std::uint8_t> counts);
    OccupationVector(std::initializer_list<int> counts);

    static OccupationVector vacuum(size_t num_modes);

    size_t size() const {
        return counts_.size();
    }
    int operator[](size_t k) const {
        return counts_[k];
    }
    const std::vector<std::uint8_t> &counts() const {
        return counts_;
    }
    int total() const;
    /// Product of n_k! over all modes.
    double factorial_product() const;
    std::string str() const;

    auto operator<=>(const OccupationVector &) const = default;

   private:
    std::vector<std::uint8_t> counts_;
};

/// Exact multimode Fock state: complex amplitudes over occupation patterns of a fixed register.
///
/// A state with no stored amplitudes is the flagged "null" result of a zero-probability projection.
class PureState {
   public:
    using AmplitudeMap = std::map<OccupationVector, Amplitude>;

    PureState() = default;
    /// Validates register uniqueness, vector lengths and the photon budget; prunes tiny amplitudes.
    PureState(ModeRegister modes, AmplitudeMap amplitudes, int max_photons = kDefaultMaxPhotons);

    static PureState null_state(ModeRegister modes, int max_photons = kDefaultMaxPhotons);

    const ModeRegister &modes() const {
        return modes_;
    }
    const AmplitudeMap &amplitudes() const {
        return amplitudes_;
    }
    int max_photons() const {
        return max_photons_;
    }
    bool is_null() const {
        return amplitudes_.empty();
    }

    Amplitude amplitude(const OccupationVector &occupation) const;
    /// Position of `mode` in the register; throws std::out_of_range if absent.
    size_t mode_index(const ModeLabel &mode) const;
    bool has_mode(const ModeLabel &mode) const;

    double norm_squared() const;
    PureState normalized() const;
    PureState scaled(Amplitude factor) const;

   private:
    ModeRegister modes_;
    AmplitudeMap amplitudes_;
    int max_photons_ = kDefaultMaxPhotons;
};

PureState make_fock(ModeRegister modes, const OccupationVector &counts, int max_photons = kDefaultMaxPhotons);
PureState make_fock(ModeRegister modes, std::initializer_list<int> counts, int max_photons = kDefaultMaxPhotons);

/// Joint state on the concatenated register. Registers must be disjoint.
PureState tensor(const PureState &a, const PureState &b);

/// Appends empty modes to the register.
PureState with_vacuum_modes(const PureState &state, const ModeRegister &extra);

/// Drops every mode not in `keep`. The dropped modes must carry one and the same occupation in
/// every ket (the state factorizes), otherwise std::invalid_argument is thrown.
PureState restrict_to(const PureState &state, const ModeRegister &keep);

/// <a|b>. Registers must match exactly.
Amplitude inner_product(const PureState &a, const PureState &b);

/// Linear-optical mode transformation on a subset of modes.
///
/// Column j of the matrix is the image of the j-th listed mode: a_j^dag -> sum_k U(k,j) a_k^dag.
class ModeTransform {
   public:
    enum class Check {
        Unitary,
        /// Only for network builders that model loss with explicit ancillary modes. Rejects gain.
        SubUnitary,
    };

    ModeTransform(ModeRegister modes, Eigen::MatrixXcd matrix, Check check = Check::Unitary);

    static ModeTransform identity(ModeRegister modes);

    const ModeRegister &modes() const {
        return modes_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    /// max_ij |(U^dag U - I)_ij|
    double unitarity_error() const;

    /// The transform that applies *this first and `next` second, over the union of both mode sets.
    ModeTransform then(const ModeTransform &next) const;
    ModeTransform adjoint() const;

   private:
    ModeRegister modes_;
    Eigen::MatrixXcd matrix_;
};

/// The beamsplitter convention used everywhere:
///   a^dag -> sqrt(eta) a^dag + sqrt(1-eta) b^dag
///   b^dag -> sqrt(1-eta) a^dag - sqrt(eta) b^dag
Eigen::Matrix2cd beamsplitter_matrix(double eta);

PureState apply_mode_transform(const PureState &state, const ModeTransform &transform);

/// Requires the total photon count over `modes` to lie in [min_photons, max_photons].
struct CountConstraint {
    ModeRegister modes;
    int min_photons = 0;
    int max_photons = 0;

    bool operator==(const CountConstraint &) const = default;
};

/// Detector pattern: a conjunction of photon-count constraints on groups of modes.
class DetectionPattern {
   public:
    DetectionPattern &require(ModeRegister modes, int min_photons, int max_photons);
    DetectionPattern &exactly(const ModeLabel &mode, int photons);
    DetectionPattern &total(ModeRegister modes, int photons);

    /// Matches exactly one occupation vector.
    static DetectionPattern exact(const ModeRegister &modes, const OccupationVector &counts);

    const std::vector<CountConstraint> &constraints() const {
        return constraints_;
    }
    bool matches(const ModeRegister &modes, const OccupationVector &occupation) const;

   private:
    std::vector<CountConstraint> constraints_;
};

struct Projection {
    /// Sum of |amplitude|^2 over matching kets.
    double probability = 0;
    /// Renormalized conditional state; null when probability is zero.
    PureState state;

    bool empty() const {
        return state.is_null();
    }
};

Projection project_pattern(const PureState &state, const DetectionPattern &pattern);

struct Branch {
    double weight = 0;
    PureState state;
};

/// Mixed state as a list of weighted pure states on a common register.
class WeightedEnsemble {
   public:
    WeightedEnsemble() = default;
    explicit WeightedEnsemble(std::vector<Branch> branches);

    static WeightedEnsemble pure(PureState state);

    const std::vector<Branch> &branches() const {
        return branches_;
    }
    bool empty() const {
        return branches_.empty();
    }
    size_t size() const {
        return branches_.size();
    }
    double total_weight() const;
    const ModeRegister &modes() const;
    WeightedEnsemble normalized() const;

   private:
    std::vector<Branch> branches_;
};

using StateMap = std::function<PureState(const PureState &)>;

WeightedEnsemble ensemble_map(const WeightedEnsemble &ensemble, const StateMap &f);

struct EnsembleProjection {
    double probability = 0;
    WeightedEnsemble ensemble;

    bool empty() const {
        return ensemble.empty();
    }
};

EnsembleProjection ensemble_project(const WeightedEnsemble &ensemble, const DetectionPattern &pattern);

/// sum_i w_i |<target|phi_i>|^2
double fidelity(const WeightedEnsemble &ensemble, const PureState &target);

}  // namespace loqec

#endif
