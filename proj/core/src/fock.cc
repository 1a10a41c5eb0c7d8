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

#include "loqec/fock.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loqec {

namespace {

double factorial(int n) {
    double r = 1;
    for (int k = 2; k <= n; k++) {
        r *= k;
    }
    return r;
}

void check_budget(const OccupationVector &occupation, size_t num_modes, int max_photons) {
    if (occupation.size() != num_modes) {
        throw std::invalid_argument(
            "Occupation vector " + occupation.str() + " has " + std::to_string(occupation.size()) +
            " entries but the register has " + std::to_string(num_modes) + " modes.");
    }
    if (occupation.total() > max_photons) {
        throw std::invalid_argument(
            "Occupation vector " + occupation.str() + " exceeds the photon budget of " +
            std::to_string(max_photons) + ".");
    }
}

}  // namespace

std::string ModeLabel::str() const {
    return std::to_string(spatial_id) + (polarization == Polarization::H ? ":H" : ":V");
}

ModeLabel ModeLabel::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos || colon + 2 != text.size()) {
        throw std::invalid_argument("Mode label '" + std::string(text) + "' is not of the form 'id:H' or 'id:V'.");
    }
    ModeLabel result;
    auto id_text = text.substr(0, colon);
    auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), result.spatial_id);
    if (ec != std::errc() || ptr != id_text.data() + id_text.size() || id_text.empty()) {
        throw std::invalid_argument("Mode label '" + std::string(text) + "' has a malformed spatial id.");
    }
    char pol = text[colon + 1];
    if (pol == 'H') {
        result.polarization = Polarization::H;
    } else if (pol == 'V') {
        result.polarization = Polarization::V;
    } else {
        throw std::invalid_argument("Mode label '" + std::string(text) + "' has polarization other than H or V.");
    }
    return result;
}

void check_register(const ModeRegister &modes) {
    std::set<ModeLabel> seen;
    for (const auto &m : modes) {
        if (!seen.insert(m).second) {
            throw std::invalid_argument("Mode " + m.str() + " appears twice in the register.");
        }
    }
}

OccupationVector::OccupationVector(std::vector<std::uint8_t> counts) : counts_(std::move(counts)) {
}

OccupationVector::OccupationVector(std::initializer_list<int> counts) {
    counts_.reserve(counts.size());
    for (int c : counts) {
        if (c < 0 || c > 255) {
            throw std::invalid_argument("Photon counts must lie in [0, 255].");
        }
        counts_.push_back(static_cast<std::uint8_t>(c));
    }
}

OccupationVector OccupationVector::vacuum(size_t num_modes) {
    return OccupationVector(std::vector<std::uint8_t>(num_modes, 0));
}

int OccupationVector::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

double OccupationVector::factorial_product() const {
    double r = 1;
    for (auto c : counts_) {
        r *= factorial(c);
    }
    return r;
}

std::string OccupationVector::str() const {
    std::string out = "[";
    for (size_t k = 0; k < counts_.size(); k++) {
        if (k) {
            out += ',';
        }
        out += std::to_string(counts_[k]);
    }
    return out + "]";
}

PureState::PureState(ModeRegister modes, AmplitudeMap amplitudes, int max_photons)
    : modes_(std::move(modes)), max_photons_(max_photons) {
    check_register(modes_);
    if (max_photons_ < 0) {
        throw std::invalid_argument("Photon budget must be non-negative.");
    }
    for (auto &[occupation, amp] : amplitudes) {
        check_budget(occupation, modes_.size(), max_photons_);
        if (std::abs(amp) >= kPruneThreshold) {
            amplitudes_.emplace(occupation, amp);
        }
    }
}

PureState PureState::null_state(ModeRegister modes, int max_photons) {
    return PureState(std::move(modes), {}, max_photons);
}

Amplitude PureState::amplitude(const OccupationVector &occupation) const {
    auto it = amplitudes_.find(occupation);
    return it == amplitudes_.end() ? Amplitude{} : it->second;
}

size_t PureState::mode_index(const ModeLabel &mode) const {
    auto it = std::find(modes_.begin(), modes_.end(), mode);
    if (it == modes_.end()) {
        throw std::out_of_range("Mode " + mode.str() + " is not in the state's register.");
    }
    return static_cast<size_t>(it - modes_.begin());
}

bool PureState::has_mode(const ModeLabel &mode) const {
    return std::find(modes_.begin(), modes_.end(), mode) != modes_.end();
}

double PureState::norm_squared() const {
    double total = 0;
    for (const auto &[_, amp] : amplitudes_) {
        total += std::norm(amp);
    }
    return total;
}

PureState PureState::normalized() const {
    double n2 = norm_squared();
    if (n2 == 0) {
        throw std::invalid_argument("Cannot normalize a null state.");
    }
    return scaled(1.0 / std::sqrt(n2));
}

PureState PureState::scaled(Amplitude factor) const {
    AmplitudeMap out;
    for (const auto &[occupation, amp] : amplitudes_) {
        out.emplace(occupation, amp * factor);
    }
    return PureState(modes_, std::move(out), max_photons_);
}

PureState make_fock(ModeRegister modes, const OccupationVector &counts, int max_photons) {
    check_budget(counts, modes.size(), max_photons);
    return PureState(std::move(modes), {{counts, Amplitude{1}}}, max_photons);
}

PureState make_fock(ModeRegister modes, std::initializer_list<int> counts, int max_photons) {
    return make_fock(std::move(modes), OccupationVector(counts), max_photons);
}

PureState tensor(const PureState &a, const PureState &b) {
    ModeRegister modes = a.modes();
    modes.insert(modes.end(), b.modes().begin(), b.modes().end());
    int budget = std::max(a.max_photons(), b.max_photons());
    PureState::AmplitudeMap out;
    for (const auto &[oa, va] : a.amplitudes()) {
        for (const auto &[ob, vb] : b.amplitudes()) {
            auto counts = oa.counts();
            counts.insert(counts.end(), ob.counts().begin(), ob.counts().end());
            out.emplace(OccupationVector(std::move(counts)), va * vb);
        }
    }
    return PureState(std::move(modes), std::move(out), budget);
}

PureState with_vacuum_modes(const PureState &state, const ModeRegister &extra) {
    return tensor(state, make_fock(extra, OccupationVector::vacuum(extra.size()), state.max_photons()));
}

PureState restrict_to(const PureState &state, const ModeRegister &keep) {
    std::vector<size_t> kept;
    std::vector<size_t> dropped;
    for (const auto &m : keep) {
        kept.push_back(state.mode_index(m));
    }
    for (size_t k = 0; k < state.modes().size(); k++) {
        if (std::find(kept.begin(), kept.end(), k) == kept.end()) {
            dropped.push_back(k);
        }
    }

    PureState::AmplitudeMap out;
    std::vector<std::uint8_t> fixed;
    bool first = true;
    for (const auto &[occupation, amp] : state.amplitudes()) {
        std::vector<std::uint8_t> rest;
        for (auto k : dropped) {
            rest.push_back(occupation.counts()[k]);
        }
        if (first) {
            fixed = rest;
            first = false;
        } else if (rest != fixed) {
            throw std::invalid_argument(
                "restrict_to: dropped modes are not in a fixed occupation; the state does not factorize.");
        }
        std::vector<std::uint8_t> sub;
        for (auto k : kept) {
            sub.push_back(occupation.counts()[k]);
        }
        out.emplace(OccupationVector(std::move(sub)), amp);
    }
    return PureState(keep, std::move(out), state.max_photons());
}

Amplitude inner_product(const PureState &a, const PureState &b) {
    if (a.modes() != b.modes()) {
        throw std::invalid_argument("inner_product: states live on different registers.");
    }
    Amplitude total{};
    const auto &small = a.amplitudes().size() <= b.amplitudes().size() ? a.amplitudes() : b.amplitudes();
    for (const auto &[occupation, _] : small) {
        total += std::conj(a.amplitude(occupation)) * b.amplitude(occupation);
    }
    return total;
}

ModeTransform::ModeTransform(ModeRegister modes, Eigen::MatrixXcd matrix, Check check)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
    check_register(modes_);
    auto n = static_cast<Eigen::Index>(modes_.size());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument(
            "ModeTransform matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
            " but acts on " + std::to_string(n) + " modes.");
    }
    if (check == Check::Unitary) {
        if (unitarity_error() > kUnitarityTolerance) {
            throw std::invalid_argument(
                "ModeTransform matrix is not unitary (max deviation " + std::to_string(unitarity_error()) + ").");
        }
    } else {
        double largest = n == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXcd>(matrix_).singularValues()(0);
        if (largest > 1 + kUnitarityTolerance) {
            throw std::invalid_argument("Sub-unitary ModeTransform has a singular value above 1 (gain).");
        }
    }
}

ModeTransform ModeTransform::identity(ModeRegister modes) {
    auto n = static_cast<Eigen::Index>(modes.size());
    return ModeTransform(std::move(modes), Eigen::MatrixXcd::Identity(n, n));
}

double ModeTransform::unitarity_error() const {
    auto n = matrix_.rows();
    if (n == 0) {
        return 0;
    }
    return (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

ModeTransform ModeTransform::then(const ModeTransform &next) const {
    ModeRegister all = modes_;
    for (const auto &m : next.modes_) {
        if (std::find(all.begin(), all.end(), m) == all.end()) {
            all.push_back(m);
        }
    }
    auto n = static_cast<Eigen::Index>(all.size());
    auto embed = [&](const ModeTransform &t) {
        Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(n, n);
        std::vector<Eigen::Index> pos;
        for (const auto &m : t.modes_) {
            pos.push_back(std::find(all.begin(), all.end(), m) - all.begin());
        }
        for (size_t j = 0; j < pos.size(); j++) {
            for (size_t k = 0; k < pos.size(); k++) {
                big(pos[k], pos[j]) = t.matrix_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
            }
        }
        return big;
    };
    Eigen::MatrixXcd combined = embed(next) * embed(*this);
    bool both_unitary = unitarity_error() <= kUnitarityTolerance && next.unitarity_error() <= kUnitarityTolerance;
    // Rounding in long products can drift past the unitarity tolerance; accept the product when both
    // factors were unitary.
    ModeTransform result = identity({});
    result.modes_ = std::move(all);
    result.matrix_ = std::move(combined);
    if (!both_unitary) {
        return ModeTransform(result.modes_, result.matrix_, Check::SubUnitary);
    }
    return result;
}

ModeTransform ModeTransform::adjoint() const {
    ModeTransform result = identity({});
    result.modes_ = modes_;
    result.matrix_ = matrix_.adjoint();
    return result;
}

Eigen::Matrix2cd beamsplitter_matrix(double eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("Beamsplitter reflectivity must lie in [0, 1], got " + std::to_string(eta) + ".");
    }
    double r = std::sqrt(eta);
    double t = std::sqrt(1 - eta);
    Eigen::Matrix2cd m;
    // Columns are the images of a^dag and b^dag.
    m << r, t,
         t, -r;
    return m;
}

namespace {

struct Expansion {
    const Eigen::MatrixXcd &matrix;
    const std::vector<size_t> &state_index;  // transform-local mode -> register index
    std::vector<int> photons;                // transform-local input mode of each photon
    std::vector<std::uint8_t> out_counts;    // register-wide, transformed modes start empty
    PureState::AmplitudeMap &out;

    void recurse(size_t p, Amplitude coefficient) {
        if (p == photons.size()) {
            double norm = 1;
            for (auto r : state_index) {
                norm *= factorial(out_counts[r]);
            }
            out[OccupationVector(out_counts)] += coefficient * std::sqrt(norm);
            return;
        }
        auto j = static_cast<Eigen::Index>(photons[p]);
        for (Eigen::Index k = 0; k < matrix.rows(); k++) {
            Amplitude u = matrix(k, j);
            if (u == Amplitude{}) {
                continue;
            }
            auto r = state_index[static_cast<size_t>(k)];
            out_counts[r]++;
            recurse(p + 1, coefficient * u);
            out_counts[r]--;
        }
    }
};

}  // namespace

PureState apply_mode_transform(const PureState &state, const ModeTransform &transform) {
    std::vector<size_t> state_index;
    for (const auto &m : transform.modes()) {
        state_index.push_back(state.mode_index(m));
    }

    PureState::AmplitudeMap out;
    for (const auto &[occupation, amp] : state.amplitudes()) {
        std::vector<int> photons;
        auto base = occupation.counts();
        double input_norm = 1;
        for (size_t j = 0; j < state_index.size(); j++) {
            int n = base[state_index[j]];
            input_norm *= factorial(n);
            photons.insert(photons.end(), static_cast<size_t>(n), static_cast<int>(j));
            base[state_index[j]] = 0;
        }
        // Untouched modes contribute the same sqrt(n!) on both sides and cancel. Expanding every ordering of the photon product is the
        // multinomial expansion of prod_j (sum_k U_kj a_k^dag)^{n_j}.
        Expansion expansion{transform.matrix(), state_index, std::move(photons), std::move(base), out};
        expansion.recurse(0, amp / std::sqrt(input_norm));
    }
    return PureState(state.modes(), std::move(out), state.max_photons());
}

DetectionPattern &DetectionPattern::require(ModeRegister modes, int min_photons, int max_photons) {
    if (min_photons < 0 || max_photons < min_photons) {
        throw std::invalid_argument("DetectionPattern: invalid photon-count range.");
    }
    constraints_.push_back({std::move(modes), min_photons, max_photons});
    return *this;
}

DetectionPattern &DetectionPattern::exactly(const ModeLabel &mode, int photons) {
    return require({mode}, photons, photons);
}

DetectionPattern &DetectionPattern::total(ModeRegister modes, int photons) {
    return require(std::move(modes), photons, photons);
}

DetectionPattern DetectionPattern::exact(const ModeRegister &modes, const OccupationVector &counts) {
    if (counts.size() != modes.size()) {
        throw std::invalid_argument("DetectionPattern::exact: counts length does not match the register.");
    }
    DetectionPattern pattern;
    for (size_t k = 0; k < modes.size(); k++) {
        pattern.exactly(modes[k], counts[k]);
    }
    return pattern;
}

bool DetectionPattern::matches(const ModeRegister &modes, const OccupationVector &occupation) const {
    for (const auto &c : constraints_) {
        int n = 0;
        for (const auto &m : c.modes) {
            auto it = std::find(modes.begin(), modes.end(), m);
            if (it == modes.end()) {
                throw std::out_of_range("DetectionPattern refers to mode " + m.str() + " outside the register.");
            }
            n += occupation[static_cast<size_t>(it - modes.begin())];
        }
        if (n < c.min_photons || n > c.max_photons) {
            return false;
        }
    }
    return true;
}

Projection project_pattern(const PureState &state, const DetectionPattern &pattern) {
    PureState::AmplitudeMap kept;
    double probability = 0;
    for (const auto &[occupation, amp] : state.amplitudes()) {
        if (pattern.matches(state.modes(), occupation)) {
            kept.emplace(occupation, amp);
            probability += std::norm(amp);
        }
    }
    if (probability == 0) {
        return {0, PureState::null_state(state.modes(), state.max_photons())};
    }
    PureState conditional(state.modes(), std::move(kept), state.max_photons());
    return {probability, conditional.scaled(1.0 / std::sqrt(probability))};
}

WeightedEnsemble::WeightedEnsemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
    for (const auto &b : branches_) {
        if (!(b.weight >= 0)) {
            throw std::invalid_argument("Ensemble weights must be non-negative.");
        }
        if (b.state.modes() != branches_.front().state.modes()) {
            throw std::invalid_argument("Ensemble branches must share one register.");
        }
    }
}

WeightedEnsemble WeightedEnsemble::pure(PureState state) {
    return WeightedEnsemble({{1.0, std::move(state)}});
}

double WeightedEnsemble::total_weight() const {
    double total = 0;
    for (const auto &b : branches_) {
        total += b.weight;
    }
    return total;
}

const ModeRegister &WeightedEnsemble::modes() const {
    static const ModeRegister kEmpty;
    return branches_.empty() ? kEmpty : branches_.front().state.modes();
}

WeightedEnsemble WeightedEnsemble::normalized() const {
    double total = total_weight();
    if (total == 0) {
        throw std::invalid_argument("Cannot normalize an empty ensemble.");
    }
    std::vector<Branch> out;
    for (const auto &b : branches_) {
        out.push_back({b.weight / total, b.state});
    }
    return WeightedEnsemble(std::move(out));
}

WeightedEnsemble ensemble_map(const WeightedEnsemble &ensemble, const StateMap &f) {
    std::vector<Branch> out;
    out.reserve(ensemble.size());
    for (const auto &b : ensemble.branches()) {
        out.push_back({b.weight, f(b.state)});
    }
    return WeightedEnsemble(std::move(out));
}

EnsembleProjection ensemble_project(const WeightedEnsemble &ensemble, const DetectionPattern &pattern) {
    std::vector<Branch> surviving;
    double total = 0;
    for (const auto &b : ensemble.branches()) {
        auto projection = project_pattern(b.state, pattern);
        double w = b.weight * projection.probability;
        if (w > 0) {
            surviving.push_back({w, std::move(projection.state)});
            total += w;
        }
    }
    if (total == 0) {
        return {};
    }
    for (auto &b : surviving) {
        b.weight /= total;
    }
    return {total, WeightedEnsemble(std::move(surviving))};
}

double fidelity(const WeightedEnsemble &ensemble, const PureState &target) {
    double f = 0;
    for (const auto &b : ensemble.branches()) {
        f += b.weight * std::norm(inner_product(target, b.state));
    }
    return f;
}

}  // namespace loqec
