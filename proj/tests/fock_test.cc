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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "loqec/validation.h"
#include "oracles.h"

using namespace loqec;
using loqec::testing::oracle_amplitude;

namespace {

const ModeRegister kPair{mode_h(1), mode_h(2)};
const ModeRegister kBeam1{mode_h(1), mode_v(1)};

PureState random_state(const ModeRegister &modes, std::mt19937_64 &rng, int max_total = kDefaultMaxPhotons) {
    std::normal_distribution<double> g;
    PureState::AmplitudeMap amps;
    for (const auto &occ : enumerate_occupations(modes.size(), max_total)) {
        amps.emplace(occ, Amplitude{g(rng), g(rng)});
    }
    return PureState(modes, std::move(amps)).normalized();
}

ModeRegister modes_of(size_t n) {
    ModeRegister modes;
    for (size_t k = 0; k < n; k++) {
        modes.push_back({static_cast<int>(k / 2) + 1, k % 2 ? Polarization::V : Polarization::H});
    }
    return modes;
}

}  // namespace

TEST(mode_label, str_and_parse) {
    ASSERT_EQ(mode_v(12).str(), "12:V");
    ASSERT_EQ(ModeLabel::parse("3:H"), mode_h(3));
    ASSERT_THROW(ModeLabel::parse("3:X"), std::invalid_argument);
    ASSERT_THROW(ModeLabel::parse("3H"), std::invalid_argument);
    ASSERT_THROW(ModeLabel::parse(":H"), std::invalid_argument);
    ASSERT_THROW(check_register({mode_h(1), mode_h(1)}), std::invalid_argument);
}

TEST(make_fock, basis_ket) {
    auto s = make_fock(kBeam1, {1, 0});
    ASSERT_EQ(s.amplitudes().size(), 1u);
    ASSERT_EQ(s.amplitude(OccupationVector{1, 0}), Amplitude(1));
    ASSERT_DOUBLE_EQ(s.norm_squared(), 1);
}

TEST(make_fock, vacuum) {
    auto s = make_fock(kBeam1, {0, 0});
    ASSERT_DOUBLE_EQ(s.norm_squared(), 1);
    ASSERT_EQ(s.amplitude(OccupationVector::vacuum(2)), Amplitude(1));
}

TEST(make_fock, errors) {
    ASSERT_THROW(make_fock(kBeam1, {2, 0}, 1), std::invalid_argument);
    ASSERT_THROW(make_fock(kBeam1, {1, 0, 0}), std::invalid_argument);
    ASSERT_THROW(make_fock(kBeam1, {3, 2}), std::invalid_argument);
}

TEST(apply_mode_transform, identity) {
    std::mt19937_64 rng(1);
    auto s = random_state(modes_of(3), rng);
    auto out = apply_mode_transform(s, ModeTransform::identity(s.modes()));
    for (const auto &[occ, amp] : s.amplitudes()) {
        ASSERT_NEAR(std::abs(out.amplitude(occ) - amp), 0, 1e-15);
    }
}

TEST(apply_mode_transform, single_photon_beamsplitter) {
    for (double eta : {0.0, 0.2, 1.0 / 3, 0.5, 0.9, 1.0}) {
        auto out = apply_mode_transform(make_fock(kPair, {1, 0}),
                                        ModeTransform(kPair, Eigen::MatrixXcd(beamsplitter_matrix(eta))));
        ASSERT_NEAR(std::abs(out.amplitude(OccupationVector{1, 0}) - std::sqrt(eta)), 0, 1e-15);
        ASSERT_NEAR(std::abs(out.amplitude(OccupationVector{0, 1}) - std::sqrt(1 - eta)), 0, 1e-15);
    }
}

TEST(apply_mode_transform, hong_ou_mandel) {
    // By hand: a^dag b^dag -> (a^dag + b^dag)(a^dag - b^dag) / 2 = (a^dag^2 - b^dag^2) / 2, and a^dag^2|0> = sqrt2|2>.
    const Amplitude kFrozen = 1 / std::sqrt(2.0);
    ModeTransform bs(kPair, Eigen::MatrixXcd(beamsplitter_matrix(0.5)));
    auto in = make_fock(kPair, {1, 1});
    auto out = apply_mode_transform(in, bs);

    // Independent route: permanents of the splitter matrix.
    Eigen::MatrixXcd u = bs.matrix();
    ASSERT_NEAR(std::abs(oracle_amplitude(in, u, {2, 0}) - kFrozen), 0, 1e-15);
    ASSERT_NEAR(std::abs(oracle_amplitude(in, u, {0, 2}) + kFrozen), 0, 1e-15);
    ASSERT_NEAR(std::abs(oracle_amplitude(in, u, {1, 1})), 0, 1e-15);

    ASSERT_NEAR(std::abs(out.amplitude(OccupationVector{2, 0}) - kFrozen), 0, 1e-15);
    ASSERT_NEAR(std::abs(out.amplitude(OccupationVector{0, 2}) + kFrozen), 0, 1e-15);
    ASSERT_EQ(out.amplitude(OccupationVector{1, 1}), Amplitude(0));
}

TEST(apply_mode_transform, errors) {
    auto s = make_fock(kPair, {1, 0});
    ASSERT_THROW(apply_mode_transform(s, ModeTransform::identity({mode_v(7)})), std::out_of_range);

    Eigen::MatrixXcd gainy(2, 2);
    gainy << 1.1, 0, 0, 1;
    ASSERT_THROW(ModeTransform(kPair, gainy), std::invalid_argument);
    ASSERT_THROW(ModeTransform(kPair, gainy, ModeTransform::Check::SubUnitary), std::invalid_argument);
    ASSERT_THROW(ModeTransform(kPair, Eigen::MatrixXcd::Identity(3, 3)), std::invalid_argument);
}

TEST(apply_mode_transform, subunitary_escape_hatch_loses_norm) {
    Eigen::MatrixXcd lossy(2, 2);
    lossy << std::sqrt(0.5), 0, 0, 1;
    ASSERT_THROW(ModeTransform(kPair, lossy), std::invalid_argument);
    ModeTransform t(kPair, lossy, ModeTransform::Check::SubUnitary);
    auto out = apply_mode_transform(make_fock(kPair, {1, 0}), t);
    ASSERT_NEAR(out.norm_squared(), 0.5, 1e-15);
}

TEST(apply_mode_transform, matches_permanent_oracle_on_random_states) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; trial++) {
        auto modes = modes_of(2 + trial % 3);
        auto s = random_state(modes, rng);
        ModeTransform u(modes, random_unitary(static_cast<int>(modes.size()), rng()));
        auto out = apply_mode_transform(s, u);
        for (const auto &pattern : loqec::testing::all_patterns(modes.size(), kDefaultMaxPhotons)) {
            std::vector<std::uint8_t> c(pattern.begin(), pattern.end());
            ASSERT_NEAR(std::abs(out.amplitude(OccupationVector(c)) - oracle_amplitude(s, u.matrix(), pattern)), 0,
                        1e-12);
        }
    }
}

TEST(apply_mode_transform, acts_on_a_subset_of_modes) {
    std::mt19937_64 rng(11);
    auto modes = modes_of(4);
    auto s = random_state(modes, rng);
    ModeTransform bs({modes[1], modes[3]}, Eigen::MatrixXcd(beamsplitter_matrix(0.3)));
    auto out = apply_mode_transform(s, bs);
    Eigen::MatrixXcd full = loqec::testing::embed(bs, modes);
    for (const auto &pattern : loqec::testing::all_patterns(4, kDefaultMaxPhotons)) {
        std::vector<std::uint8_t> c(pattern.begin(), pattern.end());
        ASSERT_NEAR(std::abs(out.amplitude(OccupationVector(c)) - oracle_amplitude(s, full, pattern)), 0, 1e-12);
    }
}

TEST(fock_properties, norm_and_photon_number_preserved) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; trial++) {
        auto modes = modes_of(2 + trial % 3);
        auto s = random_state(modes, rng);
        ModeTransform u(modes, random_unitary(static_cast<int>(modes.size()), rng()));
        ASSERT_LE(u.unitarity_error(), kUnitarityTolerance);
        auto out = apply_mode_transform(s, u);
        ASSERT_NEAR(out.norm_squared(), 1, 1e-12);

        std::vector<double> before(kDefaultMaxPhotons + 1), after(kDefaultMaxPhotons + 1);
        for (const auto &[occ, amp] : s.amplitudes()) {
            before[static_cast<size_t>(occ.total())] += std::norm(amp);
        }
        for (const auto &[occ, amp] : out.amplitudes()) {
            after[static_cast<size_t>(occ.total())] += std::norm(amp);
        }
        for (size_t n = 0; n < before.size(); n++) {
            ASSERT_NEAR(before[n], after[n], 1e-12);
        }
    }
}

TEST(fock_properties, composition) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        auto modes = modes_of(2 + trial % 2);
        auto s = random_state(modes, rng);
        ModeTransform u(modes, random_unitary(static_cast<int>(modes.size()), rng()));
        ModeTransform v(modes, random_unitary(static_cast<int>(modes.size()), rng()));
        auto stepwise = apply_mode_transform(apply_mode_transform(s, u), v);
        auto joint = apply_mode_transform(s, ModeTransform(modes, v.matrix() * u.matrix()));
        auto chained = apply_mode_transform(s, u.then(v));
        for (const auto &occ : enumerate_occupations(modes.size(), kDefaultMaxPhotons)) {
            ASSERT_NEAR(std::abs(stepwise.amplitude(occ) - joint.amplitude(occ)), 0, 1e-12);
            ASSERT_NEAR(std::abs(chained.amplitude(occ) - joint.amplitude(occ)), 0, 1e-12);
        }
    }
}

TEST(mode_transform, then_over_disjoint_modes_and_adjoint) {
    ModeTransform a({mode_h(1), mode_h(2)}, Eigen::MatrixXcd(beamsplitter_matrix(0.3)));
    ModeTransform b({mode_h(2), mode_h(3)}, Eigen::MatrixXcd(beamsplitter_matrix(0.6)));
    auto ab = a.then(b);
    ASSERT_EQ(ab.modes(), (ModeRegister{mode_h(1), mode_h(2), mode_h(3)}));
    ASSERT_LE(ab.unitarity_error(), 1e-12);
    auto round_trip = ab.then(ab.adjoint());
    ASSERT_NEAR((round_trip.matrix() - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff(), 0, 1e-12);
}

TEST(inner_product, examples) {
    std::mt19937_64 rng(9);
    auto psi = random_state(kBeam1, rng);
    ASSERT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0, 1e-12);
    ASSERT_EQ(inner_product(make_fock(kBeam1, {1, 0}), make_fock(kBeam1, {0, 1})), Amplitude(0));

    Amplitude alpha{0.6, 0.0};
    Amplitude beta{0.0, 0.8};
    PureState superposed(kBeam1, {{OccupationVector{1, 0}, alpha}, {OccupationVector{0, 1}, beta}});
    ASSERT_NEAR(std::abs(inner_product(make_fock(kBeam1, {1, 0}), superposed) - alpha), 0, 1e-15);

    auto phi = random_state(kBeam1, rng);
    ASSERT_NEAR(std::abs(inner_product(psi, phi) - std::conj(inner_product(phi, psi))), 0, 1e-15);
    ASSERT_THROW(inner_product(psi, make_fock(kPair, {0, 0})), std::invalid_argument);
}

TEST(project_pattern, exact_input_ket) {
    auto s = make_fock(kBeam1, {0, 1});
    auto p = project_pattern(s, DetectionPattern::exact(kBeam1, OccupationVector{0, 1}));
    ASSERT_DOUBLE_EQ(p.probability, 1);
    ASSERT_NEAR(std::abs(inner_product(p.state, s) - 1.0), 0, 1e-15);
}

TEST(project_pattern, hong_ou_mandel_coincidence_is_empty) {
    auto out = apply_mode_transform(make_fock(kPair, {1, 1}), ModeTransform(kPair, beamsplitter_matrix(0.5)));
    DetectionPattern coincidence;
    coincidence.exactly(kPair[0], 1).exactly(kPair[1], 1);
    auto p = project_pattern(out, coincidence);
    ASSERT_EQ(p.probability, 0);
    ASSERT_TRUE(p.empty());
}

TEST(project_pattern, pair_source_post_selection) {
    // Normalized (|vac> + chi(alpha|HH> + beta|VV>)); requiring a photon in each beam leaves the pair term.
    double chi = 0.1;
    double alpha = std::cos(0.4);
    double beta = std::sin(0.4);
    ModeRegister beams{mode_h(1), mode_v(1), mode_h(2), mode_v(2)};
    PureState source(beams, {{OccupationVector{0, 0, 0, 0}, 1.0},
                             {OccupationVector{1, 0, 1, 0}, chi * alpha},
                             {OccupationVector{0, 1, 0, 1}, chi * beta}});
    source = source.normalized();
    DetectionPattern both;
    both.require({beams[0], beams[1]}, 1, kDefaultMaxPhotons).require({beams[2], beams[3]}, 1, kDefaultMaxPhotons);
    auto p = project_pattern(source, both);
    ASSERT_NEAR(p.probability, chi * chi / (1 + chi * chi), 1e-15);
    ASSERT_NEAR(std::abs(p.state.amplitude(OccupationVector{1, 0, 1, 0}) - alpha), 0, 1e-15);
    ASSERT_NEAR(std::abs(p.state.amplitude(OccupationVector{0, 1, 0, 1}) - beta), 0, 1e-15);
}

TEST(project_pattern, completeness) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; trial++) {
        auto modes = modes_of(2 + trial % 3);
        auto s = random_state(modes, rng);
        double total = 0;
        for (const auto &occ : enumerate_occupations(modes.size(), kDefaultMaxPhotons)) {
            total += project_pattern(s, DetectionPattern::exact(modes, occ)).probability;
        }
        ASSERT_NEAR(total, 1, 1e-12);
    }
}

namespace {

// Bit-flip-coded pair plus ancilla after the two syndrome CNOTs, written as photons:
// branch 1-P: alpha|H,H,H> + beta|V,V,H>;  branch P: alpha|H,V,V> + beta|V,H,V>.
const ModeRegister kThreeBeams{mode_h(1), mode_v(1), mode_h(2), mode_v(2), mode_h(3), mode_v(3)};

WeightedEnsemble syndrome_ensemble(double alpha, double beta, double p) {
    PureState code(kThreeBeams, {{OccupationVector{1, 0, 1, 0, 1, 0}, alpha}, {OccupationVector{0, 1, 0, 1, 1, 0}, beta}});
    PureState error(kThreeBeams,
                    {{OccupationVector{1, 0, 0, 1, 0, 1}, alpha}, {OccupationVector{0, 1, 1, 0, 0, 1}, beta}});
    return WeightedEnsemble({{1 - p, code}, {p, error}});
}

}  // namespace

TEST(ensemble, identity_map) {
    auto e = syndrome_ensemble(0.6, 0.8, 0.3);
    auto mapped = ensemble_map(e, [](const PureState &s) { return s; });
    ASSERT_EQ(mapped.size(), e.size());
    for (size_t k = 0; k < e.size(); k++) {
        ASSERT_EQ(mapped.branches()[k].weight, e.branches()[k].weight);
        ASSERT_EQ(mapped.branches()[k].state.amplitudes(), e.branches()[k].state.amplitudes());
    }
}

TEST(ensemble, project_ancilla_outcomes) {
    double p = 0.3;
    auto e = syndrome_ensemble(0.6, 0.8, p);
    DetectionPattern zero;
    zero.exactly(mode_h(3), 1).exactly(mode_v(3), 0);
    auto r0 = ensemble_project(e, zero);
    ASSERT_NEAR(r0.probability, 1 - p, 1e-15);
    ASSERT_EQ(r0.ensemble.size(), 1u);
    ASSERT_NEAR(std::abs(inner_product(r0.ensemble.branches()[0].state, e.branches()[0].state)), 1, 1e-15);

    DetectionPattern one;
    one.exactly(mode_h(3), 0).exactly(mode_v(3), 1);
    auto r1 = ensemble_project(e, one);
    ASSERT_NEAR(r1.probability, p, 1e-15);
    ASSERT_NEAR(std::abs(inner_product(r1.ensemble.branches()[0].state, e.branches()[1].state)), 1, 1e-15);
    ASSERT_NEAR(r1.ensemble.total_weight(), 1, 1e-15);
}

TEST(ensemble, all_branches_annihilated) {
    auto e = syndrome_ensemble(0.6, 0.8, 0.3);
    DetectionPattern impossible;
    impossible.exactly(mode_h(3), 2);
    auto r = ensemble_project(e, impossible);
    ASSERT_EQ(r.probability, 0);
    ASSERT_TRUE(r.empty());
}

TEST(ensemble, trace_over_exhaustive_patterns) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.1, 1);
    for (int trial = 0; trial < 10; trial++) {
        auto modes = modes_of(3);
        std::vector<Branch> branches;
        for (int b = 0; b < 3; b++) {
            branches.push_back({unit(rng), random_state(modes, rng)});
        }
        auto e = WeightedEnsemble(std::move(branches)).normalized();
        double total = 0;
        for (const auto &occ : enumerate_occupations(3, kDefaultMaxPhotons)) {
            total += ensemble_project(e, DetectionPattern::exact(modes, occ)).probability;
        }
        ASSERT_NEAR(total, 1, 1e-12);
    }
}

TEST(ensemble, invariants) {
    ASSERT_THROW(WeightedEnsemble({{-0.1, make_fock(kPair, {0, 0})}}), std::invalid_argument);
    ASSERT_THROW(WeightedEnsemble({{0.5, make_fock(kPair, {0, 0})}, {0.5, make_fock(kBeam1, {0, 0})}}),
                 std::invalid_argument);
}

TEST(state_plumbing, tensor_and_restrict) {
    auto a = make_fock(kBeam1, {1, 0});
    auto b = make_fock({mode_h(2), mode_v(2)}, {0, 1});
    auto ab = tensor(a, b);
    ASSERT_EQ(ab.modes().size(), 4u);
    ASSERT_EQ(ab.amplitude(OccupationVector{1, 0, 0, 1}), Amplitude(1));
    ASSERT_THROW(tensor(a, a), std::invalid_argument);
    ASSERT_THROW(tensor(make_fock(kBeam1, {3, 0}), make_fock({mode_h(2)}, {2})), std::invalid_argument);

    auto back = restrict_to(ab, kBeam1);
    ASSERT_EQ(back.amplitudes(), a.amplitudes());

    PureState entangled(kPair, {{OccupationVector{1, 0}, 1.0}, {OccupationVector{0, 1}, 1.0}});
    ASSERT_THROW(restrict_to(entangled, {mode_h(1)}), std::invalid_argument);
}

TEST(state_plumbing, pruning_and_null) {
    PureState tiny(kPair, {{OccupationVector{1, 0}, 1e-17}, {OccupationVector{0, 1}, 1.0}});
    ASSERT_EQ(tiny.amplitudes().size(), 1u);
    auto null = PureState::null_state(kPair);
    ASSERT_TRUE(null.is_null());
    ASSERT_THROW(null.normalized(), std::invalid_argument);
}
