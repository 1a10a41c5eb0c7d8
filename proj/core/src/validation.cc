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

#include "loqec/validation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

#include "loqec/optics.h"
#include "loqec/qubit_oracle.h"

namespace loqec {

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, std::string name, double tolerance, double budget, const std::function<double()> &body) {
    auto start = Clock::now();
    double measured = body();
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    bool ok = std::isfinite(measured) && measured <= tolerance && seconds < budget;
    return {id, std::move(name), measured, tolerance, seconds, budget, ok};
}

ExperimentConfig grid_config(double theta, double p, const TestHooks &hooks) {
    ExperimentConfig cfg;
    cfg.source.pump_angle = theta;
    cfg.p_flip = p;
    cfg.hooks = hooks;
    return cfg;
}

double worst_over_grid(const std::vector<double> &flips, const std::function<double(double, double)> &f) {
    double worst = 0;
    for (double theta : kValidationThetas) {
        for (double p : flips) {
            double d = f(theta, p);
            worst = std::isnan(d) ? d : std::max(worst, d);
            if (std::isnan(worst)) {
                return worst;
            }
        }
    }
    return worst;
}

const std::vector<double> kFine(kValidationFlips.begin(), kValidationFlips.end());
const std::vector<double> kCoarse(kValidationFlipsCoarse.begin(), kValidationFlipsCoarse.end());

double deviation_or_inf(const RunResult &r, double value) {
    return r.null_result ? INFINITY : value;
}

PureState random_state(size_t num_modes, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::bernoulli_distribution keep(0.6);
    ModeRegister modes;
    for (size_t k = 0; k < num_modes; k++) {
        modes.push_back({static_cast<int>(k / 2) + 1, k % 2 ? Polarization::V : Polarization::H});
    }
    PureState::AmplitudeMap amps;
    for (const auto &occ : enumerate_occupations(num_modes, kDefaultMaxPhotons)) {
        if (keep(rng)) {
            amps.emplace(occ, Amplitude{gauss(rng), gauss(rng)});
        }
    }
    if (amps.empty()) {
        amps.emplace(OccupationVector::vacuum(num_modes), 1.0);
    }
    return PureState(std::move(modes), std::move(amps)).normalized();
}

std::map<int, double> sector_weights(const PureState &s) {
    std::map<int, double> w;
    for (const auto &[occ, amp] : s.amplitudes()) {
        w[occ.total()] += std::norm(amp);
    }
    return w;
}

double sector_deviation(const PureState &before, const PureState &after) {
    auto a = sector_weights(before);
    auto b = sector_weights(after);
    double worst = 0;
    for (int n = 0; n <= kDefaultMaxPhotons; n++) {
        worst = std::max(worst, std::abs(a[n] - b[n]));
    }
    return worst;
}

double physics_sanity(std::uint64_t seed) {
    // Two photons meeting on a balanced splitter never leave in different ports.
    ModeRegister pair{mode_h(1), mode_h(2)};
    auto hom = apply_mode_transform(make_fock(pair, {1, 1}), bs_transform(0.5, pair[0], pair[1]));
    double worst = project_pattern(hom, DetectionPattern::exact(pair, OccupationVector{1, 1})).probability;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> mode_count(2, 4);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 100; trial++) {
        auto n = static_cast<size_t>(mode_count(rng));
        auto state = random_state(n, rng);
        ModeTransform u(state.modes(), random_unitary(static_cast<int>(n), rng()));
        ModeTransform v(state.modes(), random_unitary(static_cast<int>(n), rng()));
        worst = std::max({worst, u.unitarity_error(), v.unitarity_error()});

        auto once = apply_mode_transform(state, u);
        worst = std::max(worst, std::abs(once.norm_squared() - 1));
        worst = std::max(worst, sector_deviation(state, once));

        auto twice = apply_mode_transform(once, v);
        auto composed = apply_mode_transform(state, u.then(v));
        for (const auto &occ : enumerate_occupations(n, kDefaultMaxPhotons)) {
            worst = std::max(worst, std::abs(twice.amplitude(occ) - composed.amplitude(occ)));
        }

        // Ensemble trace over every full detector pattern.
        auto ensemble = decohere(WeightedEnsemble::pure(once), unit(rng), 1);
        double total = 0;
        for (const auto &occ : enumerate_occupations(n, kDefaultMaxPhotons)) {
            total += ensemble_project(ensemble, DetectionPattern::exact(state.modes(), occ)).probability;
        }
        worst = std::max(worst, std::abs(total - 1));
    }
    return worst;
}

}  // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult &c) { return c.passed; });
}

ValidationReport run_validation(const TestHooks &hooks) {
    ValidationReport report;
    auto &out = report.criteria;

    out.push_back(timed(1, "cnot-truth-table", 1e-9, 1.0, [&] {
        auto table = evaluate_truth_table(build_cnot_network(kDefaultCnotEta, {}, {hooks.flip_central_sign}));
        double worst = 0;
        for (const auto &row : table.rows) {
            int expected = 2 * row.control_in + (row.control_in ^ row.target_in);
            worst = std::max({worst, std::abs(row.success_probability - 1.0 / 9),
                              std::abs(row.output_probabilities[static_cast<size_t>(expected)] - 1)});
        }
        return worst;
    }));

    out.push_back(timed(2, "two-gate-success-rate", 1e-9, 5.0, [&] {
        return worst_over_grid(kCoarse, [&](double theta, double p) {
            return std::abs(run_experiment(grid_config(theta, p, hooks)).coincidence_probability - 1.0 / 81);
        });
    }));

    out.push_back(timed(3, "ancilla-syndrome-statistics", 1e-9, 5.0, [&] {
        return worst_over_grid(kFine, [&](double theta, double p) {
            auto r = run_experiment(grid_config(theta, p, hooks));
            return deviation_or_inf(r, std::abs(r.anc_p1 - p));
        });
    }));

    out.push_back(timed(4, "error-correction-fidelity", 1e-9, 5.0, [&] {
        return worst_over_grid(kFine, [&](double theta, double p) {
            auto r = run_experiment(grid_config(theta, p, hooks));
            return deviation_or_inf(
                r, std::max(std::abs(r.fidelity_corrected - 1), std::abs(r.fidelity_uncorrected - (1 - p))));
        });
    }));

    out.push_back(timed(5, "optical-oracle-equivalence", 1e-9, 10.0, [&] {
        return worst_over_grid(kFine, [&](double theta, double p) {
            return compare_to_oracle(grid_config(theta, p, hooks)).max();
        });
    }));

    out.push_back(timed(6, "source-efficiency-insensitivity", 1e-9, 10.0, [&] {
        return worst_over_grid(kFine, [&](double theta, double p) {
            auto ideal = run_experiment(grid_config(theta, p, hooks));
            auto cfg = grid_config(theta, p, hooks);
            cfg.source.include_vacuum = true;
            cfg.source.chi = 0.1;
            auto lossy = run_experiment(cfg);
            if (ideal.null_result || lossy.null_result) {
                return double(INFINITY);
            }
            double d = std::max({std::abs(ideal.anc_p0 - lossy.anc_p0), std::abs(ideal.anc_p1 - lossy.anc_p1),
                                 std::abs(ideal.fidelity_corrected - lossy.fidelity_corrected),
                                 std::abs(ideal.fidelity_uncorrected - lossy.fidelity_uncorrected)});
            for (size_t k = 0; k < 4; k++) {
                d = std::max({d, std::abs(ideal.basis_corrected[k] - lossy.basis_corrected[k]),
                              std::abs(ideal.basis_uncorrected[k] - lossy.basis_uncorrected[k])});
            }
            return d;
        });
    }));

    out.push_back(timed(7, "physics-sanity", 1e-12, 5.0, [&] { return physics_sanity(20260101); }));

    out.push_back(timed(8, "stabilizer-reading", 1e-12, 2.0, [&] {
        return worst_over_grid(kFine, [&](double theta, double p) {
            auto input = oracle::LogicalInput::from_pump_angle(theta);
            auto noisy = oracle::bit_flip_channel(oracle::encode(input), oracle::NoiseParam(p), oracle::Wire::Q2);
            auto zz = oracle::zz_weights(noisy);
            auto report = oracle::run_oracle_circuit(input, oracle::NoiseParam(p));
            auto optical = run_experiment(grid_config(theta, p, hooks));
            return deviation_or_inf(optical, std::max({std::abs(zz[0] - (1 - p)), std::abs(zz[1] - p),
                                                       std::abs(report.p_outcome1 - zz[1]),
                                                       std::abs(optical.anc_p1 - zz[1])}));
        });
    }));
    return report;
}

std::string format_criterion(const CriterionResult &c) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "[%s] %d %-32s measured=%.3e tolerance=%.0e time=%.3fs/%gs",
                  c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), c.measured, c.tolerance, c.seconds,
                  c.time_budget);
    return buf;
}

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd z(n, n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            z(r, c) = Amplitude{gauss(rng), gauss(rng)} / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; k++) {
        auto d = r(k, k);
        q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : Amplitude{1};
    }
    return q;
}

std::vector<OccupationVector> enumerate_occupations(size_t num_modes, int max_total) {
    std::vector<OccupationVector> out;
    std::vector<std::uint8_t> counts(num_modes, 0);
    std::function<void(size_t, int)> fill = [&](size_t k, int left) {
        if (k == num_modes) {
            out.emplace_back(counts);
            return;
        }
        for (int n = 0; n <= left; n++) {
            counts[k] = static_cast<std::uint8_t>(n);
            fill(k + 1, left - n);
        }
        counts[k] = 0;
    };
    fill(0, max_total);
    return out;
}

}  // namespace loqec
