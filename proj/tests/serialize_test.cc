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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "loqec/validation.h"

using namespace loqec;
using nlohmann::json;

namespace {

std::string error_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const std::invalid_argument &ex) {
        return ex.what();
    }
    return "";
}

}  // namespace

TEST(state_json, round_trip_random_states) {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; trial++) {
        ModeRegister modes;
        for (int k = 0; k < 2 + trial % 3; k++) {
            modes.push_back({k + 1, k % 2 ? Polarization::V : Polarization::H});
        }
        PureState::AmplitudeMap amps;
        for (const auto &occ : enumerate_occupations(modes.size(), 3)) {
            amps.emplace(occ, Amplitude{g(rng), g(rng)});
        }
        PureState s(modes, std::move(amps));
        auto j = state_to_json(s);
        auto back = state_from_json(json::parse(j.dump()));
        ASSERT_EQ(back.modes(), s.modes());
        ASSERT_EQ(back.amplitudes(), s.amplitudes());
    }
}

TEST(state_json, format) {
    auto j = state_to_json(make_fock({mode_h(1), mode_v(2)}, {0, 1}));
    ASSERT_EQ(j["register"], json({"1:H", "2:V"}));
    ASSERT_EQ(j["amplitudes"][0]["counts"], json({0, 1}));
    ASSERT_EQ(j["amplitudes"][0]["re"], 1.0);
    ASSERT_EQ(j["amplitudes"][0]["im"], 0.0);
}

TEST(state_json, strict_errors) {
    auto good = state_to_json(make_fock({mode_h(1)}, {1}));
    auto extra = good;
    extra["phase"] = 0;
    ASSERT_NE(error_of([&] { state_from_json(extra); }).find("state.phase"), std::string::npos);

    auto missing = good;
    missing.erase("register");
    ASSERT_NE(error_of([&] { state_from_json(missing); }).find("state.register"), std::string::npos);

    auto bad_count = good;
    bad_count["amplitudes"][0]["counts"] = json({-1});
    ASSERT_NE(error_of([&] { state_from_json(bad_count); }).find("counts"), std::string::npos);

    auto bad_amp = good;
    bad_amp["amplitudes"][0]["re"] = "one";
    ASSERT_NE(error_of([&] { state_from_json(bad_amp); }).find(".re"), std::string::npos);

    auto over_budget = good;
    over_budget["amplitudes"][0]["counts"] = json({5});
    ASSERT_FALSE(error_of([&] { state_from_json(over_budget); }).empty());
}

TEST(network_json, round_trip) {
    ExperimentConfig cfg;
    cfg.p_flip = 0.3;
    auto elements = experiment_elements(cfg);
    elements.push_back(make_pbs(ElementKind::PbsVH, port::kQ1, port::kQ2));
    auto back = network_from_json(json::parse(network_to_json(elements).dump()));
    ASSERT_EQ(back, elements);
}

TEST(network_json, element_format) {
    auto j = element_to_json(make_bs(0.25, mode_v(port::kAncilla), mode_v(port::kQ1)));
    ASSERT_EQ(j["kind"], "BS");
    ASSERT_EQ(j["params"]["eta"], 0.25);
    ASSERT_EQ(j["ports"], json({"anc:V", "q1:V"}));

    auto p = element_to_json(make_pockels(port::kQ2, "anc:V"));
    ASSERT_EQ(p["kind"], "POCKELS_X");
    ASSERT_EQ(p["params"]["condition"], "anc:V");
}

TEST(network_json, errors_name_the_field) {
    auto bad_kind = json::parse(R"({"elements": [{"kind": "LENS", "params": {}, "ports": ["q1:H", "q1:V"]}]})");
    ASSERT_NE(error_of([&] { network_from_json(bad_kind); }).find("network.elements[0].kind"), std::string::npos);

    auto bad_port = json::parse(R"({"elements": [{"kind": "HWP", "params": {"theta": 0.1}, "ports": ["q9:H", "q1:V"]}]})");
    ASSERT_NE(error_of([&] { network_from_json(bad_port); }).find("ports[0]"), std::string::npos);

    auto extra = json::parse(R"({"elements": [{"kind": "HWP", "params": {"theta": 0.1, "eta": 1}, "ports": ["q1:H", "q1:V"]}]})");
    ASSERT_NE(error_of([&] { network_from_json(extra); }).find("params.eta"), std::string::npos);

    auto range = json::parse(R"({"elements": [{"kind": "BS", "params": {"eta": 2}, "ports": ["q1:H", "q2:H"]}]})");
    ASSERT_FALSE(error_of([&] { network_from_json(range); }).empty());

    ASSERT_FALSE(error_of([&] { network_from_json(json::parse(R"({"elements": [], "extra": 1})")); }).empty());
}

TEST(numbers, formatting) {
    ASSERT_EQ(format_real(1.0 / 3), "0.333333333333");
    ASSERT_EQ(format_real(-0.0), "0");
    ASSERT_EQ(format_real(1.0 / 81), "0.0123456790123");
    ASSERT_EQ(round_probability(1 + 1e-15), 1);
    ASSERT_EQ(round_probability(-1e-17), 0);
    ASSERT_EQ(round_real(0.1 + 0.2), 0.3);
}

TEST(run_rows, csv_and_json_agree) {
    ExperimentConfig cfg;
    cfg.source.pump_angle = std::numbers::pi / 4;
    cfg.p_flip = 0.5;
    auto r = run_experiment(cfg);
    auto row = run_csv_row(cfg, r);
    auto j = run_to_json(cfg, r);
    ASSERT_EQ(row, "0.785398163397,0.5,0.1,true,0.0123456790123,0.5,0.5,1,0.5");
    ASSERT_EQ(j["correction"], true);
    ASSERT_NEAR(j["fid_uncorrected"].get<double>(), 0.5, 1e-12);
    ASSERT_NEAR(j["coinc_prob"].get<double>(), 1.0 / 81, 1e-12);
    ASSERT_FALSE(j.contains("null_result"));

    auto report = oracle_report_to_json(oracle::run_oracle_circuit(oracle::LogicalInput::make(0.6, 0.8), oracle::NoiseParam(0.3)));
    ASSERT_EQ(report["alpha"], 0.6);
    ASSERT_EQ(report["p"], 0.3);
    ASSERT_NEAR(report["fidelity_uncorrected"].get<double>(), 0.7, 1e-12);
}
