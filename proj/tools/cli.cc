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

#include "cli.h"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "loqec/serialize.h"
#include "loqec/validation.h"

namespace loqec::cli {

namespace {

using nlohmann::json;

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &path) {
    if (!j.is_object()) {
        throw ConfigError(path + ": expected an object");
    }
    for (const auto &[key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError(path + "." + key + ": unknown field");
        }
    }
}

template <typename T>
T read(const json &j, const std::string &key, const std::string &path, const std::optional<T> &fallback) {
    auto it = j.find(key);
    if (it == j.end()) {
        if (!fallback) {
            throw ConfigError(path + "." + key + ": missing required field");
        }
        return *fallback;
    }
    if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) {
            throw ConfigError(path + "." + key + ": expected true or false");
        }
    } else if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) {
            throw ConfigError(path + "." + key + ": expected a number");
        }
    } else {
        if (!it->is_string()) {
            throw ConfigError(path + "." + key + ": expected a string");
        }
    }
    return it->get<T>();
}

template <typename T>
std::vector<T> read_axis(const json &j, const std::string &key, const std::string &path, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) {
        return {fallback};
    }
    if (!it->is_array()) {
        throw ConfigError(path + "." + key + ": expected an array of values");
    }
    std::vector<T> values;
    for (size_t k = 0; k < it->size(); k++) {
        const auto &v = (*it)[k];
        bool ok = std::is_same_v<T, bool> ? v.is_boolean() : v.is_number();
        if (!ok) {
            throw ConfigError(path + "." + key + "[" + std::to_string(k) + "]: wrong value type");
        }
        values.push_back(v.get<T>());
    }
    return values;
}

json load_json(const std::filesystem::path &file, const std::string &what) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError(what + ": cannot open '" + file.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &ex) {
        throw ConfigError(what + ": malformed JSON in '" + file.string() + "': " + ex.what());
    }
}

ExperimentConfig parse_config_fields(const json &j, const std::filesystem::path &base_dir, bool strict_required,
                                     const std::string &path) {
    check_keys(j, {"source", "p_flip", "correction", "cnot_eta", "model_trigger", "network"}, path);
    ExperimentConfig cfg;
    auto optional_if = [&](auto value) {
        return strict_required ? std::nullopt : std::optional(value);
    };

    json source = j.contains("source") ? j.at("source") : json::object();
    if (strict_required && !j.contains("source")) {
        throw ConfigError(path + ".source: missing required field");
    }
    check_keys(source, {"theta", "chi", "include_vacuum"}, path + ".source");
    cfg.source.pump_angle = read<double>(source, "theta", path + ".source", optional_if(0.0));
    cfg.source.chi = read<double>(source, "chi", path + ".source", std::optional(cfg.source.chi));
    cfg.source.include_vacuum = read<bool>(source, "include_vacuum", path + ".source", std::optional(false));

    cfg.p_flip = read<double>(j, "p_flip", path, optional_if(0.0));
    cfg.correction_enabled = read<bool>(j, "correction", path, std::optional(true));
    cfg.cnot_eta = read<double>(j, "cnot_eta", path, std::optional(kDefaultCnotEta));
    cfg.model_trigger = read<bool>(j, "model_trigger", path, std::optional(true));
    if (j.contains("network")) {
        auto file = std::filesystem::path(read<std::string>(j, "network", path, std::nullopt));
        if (file.is_relative()) {
            file = base_dir / file;
        }
        try {
            cfg.network = network_from_json(load_json(file, path + ".network"));
        } catch (const std::invalid_argument &ex) {
            throw ConfigError(path + ".network: " + ex.what());
        }
    }

    if (!(cfg.p_flip >= 0 && cfg.p_flip <= 1)) {
        throw ConfigError(path + ".p_flip: must lie in [0, 1]");
    }
    if (!(cfg.cnot_eta > 0 && cfg.cnot_eta < 1)) {
        throw ConfigError(path + ".cnot_eta: must lie in (0, 1)");
    }
    if (!(cfg.source.chi > 0)) {
        throw ConfigError(path + ".source.chi: must be positive");
    }
    return cfg;
}

std::string ket_label(int index) {
    return "|" + std::to_string(index >> 1) + std::to_string(index & 1) + ">";
}

}  // namespace

ExperimentConfig parse_run_config(const nlohmann::json &j, const std::filesystem::path &base_dir) {
    return parse_config_fields(j, base_dir, true, "config");
}

SweepGrid parse_sweep_config(const nlohmann::json &j, const std::filesystem::path &base_dir) {
    check_keys(j, {"base", "grid"}, "config");
    SweepGrid grid;
    grid.base = parse_config_fields(j.contains("base") ? j.at("base") : json::object(), base_dir, false, "config.base");
    if (!j.contains("grid")) {
        throw ConfigError("config.grid: missing required field");
    }
    const auto &axes = j.at("grid");
    check_keys(axes, {"theta", "p_flip", "chi", "correction"}, "config.grid");
    if (axes.empty()) {
        return grid;
    }
    grid.theta = read_axis<double>(axes, "theta", "config.grid", grid.base.source.pump_angle);
    grid.p_flip = read_axis<double>(axes, "p_flip", "config.grid", grid.base.p_flip);
    grid.chi = read_axis<double>(axes, "chi", "config.grid", grid.base.source.chi);
    grid.correction = read_axis<bool>(axes, "correction", "config.grid", grid.base.correction_enabled);
    return grid;
}

int cmd_truth_table(double eta, Format format, std::ostream &out, std::ostream &err,
                    const std::vector<Element> &network) {
    CnotNetwork gate;
    try {
        if (network.empty()) {
            gate = build_cnot_network(eta);
        } else {
            gate.elements = network;
        }
    } catch (const std::invalid_argument &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitConfigError;
    }
    auto table = evaluate_truth_table(gate);
    const char *status = table.is_cnot() ? "CNOT" : "NON-CNOT";

    if (format == Format::Json) {
        json rows = json::array();
        for (const auto &row : table.rows) {
            int in = 2 * row.control_in + row.target_in;
            rows.push_back({
                {"input", ket_label(in)},
                {"output", ket_label(row.most_likely_output)},
                {"output_prob", round_probability(row.output_probabilities[static_cast<size_t>(row.most_likely_output)])},
                {"success_prob", round_probability(row.success_probability)},
            });
        }
        out << json{{"eta", round_real(network.empty() ? eta : table.eta)}, {"status", status}, {"rows", rows}}.dump(2)
            << "\n";
    } else {
        out << "input,output,output_prob,success_prob\n";
        for (const auto &row : table.rows) {
            int in = 2 * row.control_in + row.target_in;
            out << ket_label(in) << "," << ket_label(row.most_likely_output) << ","
                << format_real(round_probability(row.output_probabilities[static_cast<size_t>(row.most_likely_output)]))
                << "," << format_real(round_probability(row.success_probability)) << "\n";
        }
        out << "# status: " << status << "\n";
    }
    return kExitOk;
}

int cmd_run(const ExperimentConfig &cfg, Format format, std::ostream &out) {
    auto result = run_experiment(cfg);
    if (format == Format::Json) {
        out << run_to_json(cfg, result).dump(2) << "\n";
    } else {
        out << kRunCsvHeader << "\n" << run_csv_row(cfg, result) << "\n";
        if (result.null_result) {
            out << "# null result: no accepted coincidence pattern\n";
        }
    }
    return kExitOk;
}

int cmd_sweep(const SweepGrid &grid, Format format, std::ostream &out, std::ostream &err) {
    auto rows = sweep(grid);
    size_t failures = 0;
    json list = json::array();
    if (format == Format::Csv) {
        out << kRunCsvHeader << "\n";
    }
    for (size_t k = 0; k < rows.size(); k++) {
        const auto &row = rows[k];
        if (row.result) {
            if (format == Format::Json) {
                list.push_back(run_to_json(row.config, *row.result));
            } else {
                out << run_csv_row(row.config, *row.result) << "\n";
            }
            continue;
        }
        failures++;
        if (format == Format::Json) {
            list.push_back({{"theta", round_real(row.config.source.pump_angle)},
                            {"p_flip", round_real(row.config.p_flip)},
                            {"chi", round_real(row.config.source.chi)},
                            {"correction", row.config.correction_enabled},
                            {"error", row.error}});
        } else {
            out << "# row " << k << " error: " << row.error << "\n";
        }
    }
    if (format == Format::Json) {
        out << json{{"rows", list}}.dump(2) << "\n";
    }
    if (!rows.empty() && failures == rows.size()) {
        err << "error: every sweep row failed\n";
        return kExitConfigError;
    }
    return kExitOk;
}

int cmd_validate(Format format, std::ostream &out, const TestHooks &hooks) {
    auto report = run_validation(hooks);
    if (format == Format::Json) {
        json list = json::array();
        for (const auto &c : report.criteria) {
            list.push_back({{"id", c.id},
                            {"name", c.name},
                            {"measured", c.measured},
                            {"tolerance", c.tolerance},
                            {"seconds", c.seconds},
                            {"time_budget", c.time_budget},
                            {"passed", c.passed}});
        }
        out << json{{"criteria", list}, {"passed", report.all_passed()}}.dump(2) << "\n";
    } else {
        for (const auto &c : report.criteria) {
            out << format_criterion(c) << "\n";
        }
        out << (report.all_passed() ? "all criteria passed" : "validation FAILED") << "\n";
    }
    return report.all_passed() ? kExitOk : kExitValidationFailure;
}

int run_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Linear-optics bit-flip error-correction simulator"};
    app.require_subcommand(1);

    std::string format_name = "csv";
    std::string out_path;
    std::string config_path;
    std::string network_path;
    std::string network_out_path;
    double eta = kDefaultCnotEta;
    long long seed = 0;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "Write output to this file instead of stdout");
        sub->add_option("--seed", seed, "Reserved; the engine is deterministic");
    };

    auto *truth = app.add_subcommand("truth-table", "Post-selected truth table of one coincidence-basis CNOT");
    add_common(truth);
    truth->add_option("--eta", eta, "Splitter reflectivity, in (0, 1)");
    truth->add_option("--network", network_path, "Evaluate the CNOT elements in this network file instead");
    truth->add_option("--network-out", network_out_path, "Write the evaluated network file here");

    auto *run = app.add_subcommand("run", "Run one experiment configuration");
    add_common(run);
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--network-out", network_out_path, "Write the full element list of the run here");

    auto *sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--config", config_path, "Sweep config (JSON)")->required();

    auto *validate = app.add_subcommand("validate", "Run the acceptance criteria");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << "\n";
        return kExitConfigError;
    }

    Format format = format_name == "json" ? Format::Json : Format::Csv;
    std::ostringstream buffer;
    int code = kExitOk;
    try {
        auto write_network = [&](const std::vector<Element> &elements) {
            if (network_out_path.empty()) {
                return;
            }
            std::ofstream f(network_out_path);
            if (!f) {
                throw ConfigError("--network-out: cannot write '" + network_out_path + "'");
            }
            f << network_to_json(elements).dump(2) << "\n";
        };

        if (truth->parsed()) {
            std::vector<Element> network;
            if (!network_path.empty()) {
                try {
                    network = network_from_json(load_json(network_path, "--network"));
                } catch (const std::invalid_argument &ex) {
                    throw ConfigError(ex.what());
                }
            }
            code = cmd_truth_table(eta, format, buffer, err, network);
            if (code == kExitOk) {
                write_network(network.empty() ? build_cnot_network(eta).elements : network);
            }
        } else if (run->parsed()) {
            auto file = std::filesystem::path(config_path);
            auto cfg = parse_run_config(load_json(file, "--config"), file.parent_path());
            write_network(cfg.network.empty() ? experiment_elements(cfg) : cfg.network);
            code = cmd_run(cfg, format, buffer);
        } else if (sweep_cmd->parsed()) {
            auto file = std::filesystem::path(config_path);
            code = cmd_sweep(parse_sweep_config(load_json(file, "--config"), file.parent_path()), format, buffer, err);
        } else {
            code = cmd_validate(format, buffer);
        }
    } catch (const ConfigError &ex) {
        err << "config error: " << ex.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument &ex) {
        err << "config error: " << ex.what() << "\n";
        return kExitConfigError;
    }

    if (out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << out_path << "'\n";
            return kExitConfigError;
        }
        f << buffer.str();
    }
    return code;
}

}  // namespace loqec::cli
