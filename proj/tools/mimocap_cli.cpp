// SPDX-License-Identifier: Apache-2.0
//
// mimocap: reproduce the reference capacity tables and figure data series
// for coherent IID Rayleigh MIMO channels.
//
// Exit codes: 0 success, 1 computation or verification failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimocap/reports.hpp"

#ifndef MIMOCAP_DATA_DIR
#define MIMOCAP_DATA_DIR "data/golden"
#endif

namespace {

int emit(const mimocap::Report& report, mimocap::ReportRequest::Format format,
         const std::string& out_path) {
    std::string payload = format == mimocap::ReportRequest::Format::json
                              ? mimocap::to_json(report)
                              : mimocap::to_csv(report);
    if (out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
    }
    out << payload;
    return 0;
}

void load_tolerance_config(const std::string& path, mimocap::VerifyOptions& options) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) +
                                                       ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "golden_tol")
                options.golden_tol = std::stod(value);
            else if (key == "mc_tol")
                options.mc_tol = std::stod(value);
            else
                throw CLI::ValidationError("--config", path + ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("--config", path + ": bad value for '" + key + "'");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ergodic capacity, waterfilling, on-off rates, and outage bounds for "
                 "coherent IID Rayleigh MIMO channels"};
    app.require_subcommand(0, 1);

    bool list_flag = false;
    app.add_flag("--list", list_flag, "List every report target and exit");

    std::string format_name = "csv";
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_name, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };
    std::string out_path;
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
    };

    mimocap::McConfig mc;
    auto add_mc = [&](CLI::App* cmd) {
        cmd->add_option("--samples", mc.samples, "Monte Carlo sample count")
            ->capture_default_str();
        cmd->add_option("--seed", mc.seed, "Monte Carlo seed")
            ->envname("MIMOCAP_SEED")
            ->capture_default_str();
        cmd->add_option("--workers", mc.workers, "Monte Carlo worker threads")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    auto* table_cmd = app.add_subcommand("table", "Reproduce one reference table (I..XIX)");
    std::string table_id;
    bool no_mc = false;
    table_cmd->add_option("id", table_id, "Table number, roman or decimal")->required();
    table_cmd->add_flag("--no-mc", no_mc, "Skip the Monte Carlo columns");
    add_mc(table_cmd);
    add_format(table_cmd);
    add_out(table_cmd);

    auto* figure_cmd = app.add_subcommand("figure", "Emit one figure's data series (1..9)");
    int figure_index = 0;
    std::vector<double> snr_db;
    figure_cmd->add_option("index", figure_index, "Figure number")->required();
    figure_cmd->add_option("--snr-db", snr_db, "SNR grid in dB (repeatable)");
    add_format(figure_cmd);
    add_out(figure_cmd);

    auto* custom_cmd = app.add_subcommand("custom", "Evaluate chosen quantities on a grid");
    int nr = 0, nt = 0;
    std::vector<std::string> quantities;
    custom_cmd->add_option("--nr", nr, "Receive antennas")->required();
    custom_cmd->add_option("--nt", nt, "Transmit antennas")->required();
    custom_cmd->add_option("--snr-db", snr_db, "SNR grid in dB (repeatable)")->required();
    custom_cmd->add_option(
        "--quantity", quantities,
        "Quantities (repeatable): csit no_csit high_snr onoff lambda0 gamma0 outage p1 "
        "p2min mc_csit mc_no_csit mc_onoff mc_outage");
    add_mc(custom_cmd);
    add_format(custom_cmd);
    add_out(custom_cmd);

    auto* verify_cmd =
        app.add_subcommand("verify", "Regenerate all tables and check them against the "
                                     "golden files and invariants");
    mimocap::VerifyOptions vopts;
    vopts.data_dir = MIMOCAP_DATA_DIR;
    std::string config_path;
    verify_cmd->add_option("--data-dir", vopts.data_dir, "Golden CSV directory")
        ->capture_default_str();
    verify_cmd->add_option("--out-dir", vopts.out_dir,
                           "Write the regenerated CSVs to this directory");
    verify_cmd->add_option("--samples", vopts.samples, "Monte Carlo sample count")
        ->capture_default_str();
    verify_cmd->add_option("--seed", vopts.seed, "Monte Carlo seed")
        ->envname("MIMOCAP_SEED")
        ->capture_default_str();
    verify_cmd->add_option("--workers", vopts.workers, "Monte Carlo worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--golden-tol", vopts.golden_tol,
                           "Tolerance for numerical columns vs golden values")
        ->capture_default_str();
    verify_cmd->add_option("--mc-tol", vopts.mc_tol,
                           "Tolerance for Monte Carlo column cross-checks")
        ->capture_default_str();
    bool skip_mc = false, skip_invariants = false;
    verify_cmd->add_flag("--no-mc", skip_mc, "Skip Monte Carlo columns and their checks");
    verify_cmd->add_flag("--no-invariants", skip_invariants, "Skip the invariant battery");
    verify_cmd->add_option("--config", config_path,
                           "key=value file overriding golden_tol / mc_tol");

    auto* list_cmd = app.add_subcommand("list", "List every report target");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list_flag || app.got_subcommand(list_cmd)) {
        for (const auto& line : mimocap::list_targets()) std::cout << line << "\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
    }

    try {
        mimocap::ReportRequest req;
        req.mc = mc;
        req.format = format_name == "json" ? mimocap::ReportRequest::Format::json
                                           : mimocap::ReportRequest::Format::csv;

        if (app.got_subcommand(table_cmd)) {
            int index = mimocap::parse_table_id(table_id);
            if (index < 0) {
                std::cerr << "error: unknown table '" << table_id << "' (expected I..XIX)\n";
                return 2;
            }
            req.kind = mimocap::ReportRequest::Kind::table;
            req.index = index;
            req.with_mc = !no_mc;
            return emit(mimocap::run_report(req), req.format, out_path);
        }
        if (app.got_subcommand(figure_cmd)) {
            req.kind = mimocap::ReportRequest::Kind::figure;
            req.index = figure_index;
            req.snr_db = snr_db;
            req.with_mc = false;
            return emit(mimocap::run_report(req), req.format, out_path);
        }
        if (app.got_subcommand(custom_cmd)) {
            req.kind = mimocap::ReportRequest::Kind::custom;
            req.n_r = nr;
            req.n_t = nt;
            req.snr_db = snr_db;
            req.quantities = quantities;
            return emit(mimocap::run_report(req), req.format, out_path);
        }
        if (app.got_subcommand(verify_cmd)) {
            if (!config_path.empty()) load_tolerance_config(config_path, vopts);
            vopts.run_mc = !skip_mc;
            vopts.run_invariants = !skip_invariants;
            mimocap::VerifyResult result = mimocap::run_verify(vopts);
            std::cout << result.summary;
            if (!result.failures.empty()) {
                std::cout << "failing checks:\n";
                for (const auto& f : result.failures) std::cout << "  " << f << "\n";
            }
            std::cout << (result.pass ? "verify: PASS" : "verify: FAIL") << "\n";
            return result.pass ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
