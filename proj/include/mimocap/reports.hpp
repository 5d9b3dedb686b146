// SPDX-License-Identifier: Apache-2.0
//
// Report generation: the reference tables and figure data series, CSV/JSON
// serialization, and the golden-file verification suite.

#ifndef MIMOCAP_REPORTS_HPP
#define MIMOCAP_REPORTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimocap/monte_carlo.hpp"

namespace mimocap {

inline constexpr const char* kToolVersion = "1.0.0";

struct ReportRequest {
    enum class Kind { table, figure, custom };
    enum class Format { csv, json };

    Kind kind = Kind::table;
    int index = 1;  // table 1..19 or figure 1..9

    // custom reports and per-target overrides
    std::optional<int> n_r;
    std::optional<int> n_t;
    std::vector<double> snr_db;            // custom grid; empty = target default
    std::vector<std::string> quantities;   // custom column selection

    McConfig mc;
    bool with_mc = true;  // table reports: include Monte Carlo columns

    Format format = Format::csv;
};

struct Report {
    std::string target;  // e.g. "table IV", "figure 7"
    std::string title;
    std::vector<std::string> columns;
    std::vector<int> decimals;  // per-column CSV precision (<0: shortest)
    std::vector<std::vector<double>> rows;
    // When nonempty, a "Scheme" column's cell values index into this list.
    std::vector<std::string> scheme_labels;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    bool used_mc = false;
};

// One line per report target, for --list.
std::vector<std::string> list_targets();

// Accepts a table id as a roman numeral ("XV") or decimal ("15").
// Returns 1..19, or -1 if unrecognized.
int parse_table_id(const std::string& id);

// Builds the requested report. Throws std::invalid_argument for unknown
// targets or missing required overrides (figure 4 needs an explicit SNR
// grid; its reference plot does not state one).
Report run_report(const ReportRequest& req);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

struct VerifyOptions {
    std::string data_dir;       // directory of golden table CSVs
    std::string out_dir;        // produced CSVs are written here (empty: skip)
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    int workers = 4;
    double golden_tol = 5e-4;   // |numerical - golden| per cell
    double mc_tol = 0.06;       // |MC - numerical| per cell (0.02 at 1e6 samples)
    bool run_mc = true;
    bool run_invariants = true;
};

struct VerifyResult {
    bool pass = false;
    std::string summary;             // human-readable, one line per table
    std::vector<std::string> failures;
};

// Regenerates all 19 tables, compares numerical columns against the
// golden files and Monte Carlo columns against the numerical ones, and
// runs a battery of closed-form invariant checks.
VerifyResult run_verify(const VerifyOptions& options);

}  // namespace mimocap

#endif
