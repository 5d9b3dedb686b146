// SPDX-License-Identifier: Apache-2.0

#include "mimocap/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mimocap/numerics.hpp"
#include "mimocap/outage.hpp"
#include "mimocap/spectrum.hpp"

namespace mimocap {

namespace {

const char* const kRoman[20] = {"",    "I",    "II",  "III", "IV",  "V",  "VI",
                                "VII", "VIII", "IX",  "X",   "XI",  "XII", "XIII",
                                "XIV", "XV",   "XVI", "XVII", "XVIII", "XIX"};

enum class TableType { csit, no_csit, onoff };

struct TableDef {
    int index;
    TableType type;
    AntennaPair pair;
    std::vector<double> snrs;
};

std::vector<double> capacity_grid() { return {-15, -10, -5, 0, 5, 10}; }
std::vector<double> onoff_grid() { return {0, -5, -10, -15, -20, -25, -30, -35, -40}; }

const std::vector<TableDef>& table_defs() {
    static const std::vector<TableDef> defs = [] {
        std::vector<TableDef> d;
        const int nts[5] = {4, 6, 8, 10, 12};
        for (int i = 0; i < 5; ++i)
            d.push_back({1 + i, TableType::csit, {4, nts[i]}, capacity_grid()});
        for (int i = 0; i < 5; ++i)
            d.push_back({6 + i, TableType::no_csit, {4, nts[i]}, capacity_grid()});
        const int nrs[4] = {6, 8, 10, 12};
        for (int i = 0; i < 4; ++i)
            d.push_back({11 + i, TableType::no_csit, {nrs[i], 4}, capacity_grid()});
        for (int i = 0; i < 5; ++i)
            d.push_back({15 + i, TableType::onoff, {4, nts[i]}, onoff_grid()});
        return d;
    }();
    return defs;
}

int roman_to_index(const std::string& roman) {
    for (int i = 1; i <= 19; ++i)
        if (roman == kRoman[i]) return i;
    return -1;
}

std::string pair_title(const AntennaPair& pair) {
    return "N_R = " + std::to_string(pair.n_r) + ", N_T = " + std::to_string(pair.n_t);
}

std::string format_number(double v, int decimals) {
    if (std::isnan(v)) return "";
    char buf[64];
    if (decimals >= 0) {
        std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    } else if (v == std::floor(v) && std::fabs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
    }
    return buf;
}

// ---- table reports -------------------------------------------------------

Report build_capacity_table(const TableDef& def, const ReportRequest& req) {
    Report rep;
    rep.target = std::string("table ") + kRoman[def.index];
    rep.title = pair_title(def.pair);
    const bool csit = def.type == TableType::csit;

    std::vector<ChannelConfig> cfgs;
    for (double s : def.snrs) cfgs.push_back(ChannelConfig::from_snr_db(def.pair, s));

    std::vector<double> numerical(def.snrs.size());
    std::vector<double> cutoffs(def.snrs.size());
    {
        std::optional<double> hint;
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            if (csit) {
                auto wf = solve_cutoff(cfgs[i], hint);
                hint = wf.lambda0;
                cutoffs[i] = wf.lambda0;
                numerical[i] = capacity_csit(cfgs[i], wf).value;
            } else {
                numerical[i] = capacity_no_csit(cfgs[i]).value;
            }
        }
    }

    std::vector<double> mc_vals;
    if (req.with_mc) {
        std::vector<DrawFunctional> fns;
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            if (csit) {
                double l0 = cutoffs[i];
                fns.push_back([l0](const std::vector<double>& eigs) {
                    double nats = 0.0;
                    for (double l : eigs)
                        if (l > l0) nats += std::log(l / l0);
                    return nats / 0.6931471805599453;
                });
            } else {
                double gain = cfgs[i].power / def.pair.n_t;
                fns.push_back([gain](const std::vector<double>& eigs) {
                    double nats = 0.0;
                    for (double l : eigs) nats += std::log1p(gain * l);
                    return nats / 0.6931471805599453;
                });
            }
        }
        auto est = mc_batch(def.pair, req.mc, fns);
        for (const auto& e : est) mc_vals.push_back(e.mean);
        rep.used_mc = true;
        rep.seed = req.mc.seed;
        rep.samples = req.mc.samples;
    }

    if (req.with_mc) {
        rep.columns = {"SNR (dB)", "Capacity (Monte Carlo)", "Capacity (Numerical)"};
        rep.decimals = {-1, 6, 6};
        for (std::size_t i = 0; i < def.snrs.size(); ++i)
            rep.rows.push_back({def.snrs[i], mc_vals[i], numerical[i]});
    } else {
        rep.columns = {"SNR (dB)", "Capacity (Numerical)"};
        rep.decimals = {-1, 6};
        for (std::size_t i = 0; i < def.snrs.size(); ++i)
            rep.rows.push_back({def.snrs[i], numerical[i]});
    }
    return rep;
}

Report build_onoff_table(const TableDef& def, const ReportRequest& req) {
    Report rep;
    rep.target = std::string("table ") + kRoman[def.index];
    rep.title = pair_title(def.pair);

    const std::size_t count = def.snrs.size();
    std::vector<ChannelConfig> cfgs;
    for (double s : def.snrs) cfgs.push_back(ChannelConfig::from_snr_db(def.pair, s));

    std::vector<double> onoff_num(count), cutoffs(count), p0s(count);
    {
        std::optional<double> hint;
        for (std::size_t i = 0; i < count; ++i) {
            auto wf = solve_cutoff(cfgs[i], hint);
            hint = wf.lambda0;
            cutoffs[i] = wf.lambda0;
            double q = 1.0 - lambda_max_cdf(def.pair, wf.lambda0);
            p0s[i] = cfgs[i].power / q;
            onoff_num[i] = onoff_rate(cfgs[i], wf).value;
        }
    }

    std::vector<double> waterfill_mc(count), onoff_mc(count);
    if (req.with_mc) {
        std::vector<DrawFunctional> fns;
        for (std::size_t i = 0; i < count; ++i) {
            double l0 = cutoffs[i];
            fns.push_back([l0](const std::vector<double>& eigs) {
                double nats = 0.0;
                for (double l : eigs)
                    if (l > l0) nats += std::log(l / l0);
                return nats / 0.6931471805599453;
            });
        }
        for (std::size_t i = 0; i < count; ++i) {
            double tau = cutoffs[i];
            double p0 = p0s[i];
            fns.push_back([tau, p0](const std::vector<double>& eigs) {
                double lmax = eigs.back();
                return lmax > tau ? std::log1p(lmax * p0) / 0.6931471805599453 : 0.0;
            });
        }
        auto est = mc_batch(def.pair, req.mc, fns);
        for (std::size_t i = 0; i < count; ++i) {
            waterfill_mc[i] = est[i].mean;
            onoff_mc[i] = est[count + i].mean;
        }
        rep.used_mc = true;
        rep.seed = req.mc.seed;
        rep.samples = req.mc.samples;
    }

    if (req.with_mc) {
        rep.columns = {"SNR (dB)", "Capacity (Waterfilling)", "On-off (Monte-carlo)",
                       "On-off (numerical)"};
        rep.decimals = {-1, 6, 6, 9};
        for (std::size_t i = 0; i < count; ++i)
            rep.rows.push_back({def.snrs[i], waterfill_mc[i], onoff_mc[i], onoff_num[i]});
    } else {
        rep.columns = {"SNR (dB)", "On-off (numerical)"};
        rep.decimals = {-1, 9};
        for (std::size_t i = 0; i < count; ++i)
            rep.rows.push_back({def.snrs[i], onoff_num[i]});
    }
    return rep;
}

// ---- figure reports ------------------------------------------------------

std::vector<double> figure_snr_range(double lo, double hi, double step) {
    std::vector<double> out;
    for (double s = lo; s <= hi + 1e-9; s += step) out.push_back(s);
    return out;
}

Report build_capacity_figure(int index, const ReportRequest& req) {
    // Figure 1: N_T = 4 fixed, N_R swept; figure 2: N_R = 4 fixed.
    Report rep;
    rep.target = "figure " + std::to_string(index);
    rep.title = index == 1 ? "Ergodic capacity vs SNR, N_T = 4 fixed"
                           : "Ergodic capacity vs SNR, N_R = 4 fixed";
    rep.columns = {"SNR (dB)", "N_R", "N_T", "Scheme", "Rate (bits/s/Hz)"};
    rep.decimals = {-1, -1, -1, -1, 6};
    std::vector<double> snrs = req.snr_db.empty() ? capacity_grid() : req.snr_db;
    const int sweep_counts[5] = {4, 6, 8, 10, 12};
    for (int count : sweep_counts) {
        AntennaPair pair = index == 1 ? AntennaPair{count, 4} : AntennaPair{4, count};
        std::vector<ChannelConfig> cfgs;
        for (double s : snrs) cfgs.push_back(ChannelConfig::from_snr_db(pair, s));
        auto with = sweep(cfgs, Scheme::csit_waterfill);
        auto without = sweep(cfgs, Scheme::no_csit);
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            if (!with[i].point)
                throw std::runtime_error("figure " + std::to_string(index) + ": " +
                                         with[i].error);
            if (!without[i].point)
                throw std::runtime_error("figure " + std::to_string(index) + ": " +
                                         without[i].error);
            rep.rows.push_back({snrs[i], double(pair.n_r), double(pair.n_t), 0.0,
                                with[i].point->value});
            rep.rows.push_back({snrs[i], double(pair.n_r), double(pair.n_t), 1.0,
                                without[i].point->value});
        }
    }
    rep.scheme_labels = {"csit_waterfill", "no_csit"};
    return rep;
}

Report build_onoff_figure(const ReportRequest& req) {
    Report rep;
    rep.target = "figure 3";
    rep.title = "Low-SNR rates with CSIT, N_R = 4 fixed: on-off vs waterfilling";
    rep.columns = {"SNR (dB)", "N_T", "Scheme", "Rate (bits/s/Hz)"};
    rep.decimals = {-1, -1, -1, 9};
    std::vector<double> snrs = req.snr_db.empty() ? onoff_grid() : req.snr_db;
    for (int nt : {4, 6, 8, 10, 12}) {
        AntennaPair pair{4, nt};
        std::vector<ChannelConfig> cfgs;
        for (double s : snrs) cfgs.push_back(ChannelConfig::from_snr_db(pair, s));
        auto water = sweep(cfgs, Scheme::csit_waterfill);
        auto onoff = sweep(cfgs, Scheme::onoff);
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            if (!water[i].point)
                throw std::runtime_error("figure 3: " + water[i].error);
            if (!onoff[i].point)
                throw std::runtime_error("figure 3: " + onoff[i].error);
            rep.rows.push_back({snrs[i], double(nt), 0.0, water[i].point->value});
            rep.rows.push_back({snrs[i], double(nt), 1.0, onoff[i].point->value});
        }
    }
    rep.scheme_labels = {"waterfilling", "onoff"};
    return rep;
}

Report build_m_sweep_figure(const ReportRequest& req) {
    if (req.snr_db.empty())
        throw std::invalid_argument(
            "figure 4 requires an explicit --snr-db grid; the reference plot does not state "
            "its SNR values");
    Report rep;
    rep.target = "figure 4";
    rep.title = "Ergodic capacity vs m, n = 18 fixed";
    rep.columns = {"m", "SNR (dB)", "N_R", "N_T", "Scheme", "Rate (bits/s/Hz)"};
    rep.decimals = {-1, -1, -1, -1, -1, 6};
    for (double s : req.snr_db) {
        for (int m = 1; m <= 18; ++m) {
            // CSIT capacity depends only on (m, n); equal-power capacity
            // depends on the orientation, so both are emitted.
            AntennaPair tall{18, m};
            auto cfg_tall = ChannelConfig::from_snr_db(tall, s);
            rep.rows.push_back(
                {double(m), s, 18.0, double(m), 0.0, capacity_csit(cfg_tall).value});
            rep.rows.push_back(
                {double(m), s, 18.0, double(m), 1.0, capacity_no_csit(cfg_tall).value});
            if (m != 18) {
                AntennaPair wide{m, 18};
                auto cfg_wide = ChannelConfig::from_snr_db(wide, s);
                rep.rows.push_back(
                    {double(m), s, double(m), 18.0, 1.0, capacity_no_csit(cfg_wide).value});
            }
        }
    }
    rep.scheme_labels = {"csit_waterfill", "no_csit"};
    return rep;
}

Report build_cutoff_figure(const ReportRequest& req) {
    Report rep;
    rep.target = "figure 5";
    rep.title = "Waterfilling cutoff gamma0 vs SNR, m = 4";
    rep.columns = {"SNR (dB)", "n", "gamma0"};
    rep.decimals = {-1, -1, 9};
    std::vector<double> snrs = req.snr_db.empty() ? figure_snr_range(-10, 40, 5) : req.snr_db;
    for (int n : {4, 6, 8, 10}) {
        AntennaPair pair{4, n};
        std::optional<double> hint;
        for (double s : snrs) {
            auto wf = solve_cutoff(ChannelConfig::from_snr_db(pair, s), hint);
            hint = wf.lambda0;
            rep.rows.push_back({s, double(n), wf.gamma0});
        }
    }
    return rep;
}

Report build_outage_figure(int index, const ReportRequest& req) {
    const bool square = (index == 7 || index == 9);
    const bool with_actual = (index == 8 || index == 9);
    Report rep;
    rep.target = "figure " + std::to_string(index);
    rep.title = square ? "Outage bound min(p1, p2) vs SNR, m = n"
                       : "Outage bound p1 vs SNR, m = 2 fixed";
    if (with_actual) rep.title += ", with actual outage";
    rep.columns = square ? std::vector<std::string>{"SNR (dB)", "m", "Bound"}
                         : std::vector<std::string>{"SNR (dB)", "n", "Bound"};
    rep.decimals = {-1, -1, 9};
    if (with_actual) {
        rep.columns.push_back("P_out");
        rep.decimals.push_back(9);
    }
    std::vector<double> snrs = req.snr_db.empty() ? figure_snr_range(-10, 40, 1) : req.snr_db;
    std::vector<AntennaPair> pairs;
    if (square)
        for (int m : {2, 3, 4}) pairs.push_back({m, m});
    else
        for (int n : {2, 4, 6, 8}) pairs.push_back({2, n});
    for (const auto& pair : pairs) {
        std::optional<double> hint;
        for (double s : snrs) {
            auto cfg = ChannelConfig::from_snr_db(pair, s);
            auto wf = solve_cutoff(cfg, hint);
            hint = wf.lambda0;
            OutageResult o = outage_point(cfg);
            double bound = square ? o.p_bound2 : o.p_bound1;
            std::vector<double> row{s, double(square ? pair.m() : pair.n()), bound};
            if (with_actual) row.push_back(o.p_actual);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

// ---- custom reports ------------------------------------------------------

Report build_custom(const ReportRequest& req) {
    if (!req.n_r || !req.n_t)
        throw std::invalid_argument("custom report requires --nr and --nt");
    if (req.snr_db.empty())
        throw std::invalid_argument("custom report requires at least one --snr-db");
    AntennaPair pair{*req.n_r, *req.n_t};
    try {
        validate(pair);
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(e.what());
    }

    std::vector<std::string> quantities = req.quantities;
    if (quantities.empty()) quantities = {"csit", "no_csit"};

    static const std::map<std::string, std::string> kColumnNames = {
        {"csit", "CSIT capacity"},
        {"no_csit", "No-CSIT capacity"},
        {"high_snr", "High-SNR approx"},
        {"onoff", "On-off rate"},
        {"lambda0", "lambda0"},
        {"gamma0", "gamma0"},
        {"outage", "Outage"},
        {"p1", "Outage bound p1"},
        {"p2min", "Outage bound min(p1,p2)"},
        {"mc_csit", "CSIT (MC)"},
        {"mc_no_csit", "No-CSIT (MC)"},
        {"mc_onoff", "On-off (MC)"},
        {"mc_outage", "Outage (MC)"}};

    Report rep;
    rep.target = "custom";
    rep.title = pair_title(pair);
    rep.columns = {"SNR (dB)"};
    rep.decimals = {-1};
    for (const auto& q : quantities) {
        auto it = kColumnNames.find(q);
        if (it == kColumnNames.end())
            throw std::invalid_argument("unknown quantity '" + q + "'");
        rep.columns.push_back(it->second);
        rep.decimals.push_back(q == "lambda0" || q == "gamma0" || q == "outage" ||
                                       q == "p1" || q == "p2min"
                                   ? 9
                                   : 6);
    }

    const bool wants_mc = std::any_of(quantities.begin(), quantities.end(),
                                      [](const std::string& q) { return q.rfind("mc_", 0) == 0; });
    for (double s : req.snr_db) {
        auto cfg = ChannelConfig::from_snr_db(pair, s);
        std::optional<WaterfillSolution> wf;
        auto cutoff = [&]() -> const WaterfillSolution& {
            if (!wf) wf = solve_cutoff(cfg);
            return *wf;
        };
        std::vector<double> row{s};
        for (const auto& q : quantities) {
            if (q == "csit") row.push_back(capacity_csit(cfg, cutoff()).value);
            else if (q == "no_csit") row.push_back(capacity_no_csit(cfg).value);
            else if (q == "high_snr") row.push_back(capacity_high_snr_approx(cfg).value);
            else if (q == "onoff") row.push_back(onoff_rate(cfg, cutoff()).value);
            else if (q == "lambda0") row.push_back(cutoff().lambda0);
            else if (q == "gamma0") row.push_back(cutoff().gamma0);
            else if (q == "outage") row.push_back(lambda_max_cdf(pair, cutoff().lambda0));
            else if (q == "p1") row.push_back(outage_bound_p1(cfg));
            else if (q == "p2min") row.push_back(outage_bound_p2(cfg));
            else if (q == "mc_csit") row.push_back(mc_capacity_csit(cfg, req.mc).mean);
            else if (q == "mc_no_csit") row.push_back(mc_capacity_no_csit(cfg, req.mc).mean);
            else if (q == "mc_onoff") row.push_back(mc_onoff_rate(cfg, req.mc).mean);
            else if (q == "mc_outage") row.push_back(mc_outage(cfg, req.mc).mean);
        }
        rep.rows.push_back(std::move(row));
    }
    if (wants_mc) {
        rep.used_mc = true;
        rep.seed = req.mc.seed;
        rep.samples = req.mc.samples;
    }
    return rep;
}

}  // namespace

std::vector<std::string> list_targets() {
    std::vector<std::string> out;
    for (const auto& def : table_defs()) {
        std::string kind = def.type == TableType::csit
                               ? "ergodic capacity with CSIT"
                               : def.type == TableType::no_csit
                                     ? "ergodic capacity without CSIT"
                                     : "on-off and waterfilling rates";
        out.push_back("table " + std::string(kRoman[def.index]) + "  (" + pair_title(def.pair) +
                      "; " + kind + ")");
    }
    out.push_back("figure 1  (capacity vs SNR, N_T = 4 fixed)");
    out.push_back("figure 2  (capacity vs SNR, N_R = 4 fixed)");
    out.push_back("figure 3  (low-SNR on-off vs waterfilling, N_R = 4 fixed)");
    out.push_back("figure 4  (capacity vs m, n = 18 fixed; requires --snr-db)");
    out.push_back("figure 5  (waterfilling cutoff gamma0 vs SNR, m = 4)");
    out.push_back("figure 6  (outage bound p1, m = 2 fixed)");
    out.push_back("figure 7  (outage bound min(p1,p2), m = n)");
    out.push_back("figure 8  (outage bound p1 vs actual outage, m = 2 fixed)");
    out.push_back("figure 9  (outage bound min(p1,p2) vs actual outage, m = n)");
    out.push_back("custom    (explicit --nr/--nt/--snr-db and quantity list)");
    return out;
}

int parse_table_id(const std::string& id) {
    int r = roman_to_index(id);
    if (r > 0) return r;
    try {
        std::size_t pos = 0;
        int v = std::stoi(id, &pos);
        if (pos == id.size() && v >= 1 && v <= 19) return v;
    } catch (const std::exception&) {
    }
    return -1;
}

Report run_report(const ReportRequest& req) {
    switch (req.kind) {
        case ReportRequest::Kind::table: {
            if (req.index < 1 || req.index > 19)
                throw std::invalid_argument("unknown table index");
            const TableDef& def = table_defs()[req.index - 1];
            return def.type == TableType::onoff ? build_onoff_table(def, req)
                                                : build_capacity_table(def, req);
        }
        case ReportRequest::Kind::figure:
            switch (req.index) {
                case 1:
                case 2:
                    return build_capacity_figure(req.index, req);
                case 3:
                    return build_onoff_figure(req);
                case 4:
                    return build_m_sweep_figure(req);
                case 5:
                    return build_cutoff_figure(req);
                case 6:
                case 7:
                case 8:
                case 9:
                    return build_outage_figure(req.index, req);
                default:
                    throw std::invalid_argument("unknown figure index");
            }
        case ReportRequest::Kind::custom:
            return build_custom(req);
    }
    throw std::invalid_argument("unknown report kind");
}

std::string to_csv(const Report& report) {
    std::ostringstream out;
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        if (c) out << ',';
        out << report.columns[c];
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            bool is_scheme = report.columns[c] == "Scheme";
            if (is_scheme && !report.scheme_labels.empty())
                out << report.scheme_labels[static_cast<std::size_t>(row[c])];
            else
                out << format_number(row[c], report.decimals[c]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const Report& report) {
    nlohmann::json j;
    j["target"] = report.target;
    j["title"] = report.title;
    j["columns"] = report.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (report.columns[c] == "Scheme" && !report.scheme_labels.empty())
                r.push_back(report.scheme_labels[static_cast<std::size_t>(row[c])]);
            else
                r.push_back(row[c]);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["meta"] = {{"tool_version", kToolVersion},
                 {"used_mc", report.used_mc},
                 {"seed", report.seed},
                 {"samples", report.samples}};
    return j.dump(2) + "\n";
}

// ---- verification --------------------------------------------------------

namespace {

struct GoldenTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

GoldenTable load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path);
    GoldenTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty golden file " + path);
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error("golden file " + path + ": unparseable cell '" + cell +
                                         "'");
            }
        }
        if (values.size() != table.columns.size())
            throw std::runtime_error("golden file " + path + ": ragged row '" + line + "'");
        table.rows.push_back(std::move(values));
    }
    return table;
}

std::string format_dev(double d) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", d);
    return buf;
}

}  // namespace

VerifyResult run_verify(const VerifyOptions& options) {
    VerifyResult result;
    std::ostringstream summary;
    auto fail = [&](const std::string& what) { result.failures.push_back(what); };

    if (!options.out_dir.empty()) std::filesystem::create_directories(options.out_dir);

    for (const auto& def : table_defs()) {
        const std::string name = std::string("table ") + kRoman[def.index];
        char fname[32];
        std::snprintf(fname, sizeof(fname), "table_%02d.csv", def.index);
        GoldenTable golden;
        try {
            golden = load_golden(options.data_dir + "/" + fname);
        } catch (const std::exception& ex) {
            fail(name + ": " + ex.what());
            summary << name << "  [FAIL] " << ex.what() << "\n";
            continue;
        }

        ReportRequest req;
        req.kind = ReportRequest::Kind::table;
        req.index = def.index;
        req.with_mc = options.run_mc;
        req.mc = McConfig{options.samples, options.seed, options.workers};
        Report rep = run_report(req);

        if (!options.out_dir.empty()) {
            std::ofstream out(options.out_dir + "/" + fname, std::ios::binary);
            out << to_csv(rep);
        }

        // Column roles: numerical column checked against golden numerical;
        // MC columns checked against our numerical and against golden MC.
        const bool onoff = def.type == TableType::onoff;
        const std::size_t num_col = onoff ? 3 : 2;
        if (golden.columns != (onoff ? std::vector<std::string>{"SNR (dB)",
                                                                "Capacity (Waterfilling)",
                                                                "On-off (Monte-carlo)",
                                                                "On-off (numerical)"}
                                     : std::vector<std::string>{"SNR (dB)",
                                                                "Capacity (Monte Carlo)",
                                                                "Capacity (Numerical)"})) {
            fail(name + ": golden header mismatch");
            summary << name << "  [FAIL] golden header mismatch\n";
            continue;
        }
        if (golden.rows.size() != rep.rows.size()) {
            fail(name + ": golden row count " + std::to_string(golden.rows.size()) +
                 " != " + std::to_string(rep.rows.size()));
            summary << name << "  [FAIL] row count mismatch\n";
            continue;
        }

        double max_golden_dev = 0.0;
        double max_mc_gap = 0.0;
        bool ok = true;
        // Internal waterfilling numericals for the on-off tables' MC check.
        std::vector<double> csit_numerical;
        if (onoff && options.run_mc) {
            std::optional<double> hint;
            for (double s : def.snrs) {
                auto cfg = ChannelConfig::from_snr_db(def.pair, s);
                auto wf = solve_cutoff(cfg, hint);
                hint = wf.lambda0;
                csit_numerical.push_back(capacity_csit(cfg, wf).value);
            }
        }

        for (std::size_t i = 0; i < golden.rows.size(); ++i) {
            const auto& grow = golden.rows[i];
            const auto& orow = rep.rows[i];
            if (grow[0] != orow[0]) {
                fail(name + ": SNR grid mismatch at row " + std::to_string(i));
                ok = false;
                break;
            }
            std::size_t our_num_col = options.run_mc ? num_col : 1;
            double dev = std::fabs(orow[our_num_col] - grow[num_col]);
            max_golden_dev = std::max(max_golden_dev, dev);
            if (dev > options.golden_tol) {
                fail(name + " SNR " + format_number(grow[0], -1) + " " +
                     golden.columns[num_col] + ": got " +
                     format_number(orow[our_num_col], 9) + " want " +
                     format_number(grow[num_col], 9) + " (dev " + format_dev(dev) + ")");
                ok = false;
            }
            if (options.run_mc) {
                // (mc column, reference value) pairs for this row
                std::vector<std::pair<std::size_t, double>> checks;
                if (onoff) {
                    checks = {{1, csit_numerical[i]}, {2, orow[3]}};
                } else {
                    checks = {{1, orow[2]}};
                }
                for (auto [col, ref] : checks) {
                    double gap = std::fabs(orow[col] - ref);
                    max_mc_gap = std::max(max_mc_gap, gap);
                    if (gap > options.mc_tol) {
                        fail(name + " SNR " + format_number(grow[0], -1) + " " +
                             golden.columns[col] + ": MC " + format_number(orow[col], 6) +
                             " vs numerical " + format_number(ref, 6) + " (gap " +
                             format_dev(gap) + " > " + format_dev(options.mc_tol) + ")");
                        ok = false;
                    }
                    double ggap = std::fabs(orow[col] - grow[col]);
                    max_mc_gap = std::max(max_mc_gap, ggap);
                    if (ggap > options.mc_tol) {
                        fail(name + " SNR " + format_number(grow[0], -1) + " " +
                             golden.columns[col] + ": MC " + format_number(orow[col], 6) +
                             " vs golden MC " + format_number(grow[col], 6) + " (gap " +
                             format_dev(ggap) + " > " + format_dev(options.mc_tol) + ")");
                        ok = false;
                    }
                }
            }
        }
        summary << name << "  " << (ok ? "[ok]  " : "[FAIL]") << " golden max dev "
                << format_dev(max_golden_dev);
        if (options.run_mc) summary << ", MC max gap " << format_dev(max_mc_gap);
        summary << "\n";
    }

    if (options.run_invariants) {
        int checked = 0;
        const std::size_t failures_before = result.failures.size();
        auto expect = [&](bool cond, const std::string& what) {
            ++checked;
            if (!cond) fail("invariant: " + what);
        };

        // Capacity symmetry in the antenna pair.
        for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 4}, {4, 6}, {1, 8}}) {
            for (double s : {-10.0, 0.0, 10.0}) {
                double fwd = capacity_csit(ChannelConfig::from_snr_db({a, b}, s)).value;
                double rev = capacity_csit(ChannelConfig::from_snr_db({b, a}, s)).value;
                expect(std::fabs(fwd - rev) < 1e-8,
                       "waterfilling capacity not symmetric at (" + std::to_string(a) + "," +
                           std::to_string(b) + ", " + format_number(s, -1) + " dB)");
            }
        }
        // Receive-heavy beats transmit-heavy without CSIT; CSIT dominates;
        // on-off never beats waterfilling.
        for (auto [nr, nt] : std::vector<std::pair<int, int>>{{4, 2}, {6, 4}, {12, 4}}) {
            for (double s : {-10.0, 0.0, 10.0}) {
                double rh = capacity_no_csit(ChannelConfig::from_snr_db({nr, nt}, s)).value;
                double th = capacity_no_csit(ChannelConfig::from_snr_db({nt, nr}, s)).value;
                expect(rh > th, "receive-heavy equal-power capacity not larger at (" +
                                    std::to_string(nr) + "," + std::to_string(nt) + ")");
            }
        }
        for (const auto& def : table_defs()) {
            if (def.type != TableType::csit) continue;
            for (double s : def.snrs) {
                auto cfg = ChannelConfig::from_snr_db(def.pair, s);
                auto wf = solve_cutoff(cfg);
                double c = capacity_csit(cfg, wf).value;
                double chat = capacity_no_csit(cfg).value;
                double onoff_v = onoff_rate(cfg, wf).value;
                expect(c >= chat && chat >= 0.0,
                       "capacity ordering violated at " + pair_title(def.pair) + ", " +
                           format_number(s, -1) + " dB");
                expect(onoff_v <= c, "on-off rate exceeds waterfilling capacity at " +
                                         pair_title(def.pair) + ", " + format_number(s, -1) +
                                         " dB");
            }
        }
        // Cutoff monotonicity.
        {
            double prev_l0 = 1e300;
            double prev_g0 = 0.0;
            for (double s : {-10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 30.0, 40.0}) {
                auto wf = solve_cutoff(ChannelConfig::from_snr_db({4, 4}, s));
                expect(wf.lambda0 < prev_l0, "lambda0 not decreasing in SNR at " +
                                                 format_number(s, -1) + " dB");
                expect(wf.gamma0 > prev_g0,
                       "gamma0 not increasing in SNR at " + format_number(s, -1) + " dB");
                prev_l0 = wf.lambda0;
                prev_g0 = wf.gamma0;
            }
        }
        // Spectrum normalization and mean.
        for (auto [nr, nt] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {4, 8}, {6, 18}}) {
            EigenDensity f({nr, nt});
            int n = f.pair().n();
            double mass =
                integrate_semi_infinite([&](double l) { return f(l); }, 0.0, QuadSpec{}, n);
            double mean =
                integrate_semi_infinite([&](double l) { return l * f(l); }, 0.0, QuadSpec{}, n);
            expect(std::fabs(mass - 1.0) < 1e-8, "eigenvalue density mass != 1 for (" +
                                                     std::to_string(nr) + "," +
                                                     std::to_string(nt) + ")");
            expect(std::fabs(mean - n) < 1e-6, "eigenvalue density mean != n for (" +
                                                   std::to_string(nr) + "," +
                                                   std::to_string(nt) + ")");
        }
        // Outage bound dominance on coarse figure grids.
        for (int n : {2, 4, 6, 8}) {
            for (double s : {-10.0, 0.0, 10.0, 20.0, 30.0, 40.0}) {
                OutageResult o = outage_point(ChannelConfig::from_snr_db({2, n}, s));
                expect(o.p_actual <= o.p_bound1 + 1e-12,
                       "p1 bound violated at (2," + std::to_string(n) + ", " +
                           format_number(s, -1) + " dB)");
            }
        }
        for (int m : {2, 3, 4}) {
            for (double s : {-10.0, 0.0, 10.0, 20.0, 30.0, 40.0}) {
                OutageResult o = outage_point(ChannelConfig::from_snr_db({m, m}, s));
                expect(o.p_actual <= o.p_bound2 + 1e-12,
                       "min bound violated at (" + std::to_string(m) + "," + std::to_string(m) +
                           ", " + format_number(s, -1) + " dB)");
            }
        }
        bool inv_ok = result.failures.size() == failures_before;
        summary << "invariants  " << (inv_ok ? "[ok]  " : "[FAIL]") << " " << checked
                << " checks\n";
    }

    result.pass = result.failures.empty();
    result.summary = summary.str();
    return result;
}

}  // namespace mimocap
