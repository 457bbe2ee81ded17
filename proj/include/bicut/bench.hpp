#pragma once

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bicut/bnc.hpp"
#include "bicut/instance.hpp"
#include "bicut/model.hpp"
#include "bicut/preprocess.hpp"

namespace bicut {

/// n-th root of the product of n running times, computed in log space.
inline double geometric_mean(const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("geometric mean of an empty set");
    double log_sum = 0.0;
    for (double t : times) {
        if (t <= 0.0) throw std::invalid_argument("geometric mean needs positive values");
        log_sum += std::log(t);
    }
    return std::exp(log_sum / static_cast<double>(times.size()));
}

/// One benchmark scenario: a separation algorithm plus optionally the
/// distance preprocessing.
struct BenchMode {
    std::string name;
    SeparatorKind separator = SeparatorKind::Dp;
    bool preprocess = false;
};

/// Parses "dp", "exhaustive", "none", optionally suffixed "+pre".
inline BenchMode parse_bench_mode(const std::string& text) {
    BenchMode mode;
    mode.name = text;
    std::string base = text;
    if (base.size() > 4 && base.substr(base.size() - 4) == "+pre") {
        mode.preprocess = true;
        base = base.substr(0, base.size() - 4);
    }
    if (base == "dp")
        mode.separator = SeparatorKind::Dp;
    else if (base == "exhaustive")
        mode.separator = SeparatorKind::Exhaustive;
    else if (base == "none")
        mode.separator = SeparatorKind::None;
    else
        throw std::invalid_argument("unknown bench mode '" + text + "'");
    return mode;
}

struct BenchRow {
    std::string instance;
    std::string mode;
    double seconds = 0.0;
    long long nodes = 0;
    long long cuts = 0;
    long long optimum = -1;  // -1 when the time limit expired
    bool timed_out = false;
    // Preprocessing statistics, present when the mode enables it.
    std::optional<double> fixed_percent;
    std::optional<double> cut_percent;
};

struct ModeSummary {
    std::string mode;
    double total_seconds = 0.0;
    double geometric_mean = 0.0;
    int wins = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<ModeSummary> summaries;
    bool optima_consistent = true;
};

/// Solves every instance once per mode and tabulates times, geometric
/// means, and per-mode win counts (ties award every fastest mode). Modes
/// must agree on the optimum of every instance they both solve; timeouts
/// are recorded, not fatal.
inline BenchReport run_bench(const std::vector<std::pair<std::string, BipartiteInstance>>& suite,
                             const std::vector<BenchMode>& modes, const BncConfig& base_config) {
    if (modes.empty()) throw std::invalid_argument("bench: no modes requested");
    BenchReport report;
    for (const auto& [name, instance] : suite) {
        std::optional<long long> reference_optimum;
        for (const BenchMode& mode : modes) {
            BncConfig config = base_config;
            config.separator = mode.separator;
            ModelSpec model = build_bgep(instance);
            BenchRow row;
            row.instance = name;
            row.mode = mode.name;
            const auto started = std::chrono::steady_clock::now();
            if (mode.preprocess) {
                PreprocessResult pre = preprocess(instance);
                row.fixed_percent = pre.stats.fixed_percent;
                row.cut_percent = pre.stats.cut_percent;
                apply_preprocess(model, pre);
            }
            MilpResult result = solve(model, config);
            row.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            row.nodes = result.nodes;
            row.cuts = result.cuts_added;
            if (result.status == MilpStatus::Optimal) {
                row.optimum = result.objective_exact.num();
                if (reference_optimum && *reference_optimum != row.optimum)
                    report.optima_consistent = false;
                if (!reference_optimum) reference_optimum = row.optimum;
            } else {
                row.timed_out = true;
            }
            report.rows.push_back(std::move(row));
        }
    }
    for (const BenchMode& mode : modes) {
        ModeSummary summary;
        summary.mode = mode.name;
        std::vector<double> times;
        for (const BenchRow& row : report.rows)
            if (row.mode == mode.name) {
                summary.total_seconds += row.seconds;
                times.push_back(std::max(row.seconds, 1e-9));  // clock-resolution floor
            }
        summary.geometric_mean = times.empty() ? 0.0 : geometric_mean(times);
        report.summaries.push_back(std::move(summary));
    }
    // Win counts: every mode matching an instance's fastest time scores.
    for (const auto& [name, instance] : suite) {
        (void)instance;
        double fastest = std::numeric_limits<double>::infinity();
        for (const BenchRow& row : report.rows)
            if (row.instance == name) fastest = std::min(fastest, row.seconds);
        for (const BenchRow& row : report.rows)
            if (row.instance == name && row.seconds <= fastest)
                for (ModeSummary& summary : report.summaries)
                    if (summary.mode == row.mode) ++summary.wins;
    }
    return report;
}

inline std::string format_report_text(const BenchReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "instance" << std::setw(16) << "mode" << std::right
        << std::setw(12) << "seconds" << std::setw(10) << "nodes" << std::setw(10) << "cuts"
        << std::setw(10) << "optimum" << std::setw(10) << "fixed%" << std::setw(10) << "cuts%"
        << "\n";
    for (const BenchRow& row : report.rows) {
        out << std::left << std::setw(24) << row.instance << std::setw(16) << row.mode
            << std::right << std::setw(12) << std::fixed << std::setprecision(4) << row.seconds
            << std::setw(10) << row.nodes << std::setw(10) << row.cuts;
        if (row.timed_out)
            out << std::setw(10) << "limit";
        else
            out << std::setw(10) << row.optimum;
        auto percent = [&](const std::optional<double>& value) {
            if (value)
                out << std::setw(9) << std::setprecision(1) << *value << "%";
            else
                out << std::setw(10) << "-";
        };
        percent(row.fixed_percent);
        percent(row.cut_percent);
        out << "\n";
    }
    out << "\n" << std::left << std::setw(16) << "mode" << std::right << std::setw(14)
        << "total (s)" << std::setw(16) << "geom. mean" << std::setw(8) << "wins"
        << "\n";
    for (const ModeSummary& summary : report.summaries)
        out << std::left << std::setw(16) << summary.mode << std::right << std::setw(14)
            << std::fixed << std::setprecision(4) << summary.total_seconds << std::setw(16)
            << std::setprecision(6) << summary.geometric_mean << std::setw(8) << summary.wins
            << "\n";
    if (!report.optima_consistent) out << "\nWARNING: modes disagree on at least one optimum\n";
    return out.str();
}

inline nlohmann::ordered_json report_to_json(const BenchReport& report) {
    nlohmann::ordered_json json;
    json["rows"] = nlohmann::ordered_json::array();
    for (const BenchRow& row : report.rows) {
        nlohmann::ordered_json entry;
        entry["instance"] = row.instance;
        entry["mode"] = row.mode;
        entry["seconds"] = row.seconds;
        entry["nodes"] = row.nodes;
        entry["cuts"] = row.cuts;
        if (row.timed_out)
            entry["optimum"] = nullptr;
        else
            entry["optimum"] = row.optimum;
        if (row.fixed_percent) entry["fixed_percent"] = *row.fixed_percent;
        if (row.cut_percent) entry["cut_percent"] = *row.cut_percent;
        json["rows"].push_back(std::move(entry));
    }
    json["summaries"] = nlohmann::ordered_json::array();
    for (const ModeSummary& summary : report.summaries) {
        nlohmann::ordered_json entry;
        entry["mode"] = summary.mode;
        entry["total_seconds"] = summary.total_seconds;
        entry["geometric_mean"] = summary.geometric_mean;
        entry["wins"] = summary.wins;
        json["summaries"].push_back(std::move(entry));
    }
    json["optima_consistent"] = report.optima_consistent;
    return json;
}

}  // namespace bicut
