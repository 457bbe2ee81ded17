#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bicut/clustering.hpp"
#include "bicut/instance.hpp"
#include "bicut/rational.hpp"

namespace bicut {

// ---------------------------------------------------------------------------
// Random instance generation
// ---------------------------------------------------------------------------

/// splitmix64 step (Steele, Lea & Flood); the generator behind our seeded
/// instance streams. Fixed here so generated instances are reproducible
/// across toolchains, not just across runs.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of a splitmix64 draw.
inline double splitmix64_unit(std::uint64_t& state) {
    return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

/// Specification of a random bipartite instance: each of the m*n potential
/// edges is included independently with probability p.
struct GenSpec {
    int m = 1;  // |U|
    int n = 1;  // |V|
    double p = 0.5;
    std::uint64_t seed = 0;
    std::string rng_id = "splitmix64";
};

/// Draws the instance of `spec`. Edges are decided in row-major (i, j)
/// order, one unit draw each, so a spec identifies exactly one instance.
inline BipartiteInstance generate(const GenSpec& spec, std::string name = "") {
    if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("generate: parts must be non-empty");
    if (spec.p < 0.0 || spec.p > 1.0)
        throw std::invalid_argument("generate: probability out of [0,1]");
    if (spec.rng_id != "splitmix64")
        throw std::invalid_argument("generate: unknown rng_id '" + spec.rng_id + "'");
    std::uint64_t state = spec.seed;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < spec.m; ++i)
        for (int j = 0; j < spec.n; ++j)
            if (splitmix64_unit(state) < spec.p) edges.emplace_back(i, j);
    return BipartiteInstance(spec.m, spec.n, std::move(edges), std::move(name));
}

// ---------------------------------------------------------------------------
// Instance text format
// ---------------------------------------------------------------------------
//
//   # comment lines start with '#'
//   R C
//   <R rows of C space-separated 0/1 entries>
//
// Rows map to U (products), columns to V (machines).

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& message, int line_, int column_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + message),
          line(line_),
          column(column_) {}
};

inline BipartiteInstance read_instance(const std::string& text, std::string name = "") {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int rows = -1, cols = -1;
    int row = 0;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (rows < 0) {
            if (!(fields >> rows >> cols) || rows <= 0 || cols <= 0)
                throw ParseError("expected header 'R C' with positive integers", line_no, 1);
            std::string extra;
            if (fields >> extra) throw ParseError("trailing data after header", line_no, 1);
            continue;
        }
        if (row >= rows) throw ParseError("more rows than the header declares", line_no, 1);
        for (int j = 0; j < cols; ++j) {
            std::string token;
            if (!(fields >> token))
                throw ParseError("row has fewer than " + std::to_string(cols) + " entries",
                                 line_no, j + 1);
            if (token == "1")
                edges.emplace_back(row, j);
            else if (token != "0")
                throw ParseError("entry '" + token + "' is not 0/1", line_no, j + 1);
        }
        std::string extra;
        if (fields >> extra)
            throw ParseError("row has more than " + std::to_string(cols) + " entries", line_no,
                             cols + 1);
        ++row;
    }
    if (rows < 0) throw ParseError("missing header", line_no + 1, 1);
    if (row != rows)
        throw ParseError("expected " + std::to_string(rows) + " rows, found " +
                             std::to_string(row),
                         line_no + 1, 1);
    return BipartiteInstance(rows, cols, std::move(edges), std::move(name));
}

/// Canonical text of an instance: header plus matrix rows, no comments.
inline std::string write_instance(const BipartiteInstance& instance) {
    std::ostringstream out;
    out << instance.u_count() << " " << instance.v_count() << "\n";
    for (int i = 0; i < instance.u_count(); ++i) {
        for (int j = 0; j < instance.v_count(); ++j) {
            if (j > 0) out << " ";
            out << (instance.has_edge(i, j) ? 1 : 0);
        }
        out << "\n";
    }
    return out.str();
}

/// As write_instance, prefixed by '#' comment lines (e.g. generation
/// provenance). Comments must not contain newlines.
inline std::string write_instance_with_comments(const BipartiteInstance& instance,
                                                const std::vector<std::string>& comments) {
    std::ostringstream out;
    for (const auto& comment : comments) out << "# " << comment << "\n";
    out << write_instance(instance);
    return out.str();
}

// ---------------------------------------------------------------------------
// Solution documents (JSON)
// ---------------------------------------------------------------------------

struct SolveStats {
    long long nodes = 0;
    long long cuts = 0;
    double seconds = 0.0;

    friend bool operator==(const SolveStats& x, const SolveStats& y) {
        return x.nodes == y.nodes && x.cuts == y.cuts && x.seconds == y.seconds;
    }
};

/// Serializable record of a solve: the cell decomposition, the edit lists,
/// the exact efficacy, and bookkeeping. Indices are 0-based in memory and
/// 1-based in the JSON document.
struct SolutionDocument {
    std::string instance_name;
    std::string method;
    Efficacy efficacy{0, 1};
    long long a = 0;
    long long d = 0;
    std::vector<std::vector<int>> row_cells;
    std::vector<std::vector<int>> col_cells;
    std::vector<std::pair<int, int>> additions;
    std::vector<std::pair<int, int>> deletions;
    SolveStats stats;
    bool proven = true;

    friend bool operator==(const SolutionDocument& x, const SolutionDocument& y) {
        return x.instance_name == y.instance_name && x.method == y.method &&
               x.efficacy.num() == y.efficacy.num() && x.efficacy.den() == y.efficacy.den() &&
               x.a == y.a && x.d == y.d && x.row_cells == y.row_cells &&
               x.col_cells == y.col_cells && x.additions == y.additions &&
               x.deletions == y.deletions && x.stats == y.stats && x.proven == y.proven;
    }
};

/// Builds a document from a solved instance. Pass m == 0 instances only
/// for edit-based methods; their efficacy field is reported as 0/1.
inline SolutionDocument make_solution_document(const BipartiteInstance& instance,
                                               const EditSolution& solution,
                                               const std::string& method, const SolveStats& stats,
                                               bool proven) {
    SolutionDocument doc;
    doc.instance_name = instance.name();
    doc.method = method;
    doc.efficacy = instance.edge_count() > 0 ? grouping_efficacy(instance, solution.clustering)
                                             : Efficacy(0, 1);
    doc.a = solution.a();
    doc.d = solution.d();
    for (const Cell& cell : cells_of(solution.clustering)) {
        doc.row_cells.push_back(cell.rows);
        doc.col_cells.push_back(cell.cols);
    }
    doc.additions = solution.added;
    doc.deletions = solution.removed;
    doc.stats = stats;
    doc.proven = proven;
    return doc;
}

inline std::string write_solution(const SolutionDocument& doc) {
    nlohmann::ordered_json json;
    json["instance_name"] = doc.instance_name;
    json["method"] = doc.method;
    json["efficacy"] = {{"num", doc.efficacy.num()}, {"den", doc.efficacy.den()}};
    json["edits"] = {{"a", doc.a}, {"d", doc.d}};
    auto one_based_cells = [](const std::vector<std::vector<int>>& cells) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& cell : cells) {
            nlohmann::ordered_json members = nlohmann::ordered_json::array();
            for (int x : cell) members.push_back(x + 1);
            out.push_back(members);
        }
        return out;
    };
    json["row_cells"] = one_based_cells(doc.row_cells);
    json["col_cells"] = one_based_cells(doc.col_cells);
    auto one_based_pairs = [](const std::vector<std::pair<int, int>>& pairs) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (auto [i, j] : pairs) out.push_back({i + 1, j + 1});
        return out;
    };
    json["additions"] = one_based_pairs(doc.additions);
    json["deletions"] = one_based_pairs(doc.deletions);
    json["stats"] = {{"nodes", doc.stats.nodes}, {"cuts", doc.stats.cuts},
                     {"seconds", doc.stats.seconds}};
    json["proven"] = doc.proven;
    return json.dump(2) + "\n";
}

inline SolutionDocument read_solution(const std::string& text) {
    nlohmann::json json;
    try {
        json = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& error) {
        throw std::runtime_error(std::string("solution document: ") + error.what());
    }
    auto require = [&](const char* key) -> const nlohmann::json& {
        if (!json.contains(key))
            throw std::runtime_error(std::string("solution document: missing field '") + key +
                                     "'");
        return json.at(key);
    };
    SolutionDocument doc;
    doc.instance_name = require("instance_name").get<std::string>();
    doc.method = require("method").get<std::string>();
    const auto& eff = require("efficacy");
    doc.efficacy = Efficacy(eff.at("num").get<long long>(), eff.at("den").get<long long>());
    const auto& edits = require("edits");
    doc.a = edits.at("a").get<long long>();
    doc.d = edits.at("d").get<long long>();
    auto zero_based_cells = [](const nlohmann::json& cells) {
        std::vector<std::vector<int>> out;
        for (const auto& cell : cells) {
            std::vector<int> members;
            for (const auto& x : cell) members.push_back(x.get<int>() - 1);
            out.push_back(std::move(members));
        }
        return out;
    };
    doc.row_cells = zero_based_cells(require("row_cells"));
    doc.col_cells = zero_based_cells(require("col_cells"));
    if (doc.row_cells.size() != doc.col_cells.size())
        throw std::runtime_error("solution document: row_cells/col_cells length mismatch");
    auto zero_based_pairs = [](const nlohmann::json& pairs) {
        std::vector<std::pair<int, int>> out;
        for (const auto& pair : pairs) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::runtime_error("solution document: edit entry is not a pair");
            out.emplace_back(pair.at(0).get<int>() - 1, pair.at(1).get<int>() - 1);
        }
        return out;
    };
    doc.additions = zero_based_pairs(require("additions"));
    doc.deletions = zero_based_pairs(require("deletions"));
    const auto& stats = require("stats");
    doc.stats.nodes = stats.at("nodes").get<long long>();
    doc.stats.cuts = stats.at("cuts").get<long long>();
    doc.stats.seconds = stats.at("seconds").get<double>();
    doc.proven = require("proven").get<bool>();
    if (static_cast<long long>(doc.additions.size()) != doc.a ||
        static_cast<long long>(doc.deletions.size()) != doc.d)
        throw std::runtime_error("solution document: edit counts disagree with edit lists");
    return doc;
}

/// Reconstructs the clustering of a document against an instance,
/// validating that the cells cover every row and column exactly once.
inline Biclusterization clustering_of_document(const SolutionDocument& doc,
                                               const BipartiteInstance& instance) {
    std::vector<Cell> cells;
    for (size_t c = 0; c < doc.row_cells.size(); ++c)
        cells.push_back(Cell{doc.row_cells[c], doc.col_cells[c]});
    return clustering_from_cells(cells, instance.u_count(), instance.v_count());
}

}  // namespace bicut
