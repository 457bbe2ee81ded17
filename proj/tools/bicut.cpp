// bicut: exact bicluster editing and cell formation from the command line.
//
// Subcommands: gen, solve, eval, preprocess, oracle, bench. Exit codes:
// 0 success, 1 a solve hit its limits, 2 usage or input format errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicut/bench.hpp"
#include "bicut/bnc.hpp"
#include "bicut/io.hpp"
#include "bicut/mcfp.hpp"
#include "bicut/model.hpp"
#include "bicut/oracle.hpp"
#include "bicut/preprocess.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLimit = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bicut::BipartiteInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open instance file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return bicut::read_instance(buffer.str(), std::filesystem::path(path).stem().string());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write file '" + path + "'");
    out << text;
}

bicut::SeparatorKind parse_separator(const std::string& name) {
    if (name == "dp") return bicut::SeparatorKind::Dp;
    if (name == "exhaustive") return bicut::SeparatorKind::Exhaustive;
    if (name == "none") return bicut::SeparatorKind::None;
    throw UsageError("unknown separation mode '" + name + "'");
}

void emit_solution(const bicut::SolutionDocument& doc, const std::string& out_path) {
    std::string text = bicut::write_solution(doc);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

int run_gen(int m, int n, double p, std::uint64_t seed, const std::string& rng_id,
            const std::string& out_path) {
    bicut::GenSpec spec{m, n, p, seed, rng_id};
    auto instance = bicut::generate(spec, std::filesystem::path(out_path).stem().string());
    std::ostringstream provenance;
    provenance << "generated by bicut gen: m=" << m << " n=" << n << " p=" << p
               << " seed=" << seed << " rng=" << rng_id;
    write_text_file(out_path,
                    bicut::write_instance_with_comments(instance, {provenance.str()}));
    std::cout << "wrote " << out_path << " (" << instance.edge_count() << " edges)\n";
    return kExitOk;
}

int run_solve(const std::string& problem, const std::string& path, const std::string& sep,
              bool use_preprocess, int min_rows, int min_cols, const std::string& method,
              double time_limit, long long node_limit, const std::string& out_path) {
    auto instance = load_instance(path);
    bicut::BncConfig config;
    config.separator = parse_separator(sep);
    if (time_limit > 0) config.time_limit_seconds = time_limit;
    if (node_limit > 0) config.node_limit = node_limit;

    if (problem == "mcfp") {
        bicut::McfpMethod mcfp_method;
        if (method == "iterative")
            mcfp_method = bicut::McfpMethod::Iterative;
        else if (method == "linear")
            mcfp_method = bicut::McfpMethod::Linear;
        else
            throw UsageError("unknown method '" + method + "'");
        auto result = bicut::solve_mcfp(instance, min_cols, min_rows, config, mcfp_method);
        if (!result.solution) {
            std::cerr << "limit reached before any solution was found\n";
            return kExitLimit;
        }
        auto doc = bicut::make_solution_document(
            instance, *result.solution, method,
            bicut::SolveStats{result.nodes, result.cuts, result.seconds}, result.proven);
        emit_solution(doc, out_path);
        std::cerr << "efficacy " << result.efficacy.to_string() << " ("
                  << result.efficacy.to_percent_string() << "%), edits a=" << result.a
                  << " d=" << result.d << (result.proven ? ", proven optimal" : ", NOT proven")
                  << "\n";
        return result.proven ? kExitOk : kExitLimit;
    }

    if (problem != "bgep" && problem != "bgeps")
        throw UsageError("unknown problem '" + problem + "' (expected bgep, bgeps, or mcfp)");
    if (use_preprocess && (problem != "bgep" || min_rows > 0 || min_cols > 0))
        throw UsageError("--preprocess is only valid for the plain bgep objective");
    bicut::ModelSpec model = problem == "bgep" && min_rows == 0 && min_cols == 0
                                 ? bicut::build_bgep(instance)
                                 : bicut::build_bgeps(instance, min_cols, min_rows);
    if (use_preprocess) bicut::apply_preprocess(model, bicut::preprocess(instance));
    bicut::MilpResult result = bicut::solve(model, config);
    if (result.status == bicut::MilpStatus::Infeasible) {
        std::cerr << "infeasible\n";
        return kExitOk;
    }
    if (!result.incumbent) {
        std::cerr << "limit reached before any solution was found\n";
        return kExitLimit;
    }
    bool proven = result.status == bicut::MilpStatus::Optimal;
    auto doc = bicut::make_solution_document(
        instance, *result.incumbent, problem,
        bicut::SolveStats{result.nodes, result.cuts_added, result.seconds}, proven);
    emit_solution(doc, out_path);
    std::cerr << "edit count " << result.incumbent->total_edits() << " (a="
              << result.incumbent->a() << ", d=" << result.incumbent->d() << ")"
              << (proven ? ", proven optimal" : ", NOT proven") << ", nodes " << result.nodes
              << ", cuts " << result.cuts_added << "\n";
    return proven ? kExitOk : kExitLimit;
}

int run_eval(const std::string& instance_path, const std::string& solution_path) {
    auto instance = load_instance(instance_path);
    std::ifstream in(solution_path);
    if (!in) throw UsageError("cannot open solution file '" + solution_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    bicut::SolutionDocument doc = bicut::read_solution(buffer.str());
    bicut::Biclusterization clustering = bicut::clustering_of_document(doc, instance);
    auto [a, d] = bicut::edit_cost(instance, clustering);
    std::cout << "edits: a=" << a << " d=" << d << " (document claims a=" << doc.a
              << " d=" << doc.d << ")\n";
    if (instance.edge_count() > 0) {
        bicut::Efficacy efficacy = bicut::grouping_efficacy(instance, clustering);
        std::cout << "efficacy: " << efficacy.to_string() << " = "
                  << efficacy.to_percent_string() << "%\n";
    }
    bool consistent = a == doc.a && d == doc.d &&
                      (instance.edge_count() == 0 ||
                       bicut::grouping_efficacy(instance, clustering) == doc.efficacy);
    std::cout << (consistent ? "document is consistent with the instance\n"
                             : "document DISAGREES with the instance\n");
    return consistent ? kExitOk : kExitUsage;
}

int run_preprocess(const std::string& path) {
    auto instance = load_instance(path);
    bicut::PreprocessResult result = bicut::preprocess(instance);
    const auto& stats = result.stats;
    std::cout << "instance " << instance.name() << ": " << instance.u_count() << "x"
              << instance.v_count() << ", " << instance.edge_count() << " edges\n";
    std::cout << "fixed variables: " << stats.fixed_count << " / " << stats.fixable_total
              << " (" << stats.fixed_percent << "%)\n";
    std::cout << "pair cuts: " << stats.cut_count << " / " << stats.cut_total << " ("
              << stats.cut_percent << "%)\n";
    return kExitOk;
}

int run_oracle(const std::string& problem, const std::string& path, int min_rows, int min_cols,
               const std::string& out_path) {
    auto instance = load_instance(path);
    if (problem == "bgep") {
        auto [cost, solution] = bicut::brute_force_bgep(instance);
        auto doc = bicut::make_solution_document(instance, solution, "oracle-bgep", {}, true);
        emit_solution(doc, out_path);
        std::cerr << "edit optimum " << cost << "\n";
        return kExitOk;
    }
    if (problem != "mcfp") throw UsageError("oracle solves 'bgep' or 'mcfp'");
    auto [efficacy, solution] = bicut::brute_force_mcfp(instance, min_cols, min_rows);
    auto doc = bicut::make_solution_document(instance, solution, "oracle-mcfp", {}, true);
    emit_solution(doc, out_path);
    std::cerr << "efficacy optimum " << efficacy.to_string() << " = "
              << efficacy.to_percent_string() << "%\n";
    return kExitOk;
}

int run_bench(const std::string& dir, const std::string& modes_arg, double time_limit,
              const std::string& json_path) {
    std::vector<bicut::BenchMode> modes;
    std::stringstream splitter(modes_arg);
    std::string token;
    while (std::getline(splitter, token, ',')) modes.push_back(bicut::parse_bench_mode(token));
    std::vector<std::pair<std::string, bicut::BipartiteInstance>> suite;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files)
        suite.emplace_back(file.stem().string(), load_instance(file.string()));
    if (suite.empty()) throw UsageError("no .txt instances under '" + dir + "'");
    bicut::BncConfig config;
    if (time_limit > 0) config.time_limit_seconds = time_limit;
    bicut::BenchReport report = bicut::run_bench(suite, modes, config);
    std::cout << bicut::format_report_text(report);
    if (!json_path.empty()) write_text_file(json_path, bicut::report_to_json(report).dump(2) + "\n");
    return report.optima_consistent ? kExitOk : kExitLimit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bicluster editing and manufacturing cell formation"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a random instance");
    int gen_m = 10, gen_n = 10;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    std::string gen_rng = "splitmix64", gen_out;
    gen->add_option("-m", gen_m, "rows (products)")->required();
    gen->add_option("-n", gen_n, "columns (machines)")->required();
    gen->add_option("-p", gen_p, "edge probability")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--rng", gen_rng, "generator id (splitmix64)");
    gen->add_option("-o,--out", gen_out, "output file")->required();

    auto* solve_cmd = app.add_subcommand("solve", "solve an instance exactly");
    std::string solve_problem, solve_file, solve_sep = "dp", solve_method = "iterative",
                solve_out;
    bool solve_pre = false;
    int solve_min_rows = 0, solve_min_cols = 0;
    double solve_time_limit = 0;
    long long solve_node_limit = 0;
    solve_cmd->add_option("problem", solve_problem, "bgep | bgeps | mcfp")->required();
    solve_cmd->add_option("file", solve_file, "instance file")->required();
    solve_cmd->add_option("--sep", solve_sep, "separation: dp | exhaustive | none");
    solve_cmd->add_flag("--preprocess", solve_pre, "distance fixing and pair cuts (bgep only)");
    solve_cmd->add_option("--min-rows", solve_min_rows, "minimum rows per used cell");
    solve_cmd->add_option("--min-cols", solve_min_cols, "minimum columns per used cell");
    solve_cmd->add_option("--method", solve_method, "mcfp method: iterative | linear");
    solve_cmd->add_option("--time-limit", solve_time_limit, "seconds");
    solve_cmd->add_option("--node-limit", solve_node_limit, "branch-and-bound nodes");
    solve_cmd->add_option("-o,--out", solve_out, "solution document path (default stdout)");

    auto* eval_cmd = app.add_subcommand("eval", "re-evaluate a solution document");
    std::string eval_instance, eval_solution;
    eval_cmd->add_option("instance", eval_instance, "instance file")->required();
    eval_cmd->add_option("solution", eval_solution, "solution document")->required();

    auto* pre_cmd = app.add_subcommand("preprocess", "report distance-based reductions");
    std::string pre_file;
    pre_cmd->add_option("file", pre_file, "instance file")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference solve (<= 12 vertices)");
    std::string oracle_problem, oracle_file, oracle_out;
    int oracle_min_rows = 0, oracle_min_cols = 0;
    oracle_cmd->add_option("problem", oracle_problem, "bgep | mcfp")->required();
    oracle_cmd->add_option("file", oracle_file, "instance file")->required();
    oracle_cmd->add_option("--min-rows", oracle_min_rows, "minimum rows per used cell");
    oracle_cmd->add_option("--min-cols", oracle_min_cols, "minimum columns per used cell");
    oracle_cmd->add_option("-o,--out", oracle_out, "solution document path (default stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "compare solver modes over a directory");
    std::string bench_dir, bench_modes = "dp,exhaustive", bench_json;
    double bench_time_limit = 0;
    bench_cmd->add_option("dir", bench_dir, "directory of .txt instances")->required();
    bench_cmd->add_option("--modes", bench_modes,
                          "comma list of dp|exhaustive|none, optional +pre suffix");
    bench_cmd->add_option("--time-limit", bench_time_limit, "per-solve seconds");
    bench_cmd->add_option("--json", bench_json, "also write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        return app.exit(error) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return run_gen(gen_m, gen_n, gen_p, gen_seed, gen_rng, gen_out);
        if (solve_cmd->parsed())
            return run_solve(solve_problem, solve_file, solve_sep, solve_pre, solve_min_rows,
                             solve_min_cols, solve_method, solve_time_limit, solve_node_limit,
                             solve_out);
        if (eval_cmd->parsed()) return run_eval(eval_instance, eval_solution);
        if (pre_cmd->parsed()) return run_preprocess(pre_file);
        if (oracle_cmd->parsed())
            return run_oracle(oracle_problem, oracle_file, oracle_min_rows, oracle_min_cols,
                              oracle_out);
        if (bench_cmd->parsed())
            return run_bench(bench_dir, bench_modes, bench_time_limit, bench_json);
    } catch (const UsageError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const bicut::ParseError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
