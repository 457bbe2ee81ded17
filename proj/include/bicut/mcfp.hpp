#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bicut/bnc.hpp"
#include "bicut/clustering.hpp"
#include "bicut/instance.hpp"
#include "bicut/model.hpp"
#include "bicut/rational.hpp"

namespace bicut {

enum class McfpMethod { Iterative, Linear };

/// Outcome of an exact cell-formation solve. `proven` is false when a
/// node/time limit expired first; the efficacy then reports the best known
/// incumbent and `upper_bound` the best bound at interruption.
struct McfpResult {
    Efficacy efficacy{0, 1};
    std::optional<EditSolution> solution;
    long long a = 0;
    long long d = 0;
    McfpMethod method = McfpMethod::Iterative;
    long long iterations = 0;  // parameterized solves performed (iterative method)
    long long nodes = 0;
    long long cuts = 0;
    double seconds = 0.0;
    bool proven = true;
    Efficacy upper_bound{1, 1};
    /// (UB, LB) after initialization and after every iteration.
    std::vector<std::pair<Efficacy, Efficacy>> bound_history;
};

/// Efficacy bounds implied by an edit solution with a* additions and d*
/// deletions on an instance with m edges: any solution spending k >= a*+d*
/// edits rates at most m/(m+k), best when all edits are additions.
inline std::pair<Efficacy, Efficacy> lemma2_bounds(long long m, long long a_star,
                                                   long long d_star) {
    if (m <= 0) throw std::invalid_argument("lemma2_bounds: need at least one edge");
    if (a_star < 0 || d_star < 0)
        throw std::invalid_argument("lemma2_bounds: negative edit counts");
    Efficacy lower(m - d_star, m + a_star);
    Efficacy upper(m, m + a_star + d_star);
    return {lower, upper};
}

/// The (d, a) pairs admitted by the linearized model: efficacy at least
/// `l_c` and total edits at least `l_b`, for d in [0, m] and a in
/// [0, max_additions]. Throws when the filters admit nothing.
inline std::vector<XVarSpec> build_f_set(long long m, long long max_additions, Efficacy l_c,
                                         long long l_b) {
    if (m <= 0) throw std::invalid_argument("f-set: need at least one edge");
    if (l_c.num() <= 0 || l_c > Efficacy(1, 1))
        throw std::invalid_argument("f-set: efficacy bound must lie in (0, 1]");
    if (l_b < 0 || max_additions < 0)
        throw std::invalid_argument("f-set: negative bound");
    std::vector<XVarSpec> entries;
    for (long long d = 0; d <= m; ++d)
        for (long long a = 0; a <= max_additions; ++a) {
            Efficacy cost(m - d, m + a);
            if (cost >= l_c && d + a >= l_b) entries.push_back(XVarSpec{d, a, cost});
        }
    if (entries.empty())
        throw std::invalid_argument("f-set: bounds admit no (d, a) pair");
    return entries;
}

namespace detail {

inline void check_mcfp_preconditions(const BipartiteInstance& instance, int min_cols,
                                     int min_rows) {
    if (instance.edge_count() == 0)
        throw std::invalid_argument("mcfp: grouping efficacy needs at least one edge");
    if (min_cols > instance.v_count() || min_rows > instance.u_count())
        throw std::invalid_argument("mcfp: size minima exceed the instance dimensions");
}

inline void accumulate(McfpResult& result, const MilpResult& solve_result) {
    result.nodes += solve_result.nodes;
    result.cuts += solve_result.cuts_added;
}

}  // namespace detail

/// Exact cell formation by the iterative scheme: solve the size-restricted
/// edit problem once, then sweep the parameterized variant over consecutive
/// total edit counts, each time asking for the fewest deletions not yet
/// dominated. The deletion cap `U_opt` may render an iteration infeasible;
/// that is fine, because any excluded solution has at least `U_opt`
/// deletions at a larger total and therefore rates below the incumbent.
/// Bounds are exact rationals; the loop ends when they meet.
inline McfpResult solve_iterative(const BipartiteInstance& instance, int min_cols, int min_rows,
                                  const BncConfig& config) {
    detail::check_mcfp_preconditions(instance, min_cols, min_rows);
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    McfpResult result;
    result.method = McfpMethod::Iterative;
    const long long m = instance.edge_count();

    MilpResult base = solve(build_bgeps(instance, min_cols, min_rows), config);
    detail::accumulate(result, base);
    if (base.status != MilpStatus::Optimal) {
        if (base.status == MilpStatus::Infeasible)
            throw std::invalid_argument("mcfp: size-restricted edit problem is infeasible");
        result.proven = false;
        result.seconds = elapsed();
        return result;
    }
    long long a_star = base.incumbent->a(), d_star = base.incumbent->d();
    const long long base_edits = a_star + d_star;
    auto [lb, ub] = lemma2_bounds(m, a_star, d_star);
    long long u_opt = d_star;
    EditSolution best = *base.incumbent;
    result.bound_history.emplace_back(ub, lb);

    long long cont = 0;
    while (ub > lb) {
        if (elapsed() >= config.time_limit_seconds) {
            result.proven = false;
            break;
        }
        const long long lambda = base_edits + cont;
        BncConfig inner = config;
        if (std::isfinite(config.time_limit_seconds))
            inner.time_limit_seconds =
                std::max(1e-3, config.time_limit_seconds - elapsed());
        MilpResult step =
            solve(build_bgeps_lambda(instance, min_cols, min_rows, lambda, u_opt), inner);
        detail::accumulate(result, step);
        if (step.status == MilpStatus::LimitReached) {
            result.proven = false;
            break;
        }
        if (step.status == MilpStatus::Optimal) {
            long long a = step.incumbent->a(), d = step.incumbent->d();
            if (d < u_opt) u_opt = d;
            Efficacy candidate(m - d, m + a);
            if (candidate > lb) {
                lb = candidate;
                best = *step.incumbent;
            }
        }
        ub = Efficacy(m, m + lambda);
        result.bound_history.emplace_back(ub, lb);
        ++cont;
        ++result.iterations;
    }

    result.efficacy = lb;
    result.upper_bound = result.proven ? lb : ub;
    result.solution = std::move(best);
    result.a = result.solution->a();
    result.d = result.solution->d();
    result.seconds = elapsed();
    return result;
}

/// Exact cell formation through one branch-and-cut solve of the linearized
/// model. The candidate (d, a) set is seeded with the efficacy of the
/// size-restricted edit optimum and the rounded-up root relaxation of the
/// plain edit problem.
inline McfpResult solve_linear(const BipartiteInstance& instance, int min_cols, int min_rows,
                               const BncConfig& config) {
    detail::check_mcfp_preconditions(instance, min_cols, min_rows);
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    McfpResult result;
    result.method = McfpMethod::Linear;
    const long long m = instance.edge_count();

    MilpResult base = solve(build_bgeps(instance, min_cols, min_rows), config);
    detail::accumulate(result, base);
    if (base.status != MilpStatus::Optimal) {
        if (base.status == MilpStatus::Infeasible)
            throw std::invalid_argument("mcfp: size-restricted edit problem is infeasible");
        result.proven = false;
        result.seconds = elapsed();
        return result;
    }
    const long long a_star = base.incumbent->a(), d_star = base.incumbent->d();
    Efficacy l_c(m - d_star, m + a_star);

    double root = root_relaxation_bound(build_bgep(instance), config);
    long long l_b = std::max<long long>(0, static_cast<long long>(std::ceil(root - 1e-6)));

    const long long max_additions =
        static_cast<long long>(instance.u_count()) * instance.v_count() - m;
    std::vector<XVarSpec> f_set = build_f_set(m, max_additions, l_c, l_b);
    bool seed_present = false;
    for (const XVarSpec& x : f_set)
        seed_present |= x.d == d_star && x.a == a_star;
    if (!seed_present) throw std::logic_error("f-set: seeding solution dropped");

    BncConfig inner = config;
    if (std::isfinite(config.time_limit_seconds))
        inner.time_limit_seconds = std::max(1e-3, config.time_limit_seconds - elapsed());
    MilpResult final = solve(build_mcfp_linear(instance, min_cols, min_rows, f_set), inner);
    detail::accumulate(result, final);
    if (final.status == MilpStatus::Infeasible)
        throw std::logic_error("mcfp linear: model infeasible despite a feasible seed");
    if (final.status != MilpStatus::Optimal) result.proven = false;
    if (final.incumbent) {
        result.solution = final.incumbent;
        result.a = final.incumbent->a();
        result.d = final.incumbent->d();
        result.efficacy = final.objective_exact;
    } else {
        // Limit expired before any incumbent; fall back to the seed.
        result.solution = base.incumbent;
        result.a = a_star;
        result.d = d_star;
        result.efficacy = l_c;
    }
    result.upper_bound = result.proven ? result.efficacy : Efficacy(m, m);
    result.seconds = elapsed();
    return result;
}

inline McfpResult solve_mcfp(const BipartiteInstance& instance, int min_cols, int min_rows,
                             const BncConfig& config, McfpMethod method) {
    return method == McfpMethod::Iterative ? solve_iterative(instance, min_cols, min_rows, config)
                                           : solve_linear(instance, min_cols, min_rows, config);
}

}  // namespace bicut
