#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "bicut/clustering.hpp"
#include "bicut/instance.hpp"
#include "bicut/lp.hpp"
#include "bicut/model.hpp"
#include "bicut/separation.hpp"

namespace bicut {

enum class SeparatorKind { Dp, Exhaustive, None };
enum class BranchRule { MostFractional };
enum class NodeSelect { BestBound };

struct BncConfig {
    double int_tol = 1e-6;
    int cut_rounds_per_node = 50;
    long long node_limit = std::numeric_limits<long long>::max();
    double time_limit_seconds = std::numeric_limits<double>::infinity();
    BranchRule branching = BranchRule::MostFractional;
    NodeSelect node_selection = NodeSelect::BestBound;
    SeparatorKind separator = SeparatorKind::Dp;

    void validate() const {
        if (int_tol <= 0 || cut_rounds_per_node <= 0 || node_limit <= 0 ||
            !(time_limit_seconds > 0))
            throw std::invalid_argument("BncConfig: limits must be positive");
    }
};

enum class MilpStatus { Optimal, Infeasible, LimitReached };

struct MilpResult {
    MilpStatus status = MilpStatus::Infeasible;
    std::optional<EditSolution> incumbent;
    std::vector<int> y;   // rounded incumbent edge variables, row-major
    int selected_x = -1;  // chosen (d, a) pair in the linearized model
    double objective = 0.0;
    Rational objective_exact{0, 1};
    double best_bound = 0.0;
    long long nodes = 0;
    long long cuts_added = 0;
    double seconds = 0.0;
};

namespace detail {

inline std::uint64_t p4_cut_key(const P4Cut& cut, int u, int v) {
    std::uint64_t key = static_cast<std::uint64_t>(cut.i);
    key = key * static_cast<std::uint64_t>(v) + static_cast<std::uint64_t>(cut.j);
    key = key * static_cast<std::uint64_t>(u) + static_cast<std::uint64_t>(cut.k);
    key = key * static_cast<std::uint64_t>(v) + static_cast<std::uint64_t>(cut.l);
    return key;
}

inline LpRow p4_cut_row(const ModelSpec& model, const P4Cut& cut) {
    LpRow row;
    row.coeffs.emplace_back(model.y_index(cut.i, cut.l), 1.0);
    row.coeffs.emplace_back(model.y_index(cut.k, cut.j), 1.0);
    row.coeffs.emplace_back(model.y_index(cut.k, cut.l), 1.0);
    row.coeffs.emplace_back(model.y_index(cut.i, cut.j), -1.0);
    row.rel = Rel::LessEqual;
    row.rhs = 2.0;
    return row;
}

inline FractionalPoint y_point(const ModelSpec& model, const std::vector<double>& values,
                               bool rounded) {
    FractionalPoint point(model.instance.u_count(), model.instance.v_count());
    for (int i = 0; i < model.instance.u_count(); ++i)
        for (int j = 0; j < model.instance.v_count(); ++j) {
            double value = values[model.y_index(i, j)];
            if (rounded) value = value > 0.5 ? 1.0 : 0.0;
            point.set(i, j, std::clamp(value, 0.0, 1.0));
        }
    return point;
}

inline std::vector<P4Cut> run_separator(SeparatorKind kind, const FractionalPoint& point) {
    return kind == SeparatorKind::Exhaustive ? separate_exhaustive(point) : separate_dp(point);
}

/// Clustering of a 0/1 edge assignment: connected components of the edited
/// graph. Feasible assignments make every component a biclique, so the
/// re-encoded labels reproduce the assignment exactly.
inline Biclusterization decode_labels(const BipartiteInstance& instance,
                                      const std::vector<int>& y, int v_count) {
    const int u = instance.u_count(), v = v_count, n = u + v;
    std::vector<std::vector<int>> adjacency(n);
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j)
            if (y[i * v + j]) {
                adjacency[i].push_back(u + j);
                adjacency[u + j].push_back(i);
            }
    std::vector<int> label(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (label[s] != -1) continue;
        std::vector<int> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int t : adjacency[x])
                if (label[t] == -1) {
                    label[t] = next;
                    stack.push_back(t);
                }
        }
        ++next;
    }
    return Biclusterization(std::vector<int>(label.begin(), label.begin() + u),
                            std::vector<int>(label.begin() + u, label.end()));
}

}  // namespace detail

/// Branch-and-cut over a 0/1 model with the P4 family as lazy constraints.
///
/// Every LP-integral candidate is re-separated on its rounded point before
/// acceptance; a violated row rejects the candidate and the loop continues,
/// so incumbents are feasible for the full (exponential) constraint family,
/// not merely for the rows materialized so far. Fractional cutting runs at
/// most `cut_rounds_per_node` rounds per node; candidate-validation rounds
/// are mandatory and exempt from that cap. Cuts accumulate in a global pool
/// (they are valid everywhere) and each canonical quadruple is added once.
///
/// Branching picks the y variable closest to 1/2 (ties by lowest index);
/// x variables of the linearized model are only branched once every y is
/// integral, since the linking rows then imply them. Node selection is
/// best-bound first, newest node on ties. Deterministic for a fixed config.
class BranchAndCut {
  public:
    BranchAndCut(const ModelSpec& model, const BncConfig& config)
        : model_(model), config_(config) {
        config_.validate();
    }

    MilpResult run() {
        const auto started = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                .count();
        };
        MilpResult result;
        if (model_.declared_infeasible) {
            result.status = MilpStatus::Infeasible;
            result.seconds = elapsed();
            return result;
        }
        const bool minimize = model_.sense == ObjSense::Minimize;
        const double inf = std::numeric_limits<double>::infinity();

        Node root;
        root.id = next_node_id_++;
        root.bound = minimize ? -inf : inf;
        root.lower.assign(model_.var_count(), 0.0);
        root.upper.assign(model_.var_count(), 1.0);
        for (auto [i, j] : model_.fixed_zero) root.upper[model_.y_index(i, j)] = 0.0;
        push_node(std::move(root));

        bool limit_hit = false;
        while (!queue_.empty()) {
            if (result.nodes >= config_.node_limit ||
                elapsed() >= config_.time_limit_seconds) {
                limit_hit = true;
                break;
            }
            Node node = pop_node();
            if (incumbent_ && bound_is_pruned(node.bound, minimize)) continue;
            ++result.nodes;
            process_node(std::move(node), minimize, elapsed);
        }

        result.cuts_added = static_cast<long long>(pool_rows_.size());
        result.seconds = elapsed();
        if (limit_hit) {
            result.status = MilpStatus::LimitReached;
            double open = minimize ? inf : -inf;
            std::vector<Node> remaining;
            while (!queue_.empty()) remaining.push_back(pop_node());
            for (const Node& node : remaining)
                open = minimize ? std::min(open, node.bound) : std::max(open, node.bound);
            if (incumbent_)
                open = minimize ? std::min(open, incumbent_objective_)
                                : std::max(open, incumbent_objective_);
            result.best_bound = open;
        } else if (incumbent_) {
            result.status = MilpStatus::Optimal;
            result.best_bound = incumbent_objective_;
        } else {
            result.status = MilpStatus::Infeasible;
            result.best_bound = minimize ? inf : -inf;
        }
        if (incumbent_) {
            result.incumbent = incumbent_;
            result.y = incumbent_y_;
            result.selected_x = incumbent_x_;
            result.objective = incumbent_objective_;
            result.objective_exact = incumbent_exact_;
            if (result.status == MilpStatus::Optimal) verify_incumbent();
        }
        return result;
    }

  private:
    struct Node {
        long long id = 0;
        double bound = 0.0;
        std::vector<double> lower;
        std::vector<double> upper;
    };

    struct NodeOrder {
        bool minimize;
        // True when x should be processed before y: best bound first, the
        // newest node among equals.
        bool operator()(const Node& x, const Node& y) const {
            if (x.bound != y.bound) return minimize ? x.bound < y.bound : x.bound > y.bound;
            return x.id > y.id;
        }
    };

    void push_node(Node node) { queue_.push_back(std::move(node)); }

    Node pop_node() {
        NodeOrder order{model_.sense == ObjSense::Minimize};
        auto best = queue_.begin();
        for (auto it = std::next(queue_.begin()); it != queue_.end(); ++it)
            if (order(*it, *best)) best = it;
        Node node = std::move(*best);
        queue_.erase(best);
        return node;
    }

    bool bound_is_pruned(double bound, bool minimize) const {
        if (!incumbent_) return false;
        if (model_.objective_integral) {
            long long rounded = minimize ? static_cast<long long>(std::ceil(bound - 1e-6))
                                         : static_cast<long long>(std::floor(bound + 1e-6));
            long long inc = incumbent_exact_.num();  // integral objectives have den == 1
            return minimize ? rounded >= inc : rounded <= inc;
        }
        return minimize ? bound >= incumbent_objective_ - 1e-9
                        : bound <= incumbent_objective_ + 1e-9;
    }

    template <typename Elapsed>
    void process_node(Node node, bool minimize, Elapsed&& elapsed) {
        LinearProgram lp;
        lp.var_count = model_.var_count();
        lp.lower = node.lower;
        lp.upper = node.upper;
        lp.sense = model_.sense;
        lp.objective = model_.objective;
        lp.rows = model_.static_rows;
        lp.rows.insert(lp.rows.end(), pool_rows_.begin(), pool_rows_.end());
        SimplexSolver solver(std::move(lp));
        LpSolution sol = solver.solve();
        int fractional_rounds = 0;
        while (true) {
            if (sol.status == LpStatus::Infeasible) return;
            if (sol.status == LpStatus::Unbounded)
                throw SolverError("branch-and-cut: relaxation unbounded");
            node.bound = sol.objective + model_.objective_constant;
            if (incumbent_ && bound_is_pruned(node.bound, minimize)) return;
            if (elapsed() >= config_.time_limit_seconds) {
                push_node(std::move(node));  // preserved for the best-bound report
                return;
            }
            int branch_var = select_branch_variable(sol.values);
            if (branch_var < 0) {
                // Integral candidate: accept only if its rounded point admits
                // no violated P4 row.
                auto cuts = model_.lazy_p4
                                ? detail::run_separator(
                                      config_.separator == SeparatorKind::Exhaustive
                                          ? SeparatorKind::Exhaustive
                                          : SeparatorKind::Dp,
                                      detail::y_point(model_, sol.values, true))
                                : std::vector<P4Cut>{};
                std::vector<LpRow> rows = take_new_cuts(cuts);
                if (rows.empty()) {
                    accept_incumbent(sol.values, minimize);
                    return;
                }
                sol = solver.add_rows_and_resolve(rows);
                continue;
            }
            if (model_.lazy_p4 && config_.separator != SeparatorKind::None &&
                fractional_rounds < config_.cut_rounds_per_node) {
                auto cuts = detail::run_separator(config_.separator,
                                                  detail::y_point(model_, sol.values, false));
                std::vector<LpRow> rows = take_new_cuts(cuts);
                if (!rows.empty()) {
                    ++fractional_rounds;
                    sol = solver.add_rows_and_resolve(rows);
                    continue;
                }
            }
            branch(std::move(node), branch_var, sol.values[branch_var]);
            return;
        }
    }

    /// Most fractional variable; y variables take strict precedence over x.
    /// Returns -1 when everything is integral within tolerance.
    int select_branch_variable(const std::vector<double>& values) const {
        auto most_fractional = [&](int begin, int end) {
            int best = -1;
            double best_score = std::numeric_limits<double>::infinity();
            for (int j = begin; j < end; ++j) {
                double value = values[j];
                if (std::fabs(value - std::round(value)) <= config_.int_tol) continue;
                double score = std::fabs(value - 0.5);
                if (score < best_score - 1e-12) {
                    best_score = score;
                    best = j;
                }
            }
            return best;
        };
        int y_var = most_fractional(0, model_.y_count());
        if (y_var >= 0) return y_var;
        return most_fractional(model_.y_count(), model_.var_count());
    }

    std::vector<LpRow> take_new_cuts(const std::vector<P4Cut>& cuts) {
        std::vector<LpRow> rows;
        for (const P4Cut& cut : cuts) {
            std::uint64_t key = detail::p4_cut_key(cut, model_.instance.u_count(),
                                                   model_.instance.v_count());
            if (!pool_keys_.insert(key).second) continue;
            rows.push_back(detail::p4_cut_row(model_, cut));
            pool_rows_.push_back(rows.back());
        }
        return rows;
    }

    void branch(Node node, int var, double value) {
        Node down = node;
        down.id = next_node_id_++;
        down.upper[var] = 0.0;
        Node up = std::move(node);
        up.id = next_node_id_++;
        up.lower[var] = 1.0;
        (void)value;
        push_node(std::move(down));
        push_node(std::move(up));
    }

    void accept_incumbent(const std::vector<double>& values, bool minimize) {
        std::vector<int> y(model_.y_count());
        for (int t = 0; t < model_.y_count(); ++t) y[t] = values[t] > 0.5 ? 1 : 0;
        Biclusterization clustering =
            detail::decode_labels(model_.instance, y, model_.instance.v_count());
        EditSolution solution = make_edit_solution(model_.instance, std::move(clustering));
        Rational exact{0, 1};
        int selected = -1;
        switch (model_.kind) {
            case ProblemKind::Bgep:
            case ProblemKind::Bgeps:
                exact = Rational(solution.total_edits(), 1);
                break;
            case ProblemKind::BgepsLambda:
                exact = Rational(solution.d(), 1);
                break;
            case ProblemKind::McfpLinear: {
                for (int t = 0; t < static_cast<int>(model_.x_vars.size()); ++t)
                    if (values[model_.x_offset() + t] > 0.5) {
                        selected = t;
                        break;
                    }
                if (selected < 0)
                    throw SolverError("linearized model: no (d, a) pair selected");
                const XVarSpec& x = model_.x_vars[selected];
                if (x.d != solution.d() || x.a != solution.a())
                    throw SolverError("linearized model: selection disagrees with the decode");
                exact = x.cost;
                break;
            }
        }
        double objective = model_.kind == ProblemKind::McfpLinear
                               ? exact.to_double()
                               : static_cast<double>(exact.num());
        bool better = !incumbent_;
        if (incumbent_) {
            if (model_.objective_integral)
                better = minimize ? exact.num() < incumbent_exact_.num()
                                  : exact.num() > incumbent_exact_.num();
            else
                better = minimize ? exact < incumbent_exact_ : exact > incumbent_exact_;
        }
        if (better) {
            incumbent_ = std::move(solution);
            incumbent_y_ = std::move(y);
            incumbent_x_ = selected;
            incumbent_objective_ = objective;
            incumbent_exact_ = exact;
        }
    }

    void verify_incumbent() const {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < model_.instance.u_count(); ++i)
            for (int j = 0; j < model_.instance.v_count(); ++j)
                if (incumbent_y_[model_.y_index(i, j)]) edges.emplace_back(i, j);
        BipartiteInstance edited(model_.instance.u_count(), model_.instance.v_count(),
                                 std::move(edges));
        if (!is_bicluster_graph(edited))
            throw SolverError("branch-and-cut: incumbent is not a bicluster graph");
        if (model_.min_cols > 0 || model_.min_rows > 0)
            if (!check_size_constraints(model_.instance, incumbent_->clustering, model_.min_cols,
                                        model_.min_rows))
                throw SolverError("branch-and-cut: incumbent violates the size minima");
        if (model_.kind == ProblemKind::BgepsLambda) {
            if (incumbent_->total_edits() != model_.lambda ||
                incumbent_->d() > model_.u_opt - 1)
                throw SolverError("branch-and-cut: incumbent violates the lambda rows");
        }
    }

    ModelSpec model_;
    BncConfig config_;
    std::vector<Node> queue_;
    long long next_node_id_ = 0;
    std::vector<LpRow> pool_rows_;
    std::unordered_set<std::uint64_t> pool_keys_;
    std::optional<EditSolution> incumbent_;
    std::vector<int> incumbent_y_;
    int incumbent_x_ = -1;
    double incumbent_objective_ = 0.0;
    Rational incumbent_exact_{0, 1};
};

inline MilpResult solve(const ModelSpec& model, const BncConfig& config) {
    return BranchAndCut(model, config).run();
}

/// Objective of the root relaxation after lazy cut rounds; used to seed
/// the edit-count lower bound of the linearized model.
inline double root_relaxation_bound(const ModelSpec& model, const BncConfig& config) {
    config.validate();
    if (model.declared_infeasible)
        return model.sense == ObjSense::Minimize ? std::numeric_limits<double>::infinity()
                                                 : -std::numeric_limits<double>::infinity();
    LinearProgram lp;
    lp.var_count = model.var_count();
    lp.lower.assign(lp.var_count, 0.0);
    lp.upper.assign(lp.var_count, 1.0);
    for (auto [i, j] : model.fixed_zero) lp.upper[model.y_index(i, j)] = 0.0;
    lp.sense = model.sense;
    lp.objective = model.objective;
    lp.rows = model.static_rows;
    SimplexSolver solver(std::move(lp));
    LpSolution sol = solver.solve();
    std::unordered_set<std::uint64_t> seen;
    for (int round = 0; round < config.cut_rounds_per_node; ++round) {
        if (sol.status != LpStatus::Optimal) break;
        SeparatorKind kind = config.separator == SeparatorKind::None ? SeparatorKind::Dp
                                                                     : config.separator;
        auto cuts = detail::run_separator(kind, detail::y_point(model, sol.values, false));
        std::vector<LpRow> rows;
        for (const P4Cut& cut : cuts)
            if (seen.insert(detail::p4_cut_key(cut, model.instance.u_count(),
                                               model.instance.v_count()))
                    .second)
                rows.push_back(detail::p4_cut_row(model, cut));
        if (rows.empty()) break;
        sol = solver.add_rows_and_resolve(rows);
    }
    if (sol.status == LpStatus::Infeasible)
        return model.sense == ObjSense::Minimize ? std::numeric_limits<double>::infinity()
                                                 : -std::numeric_limits<double>::infinity();
    return sol.objective + model.objective_constant;
}

}  // namespace bicut
