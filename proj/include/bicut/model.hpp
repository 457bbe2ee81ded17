#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "bicut/instance.hpp"
#include "bicut/lp.hpp"
#include "bicut/preprocess.hpp"
#include "bicut/rational.hpp"

namespace bicut {

enum class ProblemKind { Bgep, Bgeps, BgepsLambda, McfpLinear };

/// One entry of the edit-count block of the linearized model: a binary
/// variable selecting "exactly d deletions and a additions" at objective
/// cost (m - d) / (m + a).
struct XVarSpec {
    long long d = 0;
    long long a = 0;
    Rational cost{0, 1};
};

/// A 0/1 model over the edge variables y_ij (row-major over U x V),
/// optionally followed by the x block of the linearized formulation.
/// The P4 constraint family is attached lazily by the branch-and-cut
/// solver; everything else lives in `static_rows`.
struct ModelSpec {
    BipartiteInstance instance;
    ProblemKind kind = ProblemKind::Bgep;
    ObjSense sense = ObjSense::Minimize;
    std::vector<double> objective;  // y block then x block
    double objective_constant = 0.0;
    bool objective_integral = true;
    std::vector<LpRow> static_rows;
    std::vector<XVarSpec> x_vars;
    std::vector<std::pair<int, int>> fixed_zero;  // y variables pinned to 0
    bool lazy_p4 = true;
    bool declared_infeasible = false;
    int min_cols = 0;
    int min_rows = 0;
    long long lambda = -1;
    long long u_opt = -1;

    int y_count() const { return instance.u_count() * instance.v_count(); }
    int y_index(int i, int j) const { return i * instance.v_count() + j; }
    int x_offset() const { return y_count(); }
    int var_count() const { return y_count() + static_cast<int>(x_vars.size()); }
};

namespace detail {

inline void add_size_rows(ModelSpec& model, int min_cols, int min_rows) {
    const auto& instance = model.instance;
    if (min_cols < 0 || min_rows < 0)
        throw std::invalid_argument("size minima must be non-negative");
    if (min_cols > instance.v_count() || min_rows > instance.u_count())
        throw std::invalid_argument("size minima exceed the instance dimensions");
    model.min_cols = min_cols;
    model.min_rows = min_rows;
    if (min_cols > 0)
        for (int i = 0; i < instance.u_count(); ++i) {
            LpRow row;
            for (int j = 0; j < instance.v_count(); ++j)
                row.coeffs.emplace_back(model.y_index(i, j), 1.0);
            row.rel = Rel::GreaterEqual;
            row.rhs = min_cols;
            model.static_rows.push_back(std::move(row));
        }
    if (min_rows > 0)
        for (int j = 0; j < instance.v_count(); ++j) {
            LpRow row;
            for (int i = 0; i < instance.u_count(); ++i)
                row.coeffs.emplace_back(model.y_index(i, j), 1.0);
            row.rel = Rel::GreaterEqual;
            row.rhs = min_rows;
            model.static_rows.push_back(std::move(row));
        }
}

/// Objective coefficients of the edit count: deletions contribute -y per
/// edge, additions +y per non-edge, plus the constant m.
inline void set_edit_count_objective(ModelSpec& model) {
    const auto& instance = model.instance;
    model.objective.assign(model.y_count(), 0.0);
    for (int i = 0; i < instance.u_count(); ++i)
        for (int j = 0; j < instance.v_count(); ++j)
            model.objective[model.y_index(i, j)] = instance.has_edge(i, j) ? -1.0 : 1.0;
    model.objective_constant = static_cast<double>(instance.edge_count());
    model.objective_integral = true;
    model.sense = ObjSense::Minimize;
}

}  // namespace detail

/// Minimum number of edge edits turning the instance into a bicluster
/// graph; only the lazy P4 family constrains the edge variables.
inline ModelSpec build_bgep(const BipartiteInstance& instance) {
    ModelSpec model{instance};
    model.kind = ProblemKind::Bgep;
    detail::set_edit_count_objective(model);
    return model;
}

/// BGEP plus per-vertex degree minima: every U-vertex must end up adjacent
/// to at least `min_cols` V-vertices and vice versa.
inline ModelSpec build_bgeps(const BipartiteInstance& instance, int min_cols, int min_rows) {
    ModelSpec model{instance};
    model.kind = ProblemKind::Bgeps;
    detail::set_edit_count_objective(model);
    detail::add_size_rows(model, min_cols, min_rows);
    return model;
}

/// The parameterized variant: among solutions with exactly `lambda` edits
/// (and the size minima), minimize the number of deletions, restricted to
/// strictly fewer than `u_opt` deletions. `u_opt` = 0 leaves no admissible
/// solution, so the model is marked infeasible without solving.
inline ModelSpec build_bgeps_lambda(const BipartiteInstance& instance, int min_cols, int min_rows,
                                    long long lambda, long long u_opt) {
    if (lambda < 0 || u_opt < 0)
        throw std::invalid_argument("bgeps(lambda): lambda and u_opt must be non-negative");
    ModelSpec model{instance};
    model.kind = ProblemKind::BgepsLambda;
    model.lambda = lambda;
    model.u_opt = u_opt;
    const long long m = instance.edge_count();
    // min deletions = m - sum_{edges} y
    model.objective.assign(model.y_count(), 0.0);
    for (auto [i, j] : instance.edges()) model.objective[model.y_index(i, j)] = -1.0;
    model.objective_constant = static_cast<double>(m);
    model.objective_integral = true;
    model.sense = ObjSense::Minimize;
    detail::add_size_rows(model, min_cols, min_rows);
    if (u_opt == 0) {
        model.declared_infeasible = true;  // deletions <= -1 is vacuous
        return model;
    }
    // sum_{+}(1-y) + sum_{-} y = lambda  <=>  sum_{-} y - sum_{+} y = lambda - m
    LpRow total;
    for (int i = 0; i < instance.u_count(); ++i)
        for (int j = 0; j < instance.v_count(); ++j)
            total.coeffs.emplace_back(model.y_index(i, j), instance.has_edge(i, j) ? -1.0 : 1.0);
    total.rel = Rel::Equal;
    total.rhs = static_cast<double>(lambda - m);
    model.static_rows.push_back(std::move(total));
    // sum_{+}(1-y) <= u_opt - 1  <=>  sum_{+} y >= m - u_opt + 1
    LpRow deletions;
    for (auto [i, j] : instance.edges()) deletions.coeffs.emplace_back(model.y_index(i, j), 1.0);
    deletions.rel = Rel::GreaterEqual;
    deletions.rhs = static_cast<double>(m - u_opt + 1);
    model.static_rows.push_back(std::move(deletions));
    return model;
}

/// The linearized efficacy model: one x variable per admitted (d, a) pair,
/// exactly one selected, with linking rows equating the selection to the
/// deletion and addition counts expressed in y.
inline ModelSpec build_mcfp_linear(const BipartiteInstance& instance, int min_cols, int min_rows,
                                   const std::vector<XVarSpec>& f_set) {
    if (f_set.empty()) throw std::invalid_argument("mcfp linear: empty (d, a) candidate set");
    ModelSpec model{instance};
    model.kind = ProblemKind::McfpLinear;
    model.x_vars = f_set;
    model.sense = ObjSense::Maximize;
    model.objective.assign(model.var_count(), 0.0);
    for (size_t t = 0; t < f_set.size(); ++t)
        model.objective[model.x_offset() + static_cast<int>(t)] = f_set[t].cost.to_double();
    model.objective_constant = 0.0;
    model.objective_integral = false;
    detail::add_size_rows(model, min_cols, min_rows);
    const long long m = instance.edge_count();
    LpRow convexity;  // sum x = 1
    for (size_t t = 0; t < f_set.size(); ++t)
        convexity.coeffs.emplace_back(model.x_offset() + static_cast<int>(t), 1.0);
    convexity.rel = Rel::Equal;
    convexity.rhs = 1.0;
    model.static_rows.push_back(std::move(convexity));
    // deletions: sum_{+}(1 - y) = sum d x  <=>  sum_{+} y + sum d x = m
    LpRow deletions;
    for (auto [i, j] : instance.edges()) deletions.coeffs.emplace_back(model.y_index(i, j), 1.0);
    for (size_t t = 0; t < f_set.size(); ++t)
        deletions.coeffs.emplace_back(model.x_offset() + static_cast<int>(t),
                                      static_cast<double>(f_set[t].d));
    deletions.rel = Rel::Equal;
    deletions.rhs = static_cast<double>(m);
    model.static_rows.push_back(std::move(deletions));
    // additions: sum_{-} y = sum a x
    LpRow additions;
    for (int i = 0; i < instance.u_count(); ++i)
        for (int j = 0; j < instance.v_count(); ++j)
            if (!instance.has_edge(i, j))
                additions.coeffs.emplace_back(model.y_index(i, j), 1.0);
    for (size_t t = 0; t < f_set.size(); ++t)
        additions.coeffs.emplace_back(model.x_offset() + static_cast<int>(t),
                                      -static_cast<double>(f_set[t].a));
    additions.rel = Rel::Equal;
    additions.rhs = 0.0;
    model.static_rows.push_back(std::move(additions));
    return model;
}

/// Installs a preprocessing result into a BGEP model: distance fixings pin
/// variable bounds to zero and pair cuts join the static rows. The
/// reductions are justified for the plain edit-count objective only.
inline void apply_preprocess(ModelSpec& model, const PreprocessResult& result) {
    if (model.kind != ProblemKind::Bgep)
        throw std::invalid_argument("preprocessing reductions apply to the BGEP model only");
    for (auto [i, j] : result.fixed_zero) model.fixed_zero.emplace_back(i, j);
    for (const PairCut& cut : result.pair_cuts) {
        LpRow row;
        if (cut.pair_in_u) {
            row.coeffs.emplace_back(model.y_index(cut.p, cut.k), 1.0);
            row.coeffs.emplace_back(model.y_index(cut.q, cut.k), 1.0);
        } else {
            row.coeffs.emplace_back(model.y_index(cut.k, cut.p), 1.0);
            row.coeffs.emplace_back(model.y_index(cut.k, cut.q), 1.0);
        }
        row.rel = Rel::LessEqual;
        row.rhs = 1.0;
        model.static_rows.push_back(std::move(row));
    }
}

}  // namespace bicut
