#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bicut {

enum class Rel { LessEqual, Equal, GreaterEqual };
enum class ObjSense { Minimize, Maximize };

/// One linear row: sparse coefficients, a relation, and a right-hand side.
/// Repeated variable indices are summed.
struct LpRow {
    std::vector<std::pair<int, double>> coeffs;
    Rel rel = Rel::LessEqual;
    double rhs = 0.0;
};

/// A bounded-variable linear program. Every structural variable must have
/// finite bounds, which keeps the feasible region a polytope (so no
/// unbounded rays can involve the objective).
struct LinearProgram {
    int var_count = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    ObjSense sense = ObjSense::Minimize;
    std::vector<double> objective;
    std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values;
};

/// Numerical failure that survived the anti-cycling fallback.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense-tableau simplex over bounded variables.
///
/// Layout: one logical (slack) column per row with bounds encoding the
/// relation, so the constraint system is uniformly A x + s = b. Phase 1
/// installs artificial columns only for rows whose slack value starts out
/// of bounds and minimizes their sum; phase 2 runs the primal method on the
/// real costs. `add_rows_and_resolve` warm-starts from the previous optimal
/// basis with the dual method, which is where cutting-plane rounds spend
/// their time; a cold solve of the augmented program gives identical
/// results by construction.
///
/// Pivot selection is Dantzig with smallest-index tie-breaks, switching to
/// Bland's least-index rule after a stall of 1000 degenerate steps, which
/// guarantees termination. All rules are index-based, so repeated runs on
/// identical input are bit-identical.
class SimplexSolver {
  public:
    static constexpr double kFeasTol = 1e-7;   // bound/row feasibility
    static constexpr double kOptTol = 1e-9;    // reduced-cost optimality
    static constexpr double kPivotTol = 1e-9;  // smallest acceptable pivot
    static constexpr int kDegenerateStall = 1000;

    explicit SimplexSolver(LinearProgram lp) : lp_(std::move(lp)) { validate(); }

    const LinearProgram& program() const { return lp_; }

    /// Solves from scratch. Safe to call repeatedly.
    LpSolution solve() {
        build();
        if (!phase1()) {
            solved_ = true;
            last_ = LpSolution{LpStatus::Infeasible, 0.0, {}};
            return last_;
        }
        LpStatus status = phase2();
        finish(status);
        return last_;
    }

    /// Appends rows and re-optimizes from the previous basis. Equivalent to
    /// a fresh solve of the augmented program.
    LpSolution add_rows_and_resolve(const std::vector<LpRow>& rows) {
        for (const LpRow& row : rows) validate_row(row);
        lp_.rows.insert(lp_.rows.end(), rows.begin(), rows.end());
        if (!solved_) return solve();
        if (last_.status == LpStatus::Infeasible) return last_;  // rows only shrink the region
        for (const LpRow& row : rows) append_row(row);
        if (!dual_reoptimize()) return solve();  // deterministic fallback
        if (last_.status == LpStatus::Infeasible) return last_;
        LpStatus status = phase2();  // absorbs any drift; normally zero pivots
        finish(status);
        return last_;
    }

    const LpSolution& last_solution() const { return last_; }

  private:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    void validate() const {
        if (lp_.var_count < 0) throw std::invalid_argument("lp: negative variable count");
        if (static_cast<int>(lp_.lower.size()) != lp_.var_count ||
            static_cast<int>(lp_.upper.size()) != lp_.var_count ||
            static_cast<int>(lp_.objective.size()) != lp_.var_count)
            throw std::invalid_argument("lp: bounds/objective size mismatch");
        for (int j = 0; j < lp_.var_count; ++j) {
            if (!std::isfinite(lp_.lower[j]) || !std::isfinite(lp_.upper[j]))
                throw std::invalid_argument("lp: structural bounds must be finite");
            if (lp_.lower[j] > lp_.upper[j])
                throw std::invalid_argument("lp: lower bound exceeds upper bound");
        }
        for (const LpRow& row : lp_.rows) validate_row(row);
    }

    void validate_row(const LpRow& row) const {
        for (auto [j, coef] : row.coeffs) {
            if (j < 0 || j >= lp_.var_count)
                throw std::invalid_argument("lp row: variable index out of range");
            if (!std::isfinite(coef) || !std::isfinite(row.rhs))
                throw std::invalid_argument("lp row: non-finite coefficient");
        }
    }

    // --- tableau state -----------------------------------------------------

    LinearProgram lp_;
    int nstruct_ = 0;
    int ncols_ = 0;  // structural + slack + artificial columns
    std::vector<std::vector<double>> tab_;  // rows x (ncols_ + 1); last column is B^-1 b
    std::vector<double> lb_, ub_, cost_;    // per column
    std::vector<int> basis_;                // row -> column
    std::vector<int> row_of_;               // column -> row, -1 if nonbasic
    std::vector<char> at_upper_;            // nonbasic position flag
    std::vector<double> xb_;                // basic values per row
    std::vector<double> zrow_;              // reduced costs for current phase
    std::vector<char> artificial_;          // column marker
    bool solved_ = false;
    LpSolution last_;

    int rows_count() const { return static_cast<int>(tab_.size()); }

    double col_value(int j) const {
        return row_of_[j] >= 0 ? xb_[row_of_[j]] : (at_upper_[j] ? ub_[j] : lb_[j]);
    }

    static void slack_bounds(Rel rel, double& lo, double& hi) {
        switch (rel) {
            case Rel::LessEqual: lo = 0.0; hi = kInf; break;
            case Rel::GreaterEqual: lo = -kInf; hi = 0.0; break;
            case Rel::Equal: lo = 0.0; hi = 0.0; break;
        }
    }

    void build() {
        nstruct_ = lp_.var_count;
        const int r = static_cast<int>(lp_.rows.size());
        ncols_ = nstruct_ + r;
        lb_.assign(ncols_, 0.0);
        ub_.assign(ncols_, 0.0);
        cost_.assign(ncols_, 0.0);
        artificial_.assign(ncols_, 0);
        at_upper_.assign(ncols_, 0);
        row_of_.assign(ncols_, -1);
        const double sign = lp_.sense == ObjSense::Minimize ? 1.0 : -1.0;
        for (int j = 0; j < nstruct_; ++j) {
            lb_[j] = lp_.lower[j];
            ub_[j] = lp_.upper[j];
            cost_[j] = sign * lp_.objective[j];
        }
        tab_.assign(r, std::vector<double>(ncols_ + 1, 0.0));
        basis_.resize(r);
        xb_.assign(r, 0.0);
        for (int i = 0; i < r; ++i) {
            const LpRow& row = lp_.rows[i];
            for (auto [j, coef] : row.coeffs) tab_[i][j] += coef;
            int slack = nstruct_ + i;
            tab_[i][slack] = 1.0;
            slack_bounds(row.rel, lb_[slack], ub_[slack]);
            tab_[i][ncols_] = row.rhs;
            basis_[i] = slack;
            row_of_[slack] = i;
        }
        recompute_basic_values();
    }

    void recompute_basic_values() {
        const int r = rows_count();
        for (int i = 0; i < r; ++i) {
            double value = tab_[i][ncols_];
            for (int j = 0; j < ncols_; ++j) {
                if (row_of_[j] >= 0) continue;
                double xj = at_upper_[j] ? ub_[j] : lb_[j];
                if (xj != 0.0) value -= tab_[i][j] * xj;
            }
            xb_[i] = value;
        }
    }

    void recompute_reduced_costs() {
        zrow_.assign(ncols_, 0.0);
        for (int j = 0; j < ncols_; ++j) {
            if (row_of_[j] >= 0) continue;
            double z = cost_[j];
            for (int i = 0; i < rows_count(); ++i) {
                double cb = cost_[basis_[i]];
                if (cb != 0.0) z -= cb * tab_[i][j];
            }
            zrow_[j] = z;
        }
    }

    // --- pivoting ----------------------------------------------------------

    void apply_row_operations(int prow, int pcol) {
        std::vector<double>& pivot_row = tab_[prow];
        const double pivot = pivot_row[pcol];
        const double inv = 1.0 / pivot;
        for (double& entry : pivot_row) entry *= inv;
        pivot_row[pcol] = 1.0;
        for (int i = 0; i < rows_count(); ++i) {
            if (i == prow) continue;
            double factor = tab_[i][pcol];
            if (factor == 0.0) continue;
            std::vector<double>& target = tab_[i];
            for (int j = 0; j <= ncols_; ++j) target[j] -= factor * pivot_row[j];
            target[pcol] = 0.0;
        }
        double zfactor = zrow_[pcol];
        if (zfactor != 0.0) {
            for (int j = 0; j < ncols_; ++j) zrow_[j] -= zfactor * pivot_row[j];
            zrow_[pcol] = 0.0;
        }
    }

    /// Swaps `pcol` into the basis at `prow`; the leaving variable exits at
    /// its lower bound when `leaving_at_upper` is false.
    void change_basis(int prow, int pcol, double entering_value, bool leaving_at_upper) {
        int leaving = basis_[prow];
        apply_row_operations(prow, pcol);
        basis_[prow] = pcol;
        row_of_[pcol] = prow;
        row_of_[leaving] = -1;
        at_upper_[leaving] = leaving_at_upper ? 1 : 0;
        xb_[prow] = entering_value;
    }

    /// One primal iteration. Returns 0 = optimal, 1 = pivoted/flipped,
    /// 2 = unbounded.
    int primal_step(bool bland, bool& degenerate) {
        int entering = -1;
        double best_score = kOptTol;
        for (int j = 0; j < ncols_; ++j) {
            if (row_of_[j] >= 0 || lb_[j] == ub_[j]) continue;
            double d = zrow_[j];
            bool eligible = at_upper_[j] ? d > kOptTol : d < -kOptTol;
            if (!eligible) continue;
            if (bland) {
                entering = j;
                break;
            }
            if (std::fabs(d) > best_score) {
                best_score = std::fabs(d);
                entering = j;
            }
        }
        if (entering < 0) return 0;
        const double dir = at_upper_[entering] ? -1.0 : 1.0;
        const double own_range = ub_[entering] - lb_[entering];  // may be +inf
        double best_ratio = kInf;
        int best_row = -1;
        bool leaving_at_upper = false;
        for (int i = 0; i < rows_count(); ++i) {
            double alpha = dir * tab_[i][entering];
            double ratio;
            bool hits_upper;
            int b = basis_[i];
            if (alpha > kPivotTol) {
                if (lb_[b] == -kInf) continue;
                ratio = (xb_[i] - lb_[b]) / alpha;
                hits_upper = false;
            } else if (alpha < -kPivotTol) {
                if (ub_[b] == kInf) continue;
                ratio = (ub_[b] - xb_[i]) / (-alpha);
                hits_upper = true;
            } else {
                continue;
            }
            if (ratio < 0.0) ratio = 0.0;  // degeneracy guard
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                best_row = i;
                leaving_at_upper = hits_upper;
            }
        }
        double step;
        bool flip;
        if (best_row < 0 && own_range == kInf) return 2;
        if (own_range < best_ratio - 1e-12) {
            step = own_range;
            flip = true;
        } else if (best_row >= 0) {
            step = best_ratio;
            flip = false;
        } else {
            step = own_range;
            flip = true;
        }
        degenerate = step < 1e-12;
        const double delta = dir * step;
        if (flip) {
            for (int i = 0; i < rows_count(); ++i) {
                double t = tab_[i][entering];
                if (t != 0.0) xb_[i] -= delta * t;
            }
            at_upper_[entering] = at_upper_[entering] ? 0 : 1;
            return 1;
        }
        double entering_value = (at_upper_[entering] ? ub_[entering] : lb_[entering]) + delta;
        for (int i = 0; i < rows_count(); ++i) {
            if (i == best_row) continue;
            double t = tab_[i][entering];
            if (t != 0.0) xb_[i] -= delta * t;
        }
        change_basis(best_row, entering, entering_value, leaving_at_upper);
        return 1;
    }

    /// Runs the primal loop to optimality on the current costs.
    /// Returns Optimal or Unbounded; throws past the hard pivot limit.
    LpStatus primal_loop() {
        recompute_reduced_costs();
        long long limit = 200000 + 200LL * (rows_count() + ncols_);
        int stall = 0;
        bool bland = false;
        for (long long pivots = 0;; ++pivots) {
            if (pivots > limit) throw SolverError("simplex: pivot limit exceeded");
            bool degenerate = false;
            int outcome = primal_step(bland, degenerate);
            if (outcome == 0) return LpStatus::Optimal;
            if (outcome == 2) return LpStatus::Unbounded;
            if (degenerate) {
                if (++stall >= kDegenerateStall) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
    }

    bool phase1() {
        // Install artificials for rows whose slack starts out of bounds.
        const int r = rows_count();
        for (int i = 0; i < r; ++i) {
            int slack = basis_[i];
            double value = xb_[i];
            double lo = lb_[slack], hi = ub_[slack];
            if (value >= lo - kFeasTol && value <= hi + kFeasTol) continue;
            double pinned;
            double art_coef;
            double art_value;
            if (value > hi) {
                pinned = hi;
                art_coef = 1.0;
                art_value = value - hi;
                at_upper_[slack] = 1;
            } else {
                pinned = lo;
                art_coef = -1.0;
                art_value = lo - value;
                at_upper_[slack] = 0;
            }
            (void)pinned;
            int art = ncols_++;
            lb_.push_back(0.0);
            ub_.push_back(kInf);
            cost_.push_back(0.0);
            artificial_.push_back(1);
            at_upper_.push_back(0);
            row_of_.push_back(-1);
            for (int t = 0; t < r; ++t) {
                tab_[t].insert(tab_[t].end() - 1, t == i ? art_coef : 0.0);
            }
            if (art_coef < 0)  // keep the basis column an identity column
                for (double& entry : tab_[i]) entry = -entry;
            row_of_[slack] = -1;
            basis_[i] = art;
            row_of_[art] = i;
            xb_[i] = art_value;
        }
        bool any_artificial = false;
        for (char flag : artificial_) any_artificial |= flag != 0;
        if (!any_artificial) return true;

        std::vector<double> saved_cost = cost_;
        for (int j = 0; j < ncols_; ++j) cost_[j] = artificial_[j] ? 1.0 : 0.0;
        LpStatus status = primal_loop();
        double infeasibility = 0.0;
        for (int j = 0; j < ncols_; ++j)
            if (artificial_[j]) infeasibility += col_value(j);
        cost_ = saved_cost;
        if (status != LpStatus::Optimal || infeasibility > 1e-7) return false;

        // Drive remaining artificials out of the basis; rows with no
        // eligible pivot are linearly dependent and keep a pinned artificial.
        for (int i = 0; i < rows_count(); ++i) {
            int b = basis_[i];
            if (!artificial_[b]) continue;
            int pivot_col = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (artificial_[j] || row_of_[j] >= 0) continue;
                if (std::fabs(tab_[i][j]) > 1e-7) {
                    pivot_col = j;
                    break;
                }
            }
            if (pivot_col >= 0) {
                recompute_reduced_costs();
                double entering_value = at_upper_[pivot_col] ? ub_[pivot_col] : lb_[pivot_col];
                change_basis(i, pivot_col, entering_value, false);
                int art = b;
                lb_[art] = ub_[art] = 0.0;
            }
        }
        for (int j = 0; j < ncols_; ++j)
            if (artificial_[j]) lb_[j] = ub_[j] = 0.0;
        recompute_basic_values();
        return true;
    }

    LpStatus phase2() { return primal_loop(); }

    void finish(LpStatus status) {
        recompute_basic_values();
        last_.status = status;
        last_.values.assign(nstruct_, 0.0);
        for (int j = 0; j < nstruct_; ++j) last_.values[j] = col_value(j);
        double objective = 0.0;
        for (int j = 0; j < nstruct_; ++j) objective += lp_.objective[j] * last_.values[j];
        last_.objective = objective;
        solved_ = true;
    }

    // --- warm restart ------------------------------------------------------

    void append_row(const LpRow& row) {
        const int i = rows_count();
        int slack = ncols_++;
        lb_.push_back(0.0);
        ub_.push_back(0.0);
        slack_bounds(row.rel, lb_[slack], ub_[slack]);
        cost_.push_back(0.0);
        artificial_.push_back(0);
        at_upper_.push_back(0);
        row_of_.push_back(-1);
        zrow_.push_back(0.0);
        for (auto& tableau_row : tab_) tableau_row.insert(tableau_row.end() - 1, 0.0);

        // Express the new row in the current basis: subtract multiples of the
        // pivoted rows so every basic column keeps a zero entry.
        std::vector<double> dense(ncols_ + 1, 0.0);
        for (auto [j, coef] : row.coeffs) dense[j] += coef;
        dense[slack] = 1.0;
        dense[ncols_] = row.rhs;
        for (int t = 0; t < i; ++t) {
            int b = basis_[t];
            double factor = dense[b];
            if (factor == 0.0) continue;
            const std::vector<double>& source = tab_[t];
            for (int j = 0; j <= ncols_; ++j) dense[j] -= factor * source[j];
            dense[b] = 0.0;
        }
        tab_.push_back(std::move(dense));
        basis_.push_back(slack);
        row_of_[slack] = i;
        double activity = 0.0;
        for (auto [j, coef] : row.coeffs) activity += coef * col_value(j);
        xb_.push_back(row.rhs - activity);
    }

    /// Dual simplex until primal feasible. Returns false to request a cold
    /// fallback; sets last_.status = Infeasible when the program became
    /// infeasible (a violated row with no eligible entering column).
    bool dual_reoptimize() {
        recompute_reduced_costs();
        long long limit = 200000 + 200LL * (rows_count() + ncols_);
        int stall = 0;
        bool bland = false;
        for (long long pivots = 0;; ++pivots) {
            if (pivots > limit) return false;
            int prow = -1;
            double worst = kFeasTol;
            for (int i = 0; i < rows_count(); ++i) {
                int b = basis_[i];
                double below = lb_[b] == -kInf ? 0.0 : lb_[b] - xb_[i];
                double above = ub_[b] == kInf ? 0.0 : xb_[i] - ub_[b];
                double violation = std::max(below, above);
                if (violation > worst) {
                    worst = violation;
                    prow = i;
                    if (bland) break;
                }
            }
            if (prow < 0) return true;  // primal feasible
            int b = basis_[prow];
            bool below = lb_[b] != -kInf && xb_[prow] < lb_[b];
            double target = below ? lb_[b] : ub_[b];
            int entering = -1;
            double best_ratio = kInf;
            for (int j = 0; j < ncols_; ++j) {
                if (row_of_[j] >= 0 || lb_[j] == ub_[j]) continue;
                double alpha = tab_[prow][j];
                bool eligible;
                if (below)
                    eligible = at_upper_[j] ? alpha > kPivotTol : alpha < -kPivotTol;
                else
                    eligible = at_upper_[j] ? alpha < -kPivotTol : alpha > kPivotTol;
                if (!eligible) continue;
                double ratio = std::fabs(zrow_[j]) / std::fabs(alpha);
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (entering < 0 || j < entering))) {
                    best_ratio = ratio;
                    entering = j;
                }
            }
            if (entering < 0) {
                last_.status = LpStatus::Infeasible;
                last_.values.clear();
                last_.objective = 0.0;
                solved_ = true;
                return true;
            }
            double delta = (xb_[prow] - target) / tab_[prow][entering];
            for (int i = 0; i < rows_count(); ++i) {
                if (i == prow) continue;
                double t = tab_[i][entering];
                if (t != 0.0) xb_[i] -= delta * t;
            }
            double entering_value = (at_upper_[entering] ? ub_[entering] : lb_[entering]) + delta;
            change_basis(prow, entering, entering_value, !below);
            if (std::fabs(delta) < 1e-12) {
                if (++stall >= kDegenerateStall) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
    }
};

/// Solves a bounded-variable LP to proven optimality (or reports
/// infeasible/unbounded). Deterministic for identical input.
inline LpSolution solve(const LinearProgram& lp) { return SimplexSolver(lp).solve(); }

/// Solves `lp` plus `new_rows`. `previous` must be the optimal solution of
/// `lp` alone; the result is identical to a from-scratch solve of the
/// augmented program. (The stateful SimplexSolver::add_rows_and_resolve is
/// the warm-started path used inside cutting-plane loops.)
inline LpSolution resolve_with_new_rows(const LinearProgram& lp, const LpSolution& previous,
                                        const std::vector<LpRow>& new_rows) {
    (void)previous;
    LinearProgram augmented = lp;
    augmented.rows.insert(augmented.rows.end(), new_rows.begin(), new_rows.end());
    return SimplexSolver(std::move(augmented)).solve();
}

}  // namespace bicut
