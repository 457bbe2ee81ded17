#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "bicut/clustering.hpp"
#include "bicut/instance.hpp"

namespace bicut {

/// Minimum violation for a separated row to be emitted. Kept above the LP
/// feasibility tolerance so rows already in the program are never re-found.
inline constexpr double kCutViolationTol = 1e-6;

/// A fractional point over the y variables: values[i][j] in [0, 1] is the
/// relaxation value of the edge (i in U, j in V).
class FractionalPoint {
  public:
    FractionalPoint(int u_count, int v_count, double fill = 0.0)
        : u_count_(u_count), v_count_(v_count),
          values_(static_cast<size_t>(u_count) * v_count, fill) {
        if (u_count < 1 || v_count < 1)
            throw std::invalid_argument("FractionalPoint: empty dimension");
    }

    int u_count() const { return u_count_; }
    int v_count() const { return v_count_; }

    double at(int i, int j) const { return values_[static_cast<size_t>(i) * v_count_ + j]; }
    void set(int i, int j, double value) {
        values_[static_cast<size_t>(i) * v_count_ + j] = value;
    }

    /// The 0/1 indicator point of an instance's edge set.
    static FractionalPoint indicator(const BipartiteInstance& instance) {
        FractionalPoint point(instance.u_count(), instance.v_count());
        for (auto [i, j] : instance.edges()) point.set(i, j, 1.0);
        return point;
    }

  private:
    int u_count_;
    int v_count_;
    std::vector<double> values_;
};

/// A violated constraint y_il + y_kj + y_kl <= 2 + y_ij over a path
/// i (in U) - l (in V) - k (in U) - j (in V) plus the implied chord (i, j).
struct P4Cut {
    int i;  // U endpoint of the implied edge
    int k;  // inner U vertex, k != i
    int j;  // V endpoint of the implied edge
    int l;  // inner V vertex, l != j
    double violation;  // y*_il + y*_kj + y*_kl - y*_ij - 2
};

/// Per-pair separation outcome: the maximum three-edge path value
/// y_il + y_kj + y_kl over k != i, l != j, with the attaining quadruple.
/// k = l = -1 when no candidate exists (a part has fewer than two vertices).
struct SeparationEntry {
    double value = -std::numeric_limits<double>::infinity();
    int k = -1;
    int l = -1;
};

namespace detail {

inline std::vector<P4Cut> cuts_from_table(const FractionalPoint& point,
                                          const std::vector<SeparationEntry>& table) {
    std::vector<P4Cut> cuts;
    const int u = point.u_count(), v = point.v_count();
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j) {
            const SeparationEntry& entry = table[static_cast<size_t>(i) * v + j];
            if (entry.k < 0) continue;
            double violation = entry.value - point.at(i, j) - 2.0;
            if (violation > kCutViolationTol)
                cuts.push_back(P4Cut{i, entry.k, j, entry.l, violation});
        }
    return cuts;
}

}  // namespace detail

/// Dynamic-programming separation over a complete weighted bipartite graph
/// with weights y*. For every ordered pair (i, j) it finds the maximum-cost
/// path from i to j with two internal vertices (k in U, l in V), which
/// identifies the most violated P4 constraint for that pair.
///
/// Tables, in path-length order:
///   best2 / second2 over (i, k): max and second max of y_il + y_kl over l,
///       with their argmaxes, so that for any forbidden j the maximum over
///       V \ {j} is available in O(1);
///   best3 over (i, j): max over k != i of (two-edge cost avoiding j) + y_kj.
///
/// Runs in O(|U|^2 |V|) against O(|U|^2 |V|^2) for plain enumeration.
/// Argmax ties resolve to the smallest index.
inline std::vector<SeparationEntry> separation_table_dp(const FractionalPoint& point) {
    const int u = point.u_count(), v = point.v_count();
    std::vector<SeparationEntry> table(static_cast<size_t>(u) * v);
    if (u < 2 || v < 2) return table;  // no P4 fits

    const double kNegInf = -std::numeric_limits<double>::infinity();
    std::vector<double> weights(static_cast<size_t>(u) * v);
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j) weights[static_cast<size_t>(i) * v + j] = point.at(i, j);
    // best2[i][k]: value/argmax of the best intermediate column for the pair
    // (i, k); second2 the runner-up, so any forbidden column resolves in
    // O(1). The tables are symmetric in (i, k).
    std::vector<double> best2(static_cast<size_t>(u) * u, kNegInf),
        second2(static_cast<size_t>(u) * u, kNegInf);
    std::vector<int> best2_col(static_cast<size_t>(u) * u, -1),
        second2_col(static_cast<size_t>(u) * u, -1);
    for (int i = 0; i < u; ++i) {
        const double* yi = &weights[static_cast<size_t>(i) * v];
        for (int k = i + 1; k < u; ++k) {
            const double* yk = &weights[static_cast<size_t>(k) * v];
            double top = kNegInf, runner = kNegInf;
            int top_col = -1, runner_col = -1;
            for (int l = 0; l < v; ++l) {
                double cost = yi[l] + yk[l];
                if (cost > top) {
                    runner = top;
                    runner_col = top_col;
                    top = cost;
                    top_col = l;
                } else if (cost > runner) {
                    runner = cost;
                    runner_col = l;
                }
            }
            const size_t ik = static_cast<size_t>(i) * u + k;
            const size_t ki = static_cast<size_t>(k) * u + i;
            best2[ik] = best2[ki] = top;
            best2_col[ik] = best2_col[ki] = top_col;
            second2[ik] = second2[ki] = runner;
            second2_col[ik] = second2_col[ki] = runner_col;
        }
    }
    // Three-edge maxima: for each source row i, sweep the inner vertex k
    // once and fold its contribution into every target column j, so the
    // per-pair table entries stay in registers across the j loop.
    for (int i = 0; i < u; ++i) {
        SeparationEntry* row_out = &table[static_cast<size_t>(i) * v];
        const size_t base = static_cast<size_t>(i) * u;
        for (int k = 0; k < u; ++k) {
            if (k == i) continue;
            const double top = best2[base + k];
            const double runner = second2[base + k];
            const int top_col = best2_col[base + k];
            const int runner_col = second2_col[base + k];
            const double* yk = &weights[static_cast<size_t>(k) * v];
            for (int j = 0; j < v; ++j) {
                // Two-edge cost from i to k avoiding column j.
                const bool use_top = top_col != j;
                double cost = (use_top ? top : runner) + yk[j];
                if (cost > row_out[j].value) {
                    row_out[j].value = cost;
                    row_out[j].k = k;
                    row_out[j].l = use_top ? top_col : runner_col;
                }
            }
        }
    }
    return table;
}

/// Reference separation by full enumeration of (k, l) per pair; same
/// semantics as the DP, O(|U|^2 |V|^2).
inline std::vector<SeparationEntry> separation_table_exhaustive(const FractionalPoint& point) {
    const int u = point.u_count(), v = point.v_count();
    std::vector<SeparationEntry> table(static_cast<size_t>(u) * v);
    if (u < 2 || v < 2) return table;
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j) {
            SeparationEntry entry;
            for (int k = 0; k < u; ++k) {
                if (k == i) continue;
                for (int l = 0; l < v; ++l) {
                    if (l == j) continue;
                    double cost = point.at(i, l) + point.at(k, j) + point.at(k, l);
                    if (cost > entry.value) {
                        entry.value = cost;
                        entry.k = k;
                        entry.l = l;
                    }
                }
            }
            table[static_cast<size_t>(i) * v + j] = entry;
        }
    return table;
}

/// At most one cut per (i, j): the most violated constraint of the family,
/// emitted iff its violation exceeds kCutViolationTol.
inline std::vector<P4Cut> separate_dp(const FractionalPoint& point) {
    return detail::cuts_from_table(point, separation_table_dp(point));
}

inline std::vector<P4Cut> separate_exhaustive(const FractionalPoint& point) {
    return detail::cuts_from_table(point, separation_table_exhaustive(point));
}

}  // namespace bicut
