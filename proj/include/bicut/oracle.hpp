#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bicut/clustering.hpp"
#include "bicut/instance.hpp"
#include "bicut/rational.hpp"

namespace bicut {

/// Enumerates every set partition of {0, ..., n-1} exactly once via
/// restricted growth strings: labels[0] = 0 and each subsequent label is at
/// most one greater than the maximum before it.
class PartitionIterator {
  public:
    explicit PartitionIterator(int n) : labels_(n, 0), prefix_max_(n, 0), fresh_(true) {
        if (n < 1) throw std::invalid_argument("PartitionIterator: need at least one item");
        for (int i = 1; i < n; ++i) prefix_max_[i] = 0;  // all-zero string first
    }

    /// Advances to the next partition; returns false after the last one.
    /// The first call yields the all-in-one-cluster partition.
    bool next() {
        if (fresh_) {
            fresh_ = false;
            return true;
        }
        const int n = static_cast<int>(labels_.size());
        int i = n - 1;
        while (i > 0 && labels_[i] == prefix_max_[i] + 1) --i;
        if (i == 0) return false;
        ++labels_[i];
        for (int k = i + 1; k < n; ++k) {
            labels_[k] = 0;
            prefix_max_[k] = std::max(prefix_max_[k - 1], labels_[k - 1]);
        }
        return true;
    }

    const std::vector<int>& labels() const { return labels_; }

  private:
    std::vector<int> labels_;
    std::vector<int> prefix_max_;  // prefix_max_[i] = max(labels_[0..i-1]), prefix_max_[0] = 0
    bool fresh_;
};

/// Upper bound on the vertex count the brute-force search accepts; Bell
/// numbers explode beyond this.
inline constexpr int kOracleVertexLimit = 12;

namespace detail {

inline void check_oracle_size(const BipartiteInstance& instance) {
    if (instance.vertex_count() > kOracleVertexLimit)
        throw std::invalid_argument("oracle: instance exceeds " +
                                    std::to_string(kOracleVertexLimit) + " vertices");
}

/// True iff a raw partition over U then V is already canonical, i.e. has no
/// same-part cluster of two or more vertices. Restricting the enumeration
/// to such partitions visits each canonical biclusterization exactly once,
/// with no duplicate-suppression bookkeeping.
inline bool is_canonical_partition(const std::vector<int>& labels, int u_count) {
    int clusters = 0;
    for (int label : labels) clusters = std::max(clusters, label + 1);
    std::vector<int> u_size(clusters, 0), v_size(clusters, 0);
    for (size_t t = 0; t < labels.size(); ++t)
        ++(t < static_cast<size_t>(u_count) ? u_size[labels[t]] : v_size[labels[t]]);
    for (int c = 0; c < clusters; ++c)
        if ((u_size[c] >= 2 && v_size[c] == 0) || (v_size[c] >= 2 && u_size[c] == 0)) return false;
    return true;
}

}  // namespace detail

/// Calls `visit(clustering)` once for every canonical biclusterization of
/// the instance's vertex set that satisfies the size minima.
template <typename Visitor>
void for_each_clustering(const BipartiteInstance& instance, int min_cols, int min_rows,
                         Visitor&& visit) {
    detail::check_oracle_size(instance);
    const int u = instance.u_count();
    PartitionIterator partitions(instance.vertex_count());
    while (partitions.next()) {
        const auto& labels = partitions.labels();
        if (!detail::is_canonical_partition(labels, u)) continue;
        Biclusterization clustering(std::vector<int>(labels.begin(), labels.begin() + u),
                                    std::vector<int>(labels.begin() + u, labels.end()));
        if (min_cols > 0 || min_rows > 0)
            if (!check_size_constraints(instance, clustering, min_cols, min_rows)) continue;
        visit(clustering);
    }
}

/// Exhaustive minimum of the edit count over all biclusterizations.
/// First-found solution among ties in enumeration order.
inline std::pair<long long, EditSolution> brute_force_bgep(const BipartiteInstance& instance) {
    long long best_cost = -1;
    std::optional<Biclusterization> best;
    for_each_clustering(instance, 0, 0, [&](const Biclusterization& clustering) {
        auto [a, d] = edit_cost(instance, clustering);
        if (best_cost < 0 || a + d < best_cost) {
            best_cost = a + d;
            best = clustering;
        }
    });
    return {best_cost, make_edit_solution(instance, *best)};
}

/// Exhaustive maximum grouping efficacy over size-feasible
/// biclusterizations. Ties broken by fewer total edits, then by
/// lexicographically smaller canonical label vectors.
inline std::pair<Efficacy, EditSolution> brute_force_mcfp(const BipartiteInstance& instance,
                                                          int min_cols, int min_rows) {
    if (instance.edge_count() == 0)
        throw std::invalid_argument("oracle: grouping efficacy needs at least one edge");
    const long long m = instance.edge_count();
    std::optional<Efficacy> best_eff;
    long long best_edits = 0;
    std::optional<Biclusterization> best;
    for_each_clustering(instance, min_cols, min_rows, [&](const Biclusterization& clustering) {
        auto [a, d] = edit_cost(instance, clustering);
        Efficacy eff(m - d, m + a);
        bool better = false;
        if (!best_eff || eff > *best_eff) {
            better = true;
        } else if (eff == *best_eff) {
            if (a + d < best_edits) {
                better = true;
            } else if (a + d == best_edits) {
                better = clustering.u_labels() < best->u_labels() ||
                         (clustering.u_labels() == best->u_labels() &&
                          clustering.v_labels() < best->v_labels());
            }
        }
        if (better) {
            best_eff = eff;
            best_edits = a + d;
            best = clustering;
        }
    });
    if (!best)
        throw std::invalid_argument("oracle: no clustering satisfies the size minima");
    return {*best_eff, make_edit_solution(instance, *best)};
}

}  // namespace bicut
