#pragma once

#include <map>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bicut/instance.hpp"
#include "bicut/rational.hpp"

namespace bicut {

/// A total assignment of every vertex of a bipartite instance to a cluster.
///
/// Under the solution-space correspondence, a biclusterization is at the
/// same time a cell solution of the cell-formation problem: cluster c is
/// the cell whose rows are the U-vertices labelled c and whose columns are
/// the V-vertices labelled c.
///
/// Canonical form: labels are dense ({0, ..., k-1} in order of first
/// appearance over U then V), and any cluster whose members all lie in one
/// part is split into singletons. A same-part group has no internal edges,
/// so its edit cost equals that of singletons; splitting makes the
/// representation unique for equality tests.
class Biclusterization {
  public:
    /// Builds the canonical clustering from raw labels (any integers).
    Biclusterization(std::vector<int> u_labels, std::vector<int> v_labels)
        : u_labels_(std::move(u_labels)), v_labels_(std::move(v_labels)) {
        canonicalize();
    }

    const std::vector<int>& u_labels() const { return u_labels_; }
    const std::vector<int>& v_labels() const { return v_labels_; }

    int u_count() const { return static_cast<int>(u_labels_.size()); }
    int v_count() const { return static_cast<int>(v_labels_.size()); }

    int cluster_count() const { return cluster_count_; }

    friend bool operator==(const Biclusterization& x, const Biclusterization& y) {
        return x.u_labels_ == y.u_labels_ && x.v_labels_ == y.v_labels_;
    }
    friend bool operator!=(const Biclusterization& x, const Biclusterization& y) {
        return !(x == y);
    }

  private:
    void canonicalize() {
        const int u = u_count(), v = v_count();
        // Split clusters whose members lie entirely in one part.
        std::map<int, std::pair<int, int>> part_sizes;  // label -> (#U, #V)
        for (int i = 0; i < u; ++i) part_sizes[u_labels_[i]].first++;
        for (int j = 0; j < v; ++j) part_sizes[v_labels_[j]].second++;
        int fresh = 0;
        for (const auto& [label, sizes] : part_sizes) fresh = std::max(fresh, label + 1);
        for (int i = 0; i < u; ++i) {
            const auto& s = part_sizes[u_labels_[i]];
            if (s.second == 0 && s.first >= 2) u_labels_[i] = fresh++;
        }
        for (int j = 0; j < v; ++j) {
            const auto& s = part_sizes[v_labels_[j]];
            if (s.first == 0 && s.second >= 2) v_labels_[j] = fresh++;
        }
        // Dense relabel in order of first appearance, U before V.
        std::map<int, int> remap;
        int next = 0;
        auto relabel = [&](int label) {
            auto it = remap.find(label);
            if (it == remap.end()) it = remap.emplace(label, next++).first;
            return it->second;
        };
        for (int i = 0; i < u; ++i) u_labels_[i] = relabel(u_labels_[i]);
        for (int j = 0; j < v; ++j) v_labels_[j] = relabel(v_labels_[j]);
        cluster_count_ = next;
    }

    std::vector<int> u_labels_;
    std::vector<int> v_labels_;
    int cluster_count_ = 0;
};

/// One product-machine cell: the row and column members of a cluster.
struct Cell {
    std::vector<int> rows;
    std::vector<int> cols;

    friend bool operator==(const Cell& x, const Cell& y) {
        return x.rows == y.rows && x.cols == y.cols;
    }
};

/// Cells of a clustering, one per cluster id in ascending id order. The
/// union of members over all cells is the full vertex set.
inline std::vector<Cell> cells_of(const Biclusterization& clustering) {
    std::vector<Cell> cells(clustering.cluster_count());
    for (int i = 0; i < clustering.u_count(); ++i)
        cells[clustering.u_labels()[i]].rows.push_back(i);
    for (int j = 0; j < clustering.v_count(); ++j)
        cells[clustering.v_labels()[j]].cols.push_back(j);
    return cells;
}

/// Rebuilds the clustering from a cell list. Every row index in
/// [0, u_count) and column index in [0, v_count) must appear exactly once.
inline Biclusterization clustering_from_cells(const std::vector<Cell>& cells, int u_count,
                                              int v_count) {
    std::vector<int> u_labels(u_count, -1), v_labels(v_count, -1);
    for (size_t c = 0; c < cells.size(); ++c) {
        for (int i : cells[c].rows) {
            if (i < 0 || i >= u_count || u_labels[i] != -1)
                throw std::invalid_argument("cells: row index missing, repeated, or out of range");
            u_labels[i] = static_cast<int>(c);
        }
        for (int j : cells[c].cols) {
            if (j < 0 || j >= v_count || v_labels[j] != -1)
                throw std::invalid_argument("cells: column index missing, repeated, or out of range");
            v_labels[j] = static_cast<int>(c);
        }
    }
    for (int i = 0; i < u_count; ++i)
        if (u_labels[i] == -1) throw std::invalid_argument("cells: row not covered");
    for (int j = 0; j < v_count; ++j)
        if (v_labels[j] == -1) throw std::invalid_argument("cells: column not covered");
    return Biclusterization(std::move(u_labels), std::move(v_labels));
}

inline void require_matching_shape(const BipartiteInstance& instance,
                                   const Biclusterization& clustering) {
    if (clustering.u_count() != instance.u_count() || clustering.v_count() != instance.v_count())
        throw std::invalid_argument("clustering dimensions do not match instance");
}

/// Edit cost of realizing `clustering` on `instance`: the number of edge
/// additions `a` (non-edges joining equal-labelled endpoints) and deletions
/// `d` (edges crossing clusters). Equivalently, in the matrix view, `d` is
/// the count of ones outside cells and `a` the count of zeros inside cells.
inline std::pair<long long, long long> edit_cost(const BipartiteInstance& instance,
                                                 const Biclusterization& clustering) {
    require_matching_shape(instance, clustering);
    long long deletions = 0;
    for (auto [i, j] : instance.edges())
        if (clustering.u_labels()[i] != clustering.v_labels()[j]) ++deletions;
    // Pairs inside clusters minus surviving edges gives the additions.
    std::vector<long long> u_size(clustering.cluster_count(), 0),
        v_size(clustering.cluster_count(), 0);
    for (int label : clustering.u_labels()) ++u_size[label];
    for (int label : clustering.v_labels()) ++v_size[label];
    long long inside_pairs = 0;
    for (int c = 0; c < clustering.cluster_count(); ++c) inside_pairs += u_size[c] * v_size[c];
    long long additions = inside_pairs - (instance.edge_count() - deletions);
    return {additions, deletions};
}

/// True iff every connected component of the instance is a biclique, i.e.
/// the graph contains no induced path on four vertices.
inline bool is_bicluster_graph(const BipartiteInstance& instance) {
    const int u = instance.u_count(), v = instance.v_count();
    std::vector<std::vector<int>> adjacency(u + v);  // V-vertex j is node u + j
    for (auto [i, j] : instance.edges()) {
        adjacency[i].push_back(u + j);
        adjacency[u + j].push_back(i);
    }
    std::vector<int> component(u + v, -1);
    int components = 0;
    for (int s = 0; s < u + v; ++s) {
        if (component[s] != -1) continue;
        std::queue<int> queue;
        queue.push(s);
        component[s] = components;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop();
            for (int y : adjacency[x])
                if (component[y] == -1) {
                    component[y] = components;
                    queue.push(y);
                }
        }
        ++components;
    }
    std::vector<long long> comp_u(components, 0), comp_v(components, 0), comp_edges(components, 0);
    for (int i = 0; i < u; ++i) ++comp_u[component[i]];
    for (int j = 0; j < v; ++j) ++comp_v[component[u + j]];
    for (auto [i, j] : instance.edges()) ++comp_edges[component[i]];
    for (int c = 0; c < components; ++c)
        if (comp_edges[c] != comp_u[c] * comp_v[c]) return false;
    return true;
}

/// Grouping efficacy (m - d) / (m + a) of a clustering, exact. Undefined
/// (and rejected) on edgeless instances.
inline Efficacy grouping_efficacy(const BipartiteInstance& instance,
                                  const Biclusterization& clustering) {
    if (instance.edge_count() == 0)
        throw std::invalid_argument("grouping efficacy undefined for an edgeless instance");
    auto [a, d] = edit_cost(instance, clustering);
    return Efficacy(instance.edge_count() - d, instance.edge_count() + a);
}

/// True iff every cluster containing a U-vertex has at least `min_cols`
/// V-vertices and every cluster containing a V-vertex has at least
/// `min_rows` U-vertices. Vacuous when both minima are zero.
inline bool check_size_constraints(const BipartiteInstance& instance,
                                   const Biclusterization& clustering, int min_cols,
                                   int min_rows) {
    require_matching_shape(instance, clustering);
    if (min_cols < 0 || min_rows < 0)
        throw std::invalid_argument("size minima must be non-negative");
    std::vector<int> u_size(clustering.cluster_count(), 0), v_size(clustering.cluster_count(), 0);
    for (int label : clustering.u_labels()) ++u_size[label];
    for (int label : clustering.v_labels()) ++v_size[label];
    for (int c = 0; c < clustering.cluster_count(); ++c) {
        if (u_size[c] > 0 && v_size[c] < min_cols) return false;
        if (v_size[c] > 0 && u_size[c] < min_rows) return false;
    }
    return true;
}

/// A clustering together with the explicit edit operations realizing it.
struct EditSolution {
    Biclusterization clustering;
    std::vector<std::pair<int, int>> added;    // non-edges placed inside clusters
    std::vector<std::pair<int, int>> removed;  // instance edges crossing clusters

    long long a() const { return static_cast<long long>(added.size()); }
    long long d() const { return static_cast<long long>(removed.size()); }
    long long total_edits() const { return a() + d(); }
};

/// Derives the edit lists of a clustering on an instance. Applying them
/// yields a graph in which (i, j) is an edge iff the labels agree.
inline EditSolution make_edit_solution(const BipartiteInstance& instance,
                                       Biclusterization clustering) {
    require_matching_shape(instance, clustering);
    EditSolution solution{std::move(clustering), {}, {}};
    for (int i = 0; i < instance.u_count(); ++i)
        for (int j = 0; j < instance.v_count(); ++j) {
            bool together =
                solution.clustering.u_labels()[i] == solution.clustering.v_labels()[j];
            if (together && !instance.has_edge(i, j)) solution.added.emplace_back(i, j);
            if (!together && instance.has_edge(i, j)) solution.removed.emplace_back(i, j);
        }
    return solution;
}

}  // namespace bicut
