#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "bicut/instance.hpp"

namespace bicut {

/// Distance value for unreachable vertex pairs.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// All-pairs shortest-path hop counts over the combined vertex set
/// (U first, then V), one breadth-first traversal per source.
inline std::vector<std::vector<int>> vertex_distances(const BipartiteInstance& instance) {
    const int u = instance.u_count(), n = instance.vertex_count();
    std::vector<std::vector<int>> adjacency(n);
    for (auto [i, j] : instance.edges()) {
        adjacency[i].push_back(u + j);
        adjacency[u + j].push_back(i);
    }
    std::vector<std::vector<int>> distance(n, std::vector<int>(n, kUnreachable));
    for (int s = 0; s < n; ++s) {
        auto& dist = distance[s];
        dist[s] = 0;
        std::queue<int> queue;
        queue.push(s);
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop();
            for (int y : adjacency[x])
                if (dist[y] == kUnreachable) {
                    dist[y] = dist[x] + 1;
                    queue.push(y);
                }
        }
    }
    return distance;
}

/// y_pk + y_qk <= 1 for a same-part pair (p, q) at distance >= 4 and a
/// vertex k of the opposite part. Indices are part-local.
struct PairCut {
    bool pair_in_u;  // true: p, q index U and k indexes V; false: the reverse
    int p;
    int q;
    int k;

    friend bool operator==(const PairCut& x, const PairCut& y) {
        return x.pair_in_u == y.pair_in_u && x.p == y.p && x.q == y.q && x.k == y.k;
    }
};

struct PreprocessStats {
    long long fixed_count = 0;
    long long fixable_total = 0;  // u_count * v_count
    long long cut_count = 0;
    long long cut_total = 0;  // m*n*(n-1)/2 + n*m*(m-1)/2, the edgeless maximum
    double fixed_percent = 0.0;
    double cut_percent = 0.0;
};

/// Distance-based model reductions. Cross-part pairs further apart than 3
/// (which by bipartite parity means distance >= 5 or unreachable) can never
/// share a bicluster in some optimal solution, so their variable is fixed
/// to 0; same-part pairs at distance >= 4 yield one pair cut per vertex of
/// the opposite part.
struct PreprocessResult {
    std::vector<std::pair<int, int>> fixed_zero;  // (i in U, j in V)
    std::vector<PairCut> pair_cuts;
    PreprocessStats stats;
};

inline PreprocessResult preprocess(const BipartiteInstance& instance) {
    const int u = instance.u_count(), v = instance.v_count();
    const auto distance = vertex_distances(instance);
    PreprocessResult result;
    for (int i = 0; i < u; ++i)
        for (int j = 0; j < v; ++j)
            if (distance[i][u + j] > 3) result.fixed_zero.emplace_back(i, j);
    for (int p = 0; p < u; ++p)
        for (int q = p + 1; q < u; ++q)
            if (distance[p][q] >= 4)
                for (int k = 0; k < v; ++k) result.pair_cuts.push_back(PairCut{true, p, q, k});
    for (int p = 0; p < v; ++p)
        for (int q = p + 1; q < v; ++q)
            if (distance[u + p][u + q] >= 4)
                for (int k = 0; k < u; ++k) result.pair_cuts.push_back(PairCut{false, p, q, k});

    auto& stats = result.stats;
    stats.fixed_count = static_cast<long long>(result.fixed_zero.size());
    stats.fixable_total = static_cast<long long>(u) * v;
    stats.cut_count = static_cast<long long>(result.pair_cuts.size());
    const long long m = u, n = v;
    stats.cut_total = m * n * (n - 1) / 2 + n * m * (m - 1) / 2;
    stats.fixed_percent = 100.0 * static_cast<double>(stats.fixed_count) /
                          static_cast<double>(stats.fixable_total);
    stats.cut_percent = stats.cut_total > 0 ? 100.0 * static_cast<double>(stats.cut_count) /
                                                  static_cast<double>(stats.cut_total)
                                            : 0.0;
    return result;
}

}  // namespace bicut
