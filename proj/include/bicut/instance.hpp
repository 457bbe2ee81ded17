#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bicut {

/// A bipartite graph over two vertex parts U (rows / products) and V
/// (columns / machines), equivalently a binary part-machine matrix whose
/// entry (i, j) is 1 iff the edge (i, j) exists. Immutable after
/// construction; edges are kept sorted row-major and deduplicated checks
/// happen up front so every consumer can assume a well-formed graph.
class BipartiteInstance {
  public:
    BipartiteInstance(int u_count, int v_count, std::vector<std::pair<int, int>> edges,
                      std::string name = "")
        : u_count_(u_count), v_count_(v_count), edges_(std::move(edges)), name_(std::move(name)) {
        if (u_count_ <= 0 || v_count_ <= 0)
            throw std::invalid_argument("BipartiteInstance: both parts must be non-empty");
        std::sort(edges_.begin(), edges_.end());
        adj_.assign(static_cast<size_t>(u_count_) * v_count_, 0);
        for (size_t e = 0; e < edges_.size(); ++e) {
            auto [i, j] = edges_[e];
            if (i < 0 || i >= u_count_ || j < 0 || j >= v_count_)
                throw std::invalid_argument("BipartiteInstance: edge index out of range");
            if (e > 0 && edges_[e] == edges_[e - 1])
                throw std::invalid_argument("BipartiteInstance: duplicate edge");
            adj_[static_cast<size_t>(i) * v_count_ + j] = 1;
        }
    }

    int u_count() const { return u_count_; }
    int v_count() const { return v_count_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::string& name() const { return name_; }

    bool has_edge(int i, int j) const {
        return adj_[static_cast<size_t>(i) * v_count_ + j] != 0;
    }

    /// Total number of vertices, U listed before V in any combined indexing.
    int vertex_count() const { return u_count_ + v_count_; }

    friend bool operator==(const BipartiteInstance& x, const BipartiteInstance& y) {
        return x.u_count_ == y.u_count_ && x.v_count_ == y.v_count_ && x.edges_ == y.edges_;
    }

  private:
    int u_count_;
    int v_count_;
    std::vector<std::pair<int, int>> edges_;
    std::string name_;
    std::vector<std::uint8_t> adj_;
};

}  // namespace bicut
