#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trifactor {

using Vertex = int;

// Canonical index of an unordered vertex pair {u,v}, 0 <= u < v < n,
// in colexicographic order: index = v(v-1)/2 + u.
struct EdgeId {
    std::int32_t index{-1};

    constexpr EdgeId() = default;
    constexpr explicit EdgeId(std::int32_t i) : index(i) {}

    constexpr bool operator==(const EdgeId&) const = default;
    constexpr auto operator<=>(const EdgeId&) const = default;
};

enum class EdgeState : std::uint8_t { Unclaimed, Waiter, Client };

// Hard cap for the engine: desk-scale boards only. Keeps per-vertex
// adjacency in a single 64-bit word.
inline constexpr int kMaxVertices = 64;

constexpr std::int32_t edge_count_for(int n) {
    return static_cast<std::int32_t>(n) * (n - 1) / 2;
}

inline EdgeId encode_edge(int n, Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw std::invalid_argument("encode_edge: invalid vertex pair");
    if (u > v) std::swap(u, v);
    return EdgeId{static_cast<std::int32_t>(v) * (v - 1) / 2 + u};
}

// Colex decoding needs no board size: v is the largest vertex with
// v(v-1)/2 <= index.
inline std::pair<Vertex, Vertex> decode_edge(EdgeId e) {
    if (e.index < 0) throw std::invalid_argument("decode_edge: invalid edge id");
    Vertex v = 1;
    while (static_cast<std::int64_t>(v + 1) * v / 2 <= e.index) ++v;
    Vertex u = e.index - v * (v - 1) / 2;
    return {u, v};
}

// Claim-state storage for the edge set of K_n. States move only
// Unclaimed -> Waiter or Unclaimed -> Client.
class Board {
public:
    explicit Board(int n) : n_(n) {
        if (n < 1 || n > kMaxVertices)
            throw std::invalid_argument("Board: n must be in [1, 64]");
        const auto m = edge_count_for(n);
        states_.assign(m, EdgeState::Unclaimed);
        pool_.reserve(m);
        slot_.assign(m, -1);
        for (std::int32_t i = 0; i < m; ++i) {
            pool_.push_back(EdgeId{i});
            slot_[i] = i;
        }
    }

    int n() const { return n_; }
    std::int32_t edge_count() const { return static_cast<std::int32_t>(states_.size()); }

    EdgeState state(EdgeId e) const {
        check(e);
        return states_[e.index];
    }

    void claim(EdgeId e, EdgeState who) {
        check(e);
        if (who == EdgeState::Unclaimed)
            throw std::invalid_argument("Board::claim: cannot unclaim an edge");
        if (states_[e.index] != EdgeState::Unclaimed)
            throw std::invalid_argument("Board::claim: edge already claimed");
        states_[e.index] = who;
        if (who == EdgeState::Client) ++client_count_; else ++waiter_count_;
        // swap-remove from the unclaimed pool
        const auto at = slot_[e.index];
        const EdgeId last = pool_.back();
        pool_[at] = last;
        slot_[last.index] = at;
        pool_.pop_back();
        slot_[e.index] = -1;
    }

    std::int32_t client_count() const { return client_count_; }
    std::int32_t waiter_count() const { return waiter_count_; }
    std::int32_t unclaimed_count() const { return static_cast<std::int32_t>(pool_.size()); }

    // Unclaimed edges in ascending index order.
    std::vector<EdgeId> unclaimed_edges() const {
        std::vector<EdgeId> out;
        out.reserve(pool_.size());
        for (std::int32_t i = 0; i < edge_count(); ++i)
            if (states_[i] == EdgeState::Unclaimed) out.push_back(EdgeId{i});
        return out;
    }

    // Unordered view of the unclaimed pool; order depends on claim history
    // but is deterministic for a fixed play sequence. O(1) removal backing
    // for uniform sampling.
    const std::vector<EdgeId>& unclaimed_pool() const { return pool_; }

private:
    void check(EdgeId e) const {
        if (e.index < 0 || e.index >= edge_count())
            throw std::invalid_argument("Board: edge id out of range");
    }

    int n_;
    std::vector<EdgeState> states_;
    std::vector<EdgeId> pool_;
    std::vector<std::int32_t> slot_;
    std::int32_t client_count_ = 0;
    std::int32_t waiter_count_ = 0;
};

}  // namespace trifactor
