#pragma once

#include <utility>
#include <vector>

#include "trifactor/board.hpp"
#include "trifactor/client_graph.hpp"

namespace testutil {

struct Position {
    trifactor::Board board;
    trifactor::ClientGraph graph;

    explicit Position(int n) : board(n), graph(n) {}
};

// Builds a mid-game position directly: client edges added in the given
// order (1-based rounds), waiter edges claimed afterwards.
inline Position make_position(int n, const std::vector<std::pair<int, int>>& client_edges,
                              const std::vector<std::pair<int, int>>& waiter_edges = {}) {
    Position p(n);
    int round = 0;
    for (const auto& [a, b] : client_edges) {
        const auto e = trifactor::encode_edge(n, a, b);
        p.graph.add_edge(e, ++round);
        p.board.claim(e, trifactor::EdgeState::Client);
    }
    for (const auto& [a, b] : waiter_edges)
        p.board.claim(trifactor::encode_edge(n, a, b), trifactor::EdgeState::Waiter);
    return p;
}

struct XorShift {
    std::uint64_t x;
    explicit XorShift(std::uint64_t seed) : x(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t operator()() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return x;
    }
    std::uint64_t below(std::uint64_t n) { return (*this)() % n; }
};

}  // namespace testutil
