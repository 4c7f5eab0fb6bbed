#include <doctest.h>

#include <set>

#include "trifactor/board.hpp"

using namespace trifactor;

TEST_CASE("edge encoding follows the fixed pair ordering") {
    CHECK(encode_edge(6, 0, 1).index == 0);
    CHECK(encode_edge(6, 1, 0).index == 0);

    // enumerate all 15 pairs of K_6 in colex order and index them
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex v = 0; v < 6; ++v)
        for (Vertex u = 0; u < v; ++u) pairs.emplace_back(u, v);
    REQUIRE(pairs.size() == 15);
    int expected = -1;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i] == std::pair<Vertex, Vertex>{4, 5}) expected = static_cast<int>(i);
    CHECK(expected == 14);
    CHECK(encode_edge(6, 4, 5).index == 14);
    CHECK(encode_edge(6, 5, 4).index == 14);
}

TEST_CASE("edge encoding rejects invalid pairs") {
    CHECK_THROWS_AS(encode_edge(6, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(encode_edge(6, -1, 3), std::invalid_argument);
    CHECK_THROWS_AS(encode_edge(6, 0, 6), std::invalid_argument);
}

TEST_CASE("edge encoding is a bijection for n up to 50") {
    for (int n : {2, 3, 6, 13, 50}) {
        std::set<std::int32_t> seen;
        for (Vertex v = 0; v < n; ++v) {
            for (Vertex u = 0; u < v; ++u) {
                const EdgeId e = encode_edge(n, u, v);
                CHECK(e.index >= 0);
                CHECK(e.index < edge_count_for(n));
                CHECK(seen.insert(e.index).second);
                CHECK(decode_edge(e) == std::pair<Vertex, Vertex>{u, v});
            }
        }
        CHECK(static_cast<std::int32_t>(seen.size()) == edge_count_for(n));
    }
}

TEST_CASE("unclaimed edges track claims in ascending order") {
    Board b(3);
    CHECK(b.unclaimed_edges() == std::vector<EdgeId>{EdgeId{0}, EdgeId{1}, EdgeId{2}});

    b.claim(EdgeId{0}, EdgeState::Client);
    b.claim(EdgeId{1}, EdgeState::Waiter);
    CHECK(b.unclaimed_edges() == std::vector<EdgeId>{EdgeId{2}});
    CHECK(b.state(EdgeId{0}) == EdgeState::Client);
    CHECK(b.state(EdgeId{1}) == EdgeState::Waiter);
    CHECK(b.client_count() == 1);
    CHECK(b.waiter_count() == 1);

    b.claim(EdgeId{2}, EdgeState::Waiter);
    CHECK(b.unclaimed_edges().empty());
    CHECK(b.unclaimed_count() == 0);
}

TEST_CASE("claims can neither repeat nor revert") {
    Board b(4);
    b.claim(EdgeId{3}, EdgeState::Client);
    CHECK_THROWS_AS(b.claim(EdgeId{3}, EdgeState::Waiter), std::invalid_argument);
    CHECK_THROWS_AS(b.claim(EdgeId{3}, EdgeState::Client), std::invalid_argument);
    CHECK_THROWS_AS(b.claim(EdgeId{1}, EdgeState::Unclaimed), std::invalid_argument);
    CHECK_THROWS_AS(b.claim(EdgeId{99}, EdgeState::Client), std::invalid_argument);
}

TEST_CASE("the unclaimed pool stays consistent with the state array") {
    Board b(8);
    std::uint64_t x = 7;
    const auto next = [&x] {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return x;
    };
    int remaining = edge_count_for(8);
    while (remaining > 0) {
        const auto& pool = b.unclaimed_pool();
        const EdgeId e = pool[next() % pool.size()];
        b.claim(e, (next() & 1) ? EdgeState::Client : EdgeState::Waiter);
        --remaining;

        const auto sorted = b.unclaimed_edges();
        CHECK(static_cast<int>(sorted.size()) == remaining);
        std::set<std::int32_t> from_pool;
        for (const EdgeId p : b.unclaimed_pool()) from_pool.insert(p.index);
        std::set<std::int32_t> from_sorted;
        for (const EdgeId p : sorted) from_sorted.insert(p.index);
        CHECK(from_pool == from_sorted);
    }
}
