#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "trifactor/harness.hpp"
#include "trifactor/solver.hpp"

using namespace trifactor;

namespace {

// Memo-free reference value over engine states: Waiter minimizes the winning
// round, Client maximizes, escape to the leftover stage counts as a Client
// win unless the convention converts it.
std::optional<int> naive_value(GameState s) {
    if (s.finished == Winner::Waiter) return s.round;
    if (s.finished == Winner::Client) return std::nullopt;
    if (s.board.unclaimed_count() < 2) {
        finish_leftovers(s);
        return s.finished == Winner::Waiter ? std::optional<int>(s.round) : std::nullopt;
    }
    std::optional<int> best;
    for (const OfferPair& offer : legal_offers(s)) {
        std::optional<int> offer_value = 0;
        for (const EdgeId pick : {offer.first, offer.second}) {
            GameState next = s;
            resolve_round(next, offer, pick);
            const auto v = naive_value(std::move(next));
            if (!v) {
                offer_value = std::nullopt;  // Client escapes through this pick
                break;
            }
            offer_value = std::max(*offer_value, *v);
        }
        if (offer_value && (!best || *offer_value < *best)) best = offer_value;
    }
    return best;
}

struct EdgeLists {
    std::vector<EdgeId> client;
    std::vector<EdgeId> waiter;
};

EdgeLists edge_lists(const Board& b) {
    EdgeLists out;
    for (std::int32_t i = 0; i < b.edge_count(); ++i) {
        if (b.state(EdgeId{i}) == EdgeState::Client) out.client.push_back(EdgeId{i});
        if (b.state(EdgeId{i}) == EdgeState::Waiter) out.waiter.push_back(EdgeId{i});
    }
    return out;
}

// plays random full rounds until at most `target` edges stay unclaimed
GameState random_position(int n, std::uint64_t seed, int target) {
    testutil::XorShift rng(seed);
    GameState s(n, Convention::WaiterLeftover);
    while (s.finished == Winner::Undecided && s.board.unclaimed_count() >= 2 &&
           s.board.unclaimed_count() - 2 >= target) {
        const auto& pool = s.board.unclaimed_pool();
        const EdgeId a = pool[rng.below(pool.size())];
        EdgeId b = a;
        while (b == a) b = pool[rng.below(pool.size())];
        resolve_round(s, normalize_offer({a, b}), rng.below(2) ? a : b);
    }
    return s;
}

}  // namespace

TEST_CASE("three vertices are a trivial Client win") {
    for (const Convention conv : {Convention::WaiterLeftover, Convention::ClientLeftover}) {
        Solver solver(3, conv);
        const SolveOutcome outcome = solver.solve();
        CHECK_FALSE(outcome.waiter_wins());
    }
    CHECK_THROWS_AS(Solver(4, Convention::WaiterLeftover), std::invalid_argument);
    CHECK_THROWS_AS(Solver(5, Convention::WaiterLeftover), std::invalid_argument);
}

TEST_CASE("memoized search matches a memo-free reference on small positions") {
    Solver solver(6, Convention::WaiterLeftover);
    int compared = 0;
    for (std::uint64_t seed = 1; compared < 12; ++seed) {
        const GameState s = random_position(6, seed, 5);
        if (s.finished != Winner::Undecided) continue;
        const auto lists = edge_lists(s.board);
        const SolveOutcome fast = solver.solve_position(lists.client, lists.waiter);
        const std::optional<int> slow = naive_value(s);
        CHECK(fast.waiter_rounds == slow);
        ++compared;
    }
}

TEST_CASE("position values are invariant under vertex permutations") {
    Solver solver(6, Convention::WaiterLeftover);
    testutil::XorShift rng(555);
    int compared = 0;
    for (std::uint64_t seed = 100; compared < 8; ++seed) {
        const GameState s = random_position(6, seed, 7);
        if (s.finished != Winner::Undecided) continue;
        const auto lists = edge_lists(s.board);

        std::vector<Vertex> perm{0, 1, 2, 3, 4, 5};
        for (int i = 5; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        const auto apply = [&](const std::vector<EdgeId>& edges) {
            std::vector<EdgeId> out;
            for (const EdgeId e : edges) {
                const auto [u, v] = decode_edge(e);
                out.push_back(encode_edge(6, perm[u], perm[v]));
            }
            return out;
        };

        const SolveOutcome base = solver.solve_position(lists.client, lists.waiter);
        const SolveOutcome mapped = solver.solve_position(apply(lists.client), apply(lists.waiter));
        CHECK(base == mapped);
        ++compared;
    }
}

TEST_CASE("canonical table keys do not change values") {
    SolverOptions canon;
    canon.canonical = true;
    canon.canonical_rounds = 99;
    for (std::uint64_t seed : {7u, 8u, 9u}) {
        const GameState s = random_position(6, seed, 7);
        if (s.finished != Winner::Undecided) continue;
        const auto lists = edge_lists(s.board);
        Solver raw(6, Convention::WaiterLeftover);
        Solver canonical(6, Convention::WaiterLeftover, canon);
        CHECK(raw.solve_position(lists.client, lists.waiter) ==
              canonical.solve_position(lists.client, lists.waiter));
    }
    CHECK_THROWS_AS(Solver(9, Convention::WaiterLeftover, canon), std::invalid_argument);
}

TEST_CASE("best_offer finds a forced double completion") {
    // Client holds a triangle on {0,1,2} plus eight edges on {3..8} such
    // that {3,5} completes triangles {3,4,5},{6,7,8} and {5,8} completes
    // {3,4,7},{5,6,8}; both picks end the game on the next round.
    const int n = 9;
    const auto e = [&](int a, int b) { return encode_edge(n, a, b); };
    const std::vector<EdgeId> client = {e(0, 1), e(0, 2), e(1, 2), e(3, 4), e(4, 5), e(6, 7),
                                        e(7, 8), e(6, 8), e(3, 7), e(4, 7), e(5, 6)};
    const std::vector<EdgeId> waiter = {e(0, 3), e(0, 4), e(0, 5), e(0, 6), e(0, 7), e(0, 8),
                                        e(1, 3), e(1, 4), e(1, 5), e(1, 6), e(1, 7)};

    Solver solver(n, Convention::WaiterLeftover);
    const auto best = solver.best_offer(client, waiter);
    REQUIRE(best.offer.has_value());
    CHECK(best.offer->first == e(3, 5));
    CHECK(best.offer->second == e(5, 8));
    REQUIRE(best.value.waiter_wins());
    CHECK(*best.value.waiter_rounds == 12);
    CHECK(solver.solve_position(client, waiter) == best.value);
}

TEST_CASE("the principal variation plays out to the solved value") {
    // Client-win boards have no winning line at all
    Solver s3(3, Convention::WaiterLeftover);
    CHECK(s3.principal_variation().empty());

    // from the double-completion position the line is a single round, and
    // replaying it through the engine reaches a spanning factor
    const int n = 9;
    const auto e = [&](int a, int b) { return encode_edge(n, a, b); };
    const std::vector<EdgeId> client = {e(0, 1), e(0, 2), e(1, 2), e(3, 4), e(4, 5), e(6, 7),
                                        e(7, 8), e(6, 8), e(3, 7), e(4, 7), e(5, 6)};
    const std::vector<EdgeId> waiter = {e(0, 3), e(0, 4), e(0, 5), e(0, 6), e(0, 7), e(0, 8),
                                        e(1, 3), e(1, 4), e(1, 5), e(1, 6), e(1, 7)};
    Solver solver(n, Convention::WaiterLeftover);
    const auto pv = solver.principal_variation(client, waiter);
    REQUIRE(pv.size() == 1);
    CHECK(pv[0].offer == OfferPair{e(3, 5), e(5, 8)});

    GameState state(n, Convention::WaiterLeftover);
    for (std::size_t i = 0; i < client.size(); ++i) {
        state.client.add_edge(client[i], static_cast<int>(i) + 1);
        state.board.claim(client[i], EdgeState::Client);
    }
    for (const EdgeId w : waiter) state.board.claim(w, EdgeState::Waiter);
    state.round = static_cast<int>(client.size());
    REQUIRE_FALSE(is_win(state));
    resolve_round(state, pv[0].offer, pv[0].pick);
    CHECK(state.finished == Winner::Waiter);
    CHECK(state.round == 12);
}

TEST_CASE("best_offer labels hopeless positions as Client wins") {
    Solver solver(3, Convention::WaiterLeftover);
    const auto best = solver.best_offer({}, {});
    REQUIRE(best.offer.has_value());
    CHECK(best.offer->first == EdgeId{0});
    CHECK(best.offer->second == EdgeId{1});
    CHECK_FALSE(best.value.waiter_wins());
}

TEST_CASE("the node budget aborts runaway searches with partial statistics") {
    SolverOptions opts;
    opts.node_budget = 20'000;
    Solver solver(9, Convention::WaiterLeftover, opts);
    try {
        solver.solve();
        FAIL("budget was not enforced");
    } catch (const BudgetExceededError& e) {
        CHECK(e.nodes > 20'000);
        CHECK(e.nodes < 40'000);
    }
}
