#include <doctest.h>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "trifactor/engine.hpp"
#include "trifactor/harness.hpp"
#include "trifactor/trace_io.hpp"

using namespace trifactor;

namespace {

EdgeId e(int n, int a, int b) { return encode_edge(n, a, b); }

// drives one round where Client takes `take` and Waiter gets `give`
void force_round(GameState& s, int n, std::pair<int, int> take, std::pair<int, int> give) {
    const EdgeId pick = e(n, take.first, take.second);
    resolve_round(s, {pick, e(n, give.first, give.second)}, pick);
}

}  // namespace

TEST_CASE("legal offers are the unordered pairs of unclaimed edges") {
    GameState s3(3, Convention::WaiterLeftover);
    CHECK(legal_offers(s3).size() == 3);

    GameState s6(6, Convention::WaiterLeftover);
    CHECK(legal_offers(s6).size() == 105);

    resolve_round(s3, {EdgeId{0}, EdgeId{1}}, EdgeId{0});
    CHECK(legal_offers(s3).empty());  // one unclaimed edge cannot form a pair
}

TEST_CASE("resolve_round keeps the claim ledger and round counter in step") {
    GameState s(3, Convention::WaiterLeftover);
    const auto& entry = resolve_round(s, {e(3, 0, 1), e(3, 0, 2)}, e(3, 0, 1));
    CHECK(s.board.state(e(3, 0, 1)) == EdgeState::Client);
    CHECK(s.board.state(e(3, 0, 2)) == EdgeState::Waiter);
    CHECK(s.round == 1);
    CHECK(s.finished == Winner::Undecided);
    CHECK(entry.round == 1);
    CHECK(entry.crucial == std::array<bool, 2>{false, false});
    CHECK(entry.a_set.empty());
    CHECK_FALSE(entry.difficult);
}

TEST_CASE("crucial flags and A_i/B_i are evaluated before the claims") {
    GameState s(6, Convention::WaiterLeftover);
    force_round(s, 6, {0, 1}, {3, 4});
    force_round(s, 6, {1, 2}, {3, 5});
    // Client's graph is the path 0-1-2; its crucial edge is {0,2}
    REQUIRE(is_crucial(s, e(6, 0, 2)));

    const auto& entry = resolve_round(s, {e(6, 0, 2), e(6, 4, 5)}, e(6, 4, 5));
    CHECK(entry.crucial == std::array<bool, 2>{true, false});
    CHECK(entry.a_set == std::vector<Vertex>{0, 1, 2});
    CHECK(entry.b_set == std::vector<Vertex>{0, 1, 2});
    CHECK_FALSE(entry.difficult);
    CHECK(entry.pick == e(6, 4, 5));
    CHECK(entry.declaration == std::nullopt);
}

TEST_CASE("illegal rounds are rejected") {
    GameState s(6, Convention::WaiterLeftover);
    CHECK_THROWS_AS(resolve_round(s, {e(6, 0, 1), e(6, 0, 2)}, e(6, 3, 4)), IllegalMoveError);
    CHECK_THROWS_AS(resolve_round(s, {e(6, 0, 1), e(6, 0, 1)}, e(6, 0, 1)), IllegalMoveError);

    force_round(s, 6, {0, 1}, {0, 2});
    CHECK_THROWS_AS(resolve_round(s, {e(6, 0, 1), e(6, 3, 4)}, e(6, 3, 4)), IllegalMoveError);
}

TEST_CASE("the win condition is a spanning triangle-factor") {
    GameState s(6, Convention::WaiterLeftover);
    // Client assembles {0,1,2}; junk for Waiter elsewhere
    force_round(s, 6, {0, 1}, {0, 3});
    force_round(s, 6, {1, 2}, {0, 4});
    force_round(s, 6, {0, 2}, {0, 5});
    CHECK_FALSE(is_win(s));  // 3, 4, 5 are still isolated
    force_round(s, 6, {3, 4}, {1, 3});
    force_round(s, 6, {4, 5}, {1, 4});
    CHECK_FALSE(is_win(s));
    force_round(s, 6, {3, 5}, {1, 5});
    CHECK(is_win(s));
    CHECK(s.finished == Winner::Waiter);
    CHECK(s.round == 6);
}

TEST_CASE("completing the crucial-path component wins at seven edges") {
    GameState s(6, Convention::WaiterLeftover);
    force_round(s, 6, {0, 1}, {0, 3});
    force_round(s, 6, {1, 2}, {0, 4});
    force_round(s, 6, {2, 3}, {0, 5});
    force_round(s, 6, {3, 4}, {1, 3});
    force_round(s, 6, {4, 5}, {1, 4});
    force_round(s, 6, {0, 2}, {1, 5});
    CHECK_FALSE(is_win(s));
    REQUIRE(is_crucial(s, e(6, 3, 5)));
    force_round(s, 6, {3, 5}, {2, 4});
    CHECK(s.finished == Winner::Waiter);
    CHECK(s.round == 7);
    REQUIRE(s.ledger.back().declaration.has_value());
    CHECK(s.ledger.back().declaration->vertices == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("leftover conventions decide unfinished games") {
    SUBCASE("a single leftover edge goes to Waiter by default") {
        GameState s(3, Convention::WaiterLeftover);
        resolve_round(s, {EdgeId{0}, EdgeId{1}}, EdgeId{0});
        finish_leftovers(s);
        CHECK(s.finished == Winner::Client);
        CHECK(s.board.unclaimed_count() == 0);
        CHECK(s.board.waiter_count() == 2);
    }

    SUBCASE("leftovers cannot be applied while offers remain") {
        GameState s(6, Convention::WaiterLeftover);
        CHECK_THROWS_AS(finish_leftovers(s), IllegalMoveError);
    }

    SUBCASE("the client-leftover variant can flip the outcome") {
        // Client holds {0,1},{0,2},{1,2},{3,4},{3,5},{0,3},{1,4}; edge {4,5}
        // is the single unclaimed edge and completes the spanning factor
        const std::vector<std::pair<int, int>> client = {{0, 1}, {0, 2}, {1, 2}, {3, 4},
                                                         {3, 5}, {0, 3}, {1, 4}};
        const std::vector<std::pair<int, int>> waiter = {{0, 4}, {0, 5}, {1, 3}, {1, 5},
                                                         {2, 3}, {2, 4}, {2, 5}};
        for (const Convention conv : {Convention::WaiterLeftover, Convention::ClientLeftover}) {
            GameState s(6, conv);
            for (std::size_t i = 0; i < client.size(); ++i)
                force_round(s, 6, client[i], waiter[i]);
            REQUIRE(s.finished == Winner::Undecided);
            REQUIRE(s.board.unclaimed_count() == 1);
            finish_leftovers(s);
            if (conv == Convention::ClientLeftover) {
                CHECK(s.finished == Winner::Waiter);
                CHECK(s.round == 8);  // the leftover claim counts as a Client edge
            } else {
                CHECK(s.finished == Winner::Client);
            }
        }
    }
}

TEST_CASE("round count equals Client's edge count throughout random games") {
    testutil::XorShift rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
        GameState s(9, Convention::WaiterLeftover);
        while (s.finished == Winner::Undecided && s.board.unclaimed_count() >= 2) {
            const auto& pool = s.board.unclaimed_pool();
            const EdgeId a = pool[rng.below(pool.size())];
            EdgeId b = a;
            while (b == a) b = pool[rng.below(pool.size())];
            resolve_round(s, normalize_offer({a, b}), rng.below(2) ? a : b);
            CHECK(s.round == s.board.client_count());
            CHECK(s.round == s.client.edge_count());
        }
    }
}

TEST_CASE("traces survive the JSON round trip") {
    const GameConfig config{12, 99, Convention::WaiterLeftover};
    const GameTrace trace =
        play_game(config, make_waiter_policy("random"), make_client_policy("avoid_crucial"));
    REQUIRE_FALSE(trace.rounds.empty());

    const std::string text = trace_to_string(trace);
    const GameTrace back = trace_from_string(text);
    CHECK(back == trace);

    // edges serialize as vertex pairs, never as indices
    CHECK(text.find("\"offered\"") != std::string::npos);
    const auto j = trace_to_json(trace);
    const auto& first = j.at("rounds").at(0);
    CHECK(first.at("offered").at(0).is_array());
    CHECK(first.at("offered").at(0).size() == 2);
    CHECK(first.at("pick").is_array());
}

TEST_CASE("replaying a trace reproduces it") {
    for (const char* waiter : {"random", "builder"}) {
        for (const char* client : {"avoid_crucial", "greedy"}) {
            for (std::uint64_t seed = 1; seed <= 4; ++seed) {
                const GameConfig config{12, seed, Convention::WaiterLeftover};
                const GameTrace trace = play_game(config, make_waiter_policy(waiter),
                                                  make_client_policy(client));
                CHECK(replay_trace(trace) == trace);
            }
        }
    }
}

TEST_CASE("malformed trace JSON is rejected") {
    CHECK_THROWS_AS(trace_from_string("not json at all"), CorruptTraceError);
    CHECK_THROWS_AS(trace_from_string("{\"version\":2}"), CorruptTraceError);
    CHECK_THROWS_AS(trace_from_string("{\"version\":1,\"n\":6}"), CorruptTraceError);
}
