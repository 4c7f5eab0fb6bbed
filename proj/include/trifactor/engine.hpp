#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trifactor/board.hpp"
#include "trifactor/client_graph.hpp"

namespace trifactor {

// What happens to unclaimed edges once fewer than two remain. The rules are
// silent here; the default hands any remainder to Waiter, so Client is never
// forced to take an edge that was not offered.
enum class Convention { WaiterLeftover, ClientLeftover };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

enum class Winner { Undecided, Waiter, Client };

struct OfferPair {
    EdgeId first;
    EdgeId second;

    bool operator==(const OfferPair&) const = default;
};

// Returns the pair ordered by canonical index; throws on a degenerate pair.
OfferPair normalize_offer(OfferPair offer);

struct LedgerEntry {
    int round = 0;  // 1-based
    OfferPair offered{};
    std::array<bool, 2> crucial{false, false};
    EdgeId pick{};
    std::vector<Vertex> a_set;  // vertices of components crucial this round, sorted
    std::vector<Vertex> b_set;  // a_set minus every earlier a_set, sorted
    bool difficult = false;
    std::optional<DeclarationEvent> declaration;

    bool operator==(const LedgerEntry&) const = default;
};

struct GameState {
    GameState(int n, Convention convention);

    Board board;
    ClientGraph client;
    int round = 0;  // completed rounds == |Client edges|
    std::vector<LedgerEntry> ledger;
    Winner finished = Winner::Undecided;
    Convention convention;
    std::uint64_t crucial_seen = 0;  // union of all A_i vertex masks so far
};

struct GameOutcome {
    Winner winner = Winner::Undecided;
    std::optional<int> rounds;  // set only for Waiter wins

    bool operator==(const GameOutcome&) const = default;
};

// Replayable record of a full (or aborted) game.
struct GameTrace {
    int n = 0;
    std::string waiter_name;
    std::string client_name;
    std::uint64_t seed = 0;
    Convention convention = Convention::WaiterLeftover;
    std::vector<LedgerEntry> rounds;
    GameOutcome outcome;

    bool operator==(const GameTrace&) const = default;
};

// All unordered pairs of distinct unclaimed edges, ascending lexicographic.
std::vector<OfferPair> legal_offers(const GameState& state);

// Whether offering `e` now would let Client declare a good component by
// taking it, i.e. e is the crucial edge of its (single) component.
bool is_crucial(const GameState& state, EdgeId e);

// One round: crucial flags and the A_i/B_i ledger are evaluated against the
// position before either claim, then the pick goes to Client, the other
// edge to Waiter, and the win condition is re-checked.
const LedgerEntry& resolve_round(GameState& state, OfferPair offer, EdgeId pick);

bool is_win(const GameState& state);

// Applies the leftover convention once fewer than two unclaimed edges remain
// and the game is not yet won.
void finish_leftovers(GameState& state);

}  // namespace trifactor
