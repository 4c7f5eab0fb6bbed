#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "trifactor/engine.hpp"

namespace trifactor {

struct SolveOutcome {
    // Engaged: Waiter has a strategy winning within this many rounds against
    // every Client, and Client can survive one round fewer against every
    // Waiter. Empty: Client can avoid a spanning factor for the whole game.
    std::optional<int> waiter_rounds;

    bool waiter_wins() const { return waiter_rounds.has_value(); }
    bool operator==(const SolveOutcome&) const = default;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::size_t table_entries = 0;
    double seconds = 0.0;
};

struct SolverOptions {
    std::uint64_t node_budget = 1'000'000'000;
    // Transposition entries are ~70 bytes each; the cap keeps an accidental
    // n = 9 invocation from exhausting memory before the node budget trips.
    std::size_t table_budget = 50'000'000;
    // Vertex-permutation canonical table keys for positions with at most
    // `canonical_rounds` completed rounds. Purely an optimization: values
    // are permutation-invariant. Needs n <= 7.
    bool canonical = false;
    int canonical_rounds = 2;
};

// Exact minimax over Waiter-to-move positions (both claims of a round
// applied), depth-first with a transposition table keyed on the raw
// edge-state array. Waiter minimizes the winning round, Client maximizes;
// surviving to the leftover stage is best for Client.
class Solver {
public:
    Solver(int n, Convention convention, SolverOptions options = {});

    SolveOutcome solve();  // fresh-board game value
    SolveOutcome solve_position(const std::vector<EdgeId>& client_edges,
                                const std::vector<EdgeId>& waiter_edges);

    struct BestOffer {
        std::optional<OfferPair> offer;  // empty at leftover positions
        SolveOutcome value;
    };
    // Minimax-optimal offer, ties broken by lowest pair of canonical indices.
    BestOffer best_offer(const std::vector<EdgeId>& client_edges,
                         const std::vector<EdgeId>& waiter_edges);

    struct PvRound {
        OfferPair offer;
        EdgeId pick;
    };
    // Optimal line (offer and Client's best reply per round); empty when
    // Client wins.
    std::vector<PvRound> principal_variation();
    std::vector<PvRound> principal_variation(const std::vector<EdgeId>& client_edges,
                                             const std::vector<EdgeId>& waiter_edges);

    int n() const { return n_; }
    Convention convention() const { return convention_; }
    const SolveStats& stats() const { return stats_; }

private:
    using Mask = std::array<std::uint64_t, 2>;
    struct Key {
        Mask client;
        Mask waiter;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    static constexpr std::int16_t kClientWins = INT16_MAX;

    std::int16_t search(const Mask& client, const Mask& waiter, int client_count);
    std::int16_t after_pick(const Mask& client, const Mask& waiter, int pick, int other,
                            int client_count);
    std::int16_t leftover_value(const Mask& client, int client_count, const Mask& unclaimed) const;
    bool spanning(const Mask& client) const;
    Mask mask_from(const std::vector<EdgeId>& edges) const;
    Key table_key(const Mask& client, const Mask& waiter, int client_count) const;
    std::vector<int> unclaimed_list(const Mask& client, const Mask& waiter) const;
    BestOffer best_offer_masks(const Mask& client, const Mask& waiter, int client_count);

    int n_;
    int edges_;
    Convention convention_;
    SolverOptions options_;
    Mask full_{};
    std::vector<std::pair<Vertex, Vertex>> endpoints_;
    std::vector<std::vector<std::int32_t>> perm_edge_maps_;
    std::unordered_map<Key, std::int16_t, KeyHash> table_;
    SolveStats stats_;
};

}  // namespace trifactor
