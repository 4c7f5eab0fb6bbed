#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "trifactor/engine.hpp"
#include "trifactor/rng.hpp"

namespace trifactor {

// Policies are pure functions of (state, stream): identical inputs give
// identical outputs. Randomness comes only from the explicit per-game Rng.
struct WaiterPolicy {
    std::string name;
    std::function<OfferPair(const GameState&, Rng&)> offer;
};

struct ClientPolicy {
    std::string name;
    std::function<EdgeId(const GameState&, const OfferPair&, const std::array<bool, 2>&)> pick;
};

// The reference Client: when exactly one offered edge is crucial, take the
// other one; otherwise take the lower-indexed edge. Rounds with two crucial
// edges are the difficult rounds; `difficult_choice`, when given, overrides
// the pick in those rounds only (nothing is asserted about alternatives).
ClientPolicy make_client_avoid_crucial(
    std::function<EdgeId(const GameState&, const OfferPair&)> difficult_choice = {});

// Negative control: always takes the lower-indexed edge.
ClientPolicy make_client_greedy();

// Uniform random pair of distinct unclaimed edges.
WaiterPolicy make_waiter_random();

// Heuristic fast Waiter: offers two crucial edges when two components have
// them, otherwise pairs of unclaimed edges that close triangles on
// untriangled vertices (disjoint triples preferred), otherwise low-coverage
// filler edges. Best effort; carries no optimality claim.
WaiterPolicy make_waiter_builder();

// Replays a fixed offer list; throws CorruptTraceError when the script runs
// out or an offer is illegal in the replayed state.
WaiterPolicy make_waiter_scripted(std::vector<OfferPair> offers);

// Replays a fixed pick list (trace replay support).
ClientPolicy make_client_scripted(std::vector<EdgeId> picks);

ClientPolicy make_client_policy(const std::string& name);
WaiterPolicy make_waiter_policy(const std::string& name);
std::vector<std::string> client_policy_names();
std::vector<std::string> waiter_policy_names();

}  // namespace trifactor
