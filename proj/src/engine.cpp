#include "trifactor/engine.hpp"

#include <algorithm>
#include <bit>

namespace trifactor {

namespace {

std::vector<Vertex> mask_to_vertices(std::uint64_t mask) {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (std::uint64_t m = mask; m != 0; m &= m - 1)
        out.push_back(std::countr_zero(m));
    return out;
}

}  // namespace

std::string to_string(Convention c) {
    return c == Convention::WaiterLeftover ? "waiter-leftover" : "client-leftover";
}

Convention convention_from_string(const std::string& s) {
    if (s == "waiter-leftover") return Convention::WaiterLeftover;
    if (s == "client-leftover") return Convention::ClientLeftover;
    throw std::invalid_argument("unknown convention: " + s);
}

OfferPair normalize_offer(OfferPair offer) {
    if (offer.first == offer.second)
        throw IllegalMoveError("offer must contain two distinct edges");
    if (offer.second < offer.first) std::swap(offer.first, offer.second);
    return offer;
}

GameState::GameState(int n, Convention convention)
    : board(n), client(n), convention(convention) {}

std::vector<OfferPair> legal_offers(const GameState& state) {
    const auto unclaimed = state.board.unclaimed_edges();
    std::vector<OfferPair> out;
    if (unclaimed.size() < 2) return out;
    out.reserve(unclaimed.size() * (unclaimed.size() - 1) / 2);
    for (std::size_t i = 0; i < unclaimed.size(); ++i)
        for (std::size_t j = i + 1; j < unclaimed.size(); ++j)
            out.push_back(OfferPair{unclaimed[i], unclaimed[j]});
    return out;
}

bool is_crucial(const GameState& state, EdgeId e) {
    const auto [u, v] = decode_edge(e);
    if (state.client.find_root(u) != state.client.find_root(v)) return false;
    return find_crucial_edge(state.client, state.board, u) == std::optional<EdgeId>(e);
}

const LedgerEntry& resolve_round(GameState& state, OfferPair offer, EdgeId pick) {
    if (state.finished != Winner::Undecided)
        throw IllegalMoveError("resolve_round: game already finished");
    offer = normalize_offer(offer);
    if (state.board.state(offer.first) != EdgeState::Unclaimed ||
        state.board.state(offer.second) != EdgeState::Unclaimed)
        throw IllegalMoveError("resolve_round: offer contains a claimed edge");
    if (pick != offer.first && pick != offer.second)
        throw IllegalMoveError("resolve_round: pick not in offer");

    LedgerEntry entry;
    entry.round = state.round + 1;
    entry.offered = offer;
    entry.pick = pick;
    entry.crucial = {is_crucial(state, offer.first), is_crucial(state, offer.second)};
    entry.difficult = entry.crucial[0] && entry.crucial[1];

    std::uint64_t a_mask = 0;
    if (entry.crucial[0])
        a_mask |= state.client.component(decode_edge(offer.first).first).vertex_mask;
    if (entry.crucial[1])
        a_mask |= state.client.component(decode_edge(offer.second).first).vertex_mask;
    if (entry.difficult &&
        state.client.find_root(decode_edge(offer.first).first) ==
            state.client.find_root(decode_edge(offer.second).first))
        throw InvariantViolationError("two crucial edges inside one component");
    entry.a_set = mask_to_vertices(a_mask);
    entry.b_set = mask_to_vertices(a_mask & ~state.crucial_seen);

    const EdgeId other = (pick == offer.first) ? offer.second : offer.first;
    entry.declaration = state.client.add_edge(pick, entry.round);
    state.board.claim(pick, EdgeState::Client);
    state.board.claim(other, EdgeState::Waiter);
    state.crucial_seen |= a_mask;
    state.round = entry.round;
    if (state.client.has_spanning_factor()) state.finished = Winner::Waiter;

    state.ledger.push_back(std::move(entry));
    return state.ledger.back();
}

bool is_win(const GameState& state) { return state.client.has_spanning_factor(); }

void finish_leftovers(GameState& state) {
    if (state.finished != Winner::Undecided)
        throw IllegalMoveError("finish_leftovers: game already finished");
    if (state.board.unclaimed_count() >= 2)
        throw IllegalMoveError("finish_leftovers: two or more unclaimed edges remain");

    if (state.board.unclaimed_count() == 1) {
        const EdgeId leftover = state.board.unclaimed_pool().front();
        if (state.convention == Convention::ClientLeftover) {
            state.client.add_edge(leftover, state.round + 1);
            state.board.claim(leftover, EdgeState::Client);
            state.round += 1;
            if (state.client.has_spanning_factor()) {
                state.finished = Winner::Waiter;
                return;
            }
        } else {
            state.board.claim(leftover, EdgeState::Waiter);
        }
    }
    state.finished = Winner::Client;
}

}  // namespace trifactor
