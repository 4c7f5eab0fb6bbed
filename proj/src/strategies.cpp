#include "trifactor/strategies.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <memory>

namespace trifactor {

namespace {

constexpr std::uint64_t bit(Vertex v) { return std::uint64_t{1} << v; }

// Crucial edges of all components, ascending by index, filtered by claim
// state.
std::vector<EdgeId> crucial_edges_now(const GameState& s) {
    std::vector<EdgeId> out;
    for (const Vertex root : s.client.component_roots())
        if (const auto e = find_crucial_edge(s.client, s.board, root)) out.push_back(*e);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

ClientPolicy make_client_avoid_crucial(
    std::function<EdgeId(const GameState&, const OfferPair&)> difficult_choice) {
    ClientPolicy p;
    p.name = "avoid_crucial";
    p.pick = [choice = std::move(difficult_choice)](const GameState& s, const OfferPair& offer,
                                                    const std::array<bool, 2>& crucial) {
        if (crucial[0] && !crucial[1]) return offer.second;
        if (crucial[1] && !crucial[0]) return offer.first;
        if (crucial[0] && crucial[1] && choice) return choice(s, offer);
        return offer.first;  // "arbitrarily": lowest canonical index
    };
    return p;
}

ClientPolicy make_client_greedy() {
    ClientPolicy p;
    p.name = "greedy";
    p.pick = [](const GameState&, const OfferPair& offer, const std::array<bool, 2>&) {
        return offer.first;
    };
    return p;
}

WaiterPolicy make_waiter_random() {
    WaiterPolicy p;
    p.name = "random";
    p.offer = [](const GameState& s, Rng& rng) {
        const auto& pool = s.board.unclaimed_pool();
        if (pool.size() < 2)
            throw IllegalMoveError("waiter_random: fewer than two unclaimed edges");
        const auto i = rng.below(pool.size());
        auto j = rng.below(pool.size() - 1);
        if (j >= i) ++j;
        return normalize_offer({pool[i], pool[j]});
    };
    return p;
}

WaiterPolicy make_waiter_builder() {
    WaiterPolicy p;
    p.name = "builder";
    p.offer = [](const GameState& s, Rng& rng) {
        const auto& board = s.board;
        const auto& g = s.client;
        if (board.unclaimed_count() < 2)
            throw IllegalMoveError("waiter_builder: fewer than two unclaimed edges");

        const auto pick_two = [&rng](const std::vector<EdgeId>& pool) {
            const auto i = rng.below(pool.size());
            auto j = rng.below(pool.size() - 1);
            if (j >= i) ++j;
            return normalize_offer({pool[i], pool[j]});
        };

        // two crucial edges force a declaration whichever one Client takes
        const auto crucial = crucial_edges_now(s);
        if (crucial.size() >= 2) return pick_two(crucial);
        // a lone crucial edge is held back rather than burned on a round
        // where Client can dodge it
        const bool have_lone = crucial.size() == 1;
        const EdgeId lone = have_lone ? crucial[0] : EdgeId{};

        // Waiter's claims never merge Client components, so categories keyed
        // on Client component sizes stay meaningful whichever edge Client
        // rejects.
        struct WedgeMaker {
            EdgeId e;
            EdgeId closer;  // the edge that would become crucial once Client takes e
        };
        std::vector<WedgeMaker> wedge_makers;  // grow a 2-vertex component into a path of three
        std::vector<EdgeId> fresh_pairs;       // join two isolated vertices
        std::vector<EdgeId> closers;           // complete a triangle on an untriangled vertex
        std::vector<EdgeId> growers;           // attach an isolated vertex to a larger component
        const auto unclaimed = board.unclaimed_edges();
        for (const EdgeId e : unclaimed) {
            if (have_lone && e == lone) continue;
            const auto [a, b] = decode_edge(e);
            const int sa = g.component(a).size();
            const int sb = g.component(b).size();
            if (sa == 1 && sb == 1) {
                fresh_pairs.push_back(e);
                continue;
            }
            if ((sa == 2 && sb == 1) || (sa == 1 && sb == 2)) {
                const Vertex anchor = sa == 2 ? a : b;  // endpoint inside the pair
                const Vertex fresh = sa == 2 ? b : a;
                const Vertex mate = std::countr_zero(g.adjacency_row(anchor));
                wedge_makers.push_back({e, encode_edge(g.n(), mate, fresh)});
                continue;
            }
            for (std::uint64_t m = g.adjacency_row(a) & g.adjacency_row(b); m != 0; m &= m - 1) {
                const Vertex c = std::countr_zero(m);
                if (!g.in_triangle(a) || !g.in_triangle(b) || !g.in_triangle(c)) {
                    closers.push_back(e);
                    break;
                }
            }
            if (!closers.empty() && closers.back() == e) continue;
            if (sa == 1 || sb == 1) growers.push_back(e);
        }

        // pair wedge makers so that neither offered edge is the closer the
        // other one sets up, otherwise the rejected edge kills the new wedge
        if (wedge_makers.size() >= 2) {
            const auto start = rng.below(wedge_makers.size());
            for (std::size_t di = 0; di < wedge_makers.size(); ++di) {
                const auto i = (start + di) % wedge_makers.size();
                for (std::size_t j = 0; j < wedge_makers.size(); ++j) {
                    if (i == j) continue;
                    if (wedge_makers[i].closer != wedge_makers[j].e &&
                        wedge_makers[j].closer != wedge_makers[i].e)
                        return normalize_offer({wedge_makers[i].e, wedge_makers[j].e});
                }
            }
        }
        if (!wedge_makers.empty() && !fresh_pairs.empty())
            return normalize_offer({wedge_makers[rng.below(wedge_makers.size())].e,
                                    fresh_pairs[rng.below(fresh_pairs.size())]});
        if (fresh_pairs.size() >= 2) {
            const EdgeId head_edge = fresh_pairs[rng.below(fresh_pairs.size())];
            const auto [a, b] = decode_edge(head_edge);
            const std::uint64_t head = bit(a) | bit(b);
            std::vector<EdgeId> disjoint;
            for (const EdgeId e : fresh_pairs) {
                const auto [c, d] = decode_edge(e);
                if (((bit(c) | bit(d)) & head) == 0) disjoint.push_back(e);
            }
            if (!disjoint.empty())
                return normalize_offer({head_edge, disjoint[rng.below(disjoint.size())]});
            return pick_two(fresh_pairs);
        }
        if (closers.size() >= 2) return pick_two(closers);

        // pad whatever is left, preferring constructive edges, the held-back
        // crucial edge last
        std::vector<EdgeId> pool;
        for (const auto& w : wedge_makers) pool.push_back(w.e);
        for (const auto* cat : {&fresh_pairs, &closers, &growers})
            pool.insert(pool.end(), cat->begin(), cat->end());
        for (const EdgeId e : unclaimed)
            if (!(have_lone && e == lone)) pool.push_back(e);
        if (have_lone) pool.push_back(lone);
        std::vector<EdgeId> picked;
        for (const EdgeId e : pool) {
            if (!picked.empty() && picked[0] == e) continue;
            picked.push_back(e);
            if (picked.size() == 2) break;
        }
        return normalize_offer({picked[0], picked[1]});
    };
    return p;
}

WaiterPolicy make_waiter_scripted(std::vector<OfferPair> offers) {
    WaiterPolicy p;
    p.name = "scripted";
    p.offer = [offers = std::move(offers), at = std::make_shared<std::size_t>(0)](
                  const GameState& s, Rng&) {
        if (*at >= offers.size())
            throw CorruptTraceError("scripted waiter: offer script exhausted");
        const OfferPair offer = normalize_offer(offers[(*at)++]);
        if (s.board.state(offer.first) != EdgeState::Unclaimed ||
            s.board.state(offer.second) != EdgeState::Unclaimed)
            throw CorruptTraceError("scripted waiter: offer illegal in replayed state");
        return offer;
    };
    return p;
}

ClientPolicy make_client_scripted(std::vector<EdgeId> picks) {
    ClientPolicy p;
    p.name = "scripted";
    p.pick = [picks = std::move(picks), at = std::make_shared<std::size_t>(0)](
                 const GameState&, const OfferPair& offer, const std::array<bool, 2>&) {
        if (*at >= picks.size())
            throw CorruptTraceError("scripted client: pick script exhausted");
        const EdgeId e = picks[(*at)++];
        if (e != offer.first && e != offer.second)
            throw CorruptTraceError("scripted client: recorded pick not in offer");
        return e;
    };
    return p;
}

ClientPolicy make_client_policy(const std::string& name) {
    if (name == "avoid_crucial") return make_client_avoid_crucial();
    if (name == "greedy") return make_client_greedy();
    throw std::invalid_argument("unknown client policy: " + name);
}

WaiterPolicy make_waiter_policy(const std::string& name) {
    if (name == "random") return make_waiter_random();
    if (name == "builder") return make_waiter_builder();
    throw std::invalid_argument("unknown waiter policy: " + name);
}

std::vector<std::string> client_policy_names() { return {"avoid_crucial", "greedy"}; }
std::vector<std::string> waiter_policy_names() { return {"random", "builder"}; }

}  // namespace trifactor
