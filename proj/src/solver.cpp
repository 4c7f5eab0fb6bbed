#include "trifactor/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>

#include "trifactor/client_graph.hpp"
#include "trifactor/rng.hpp"

namespace trifactor {

namespace {

int popcount(const std::array<std::uint64_t, 2>& m) {
    return std::popcount(m[0]) + std::popcount(m[1]);
}

bool test_bit(const std::array<std::uint64_t, 2>& m, int i) {
    return (m[i >> 6] >> (i & 63)) & 1;
}

void set_bit(std::array<std::uint64_t, 2>& m, int i) { m[i >> 6] |= std::uint64_t{1} << (i & 63); }

}  // namespace

std::size_t Solver::KeyHash::operator()(const Key& k) const {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (const std::uint64_t w : {k.client[0], k.client[1], k.waiter[0], k.waiter[1]})
        h = splitmix64(h ^ w);
    return static_cast<std::size_t>(h);
}

Solver::Solver(int n, Convention convention, SolverOptions options)
    : n_(n), edges_(0), convention_(convention), options_(options) {
    if (n % 3 != 0 || n < 3)
        throw std::invalid_argument("Solver: n must be a positive multiple of 3");
    if (n > 16)
        throw std::invalid_argument("Solver: boards beyond n = 16 exceed the position encoding");
    edges_ = edge_count_for(n);
    endpoints_.reserve(edges_);
    for (std::int32_t e = 0; e < edges_; ++e) endpoints_.push_back(decode_edge(EdgeId{e}));
    for (int e = 0; e < edges_; ++e) set_bit(full_, e);

    if (options_.canonical) {
        if (n > 7)
            throw std::invalid_argument("Solver: canonical reduction is supported for n <= 7");
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<std::int32_t> edge_map(edges_);
            for (int e = 0; e < edges_; ++e)
                edge_map[e] = encode_edge(n, perm[endpoints_[e].first], perm[endpoints_[e].second]).index;
            perm_edge_maps_.push_back(std::move(edge_map));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

Solver::Mask Solver::mask_from(const std::vector<EdgeId>& edges) const {
    Mask m{};
    for (const EdgeId e : edges) {
        if (e.index < 0 || e.index >= edges_)
            throw std::invalid_argument("Solver: edge outside the board");
        if (test_bit(m, e.index)) throw std::invalid_argument("Solver: duplicate edge");
        set_bit(m, e.index);
    }
    return m;
}

std::vector<int> Solver::unclaimed_list(const Mask& client, const Mask& waiter) const {
    std::vector<int> out;
    out.reserve(edges_);
    for (int word = 0; word < 2; ++word) {
        std::uint64_t m = ~(client[word] | waiter[word]);
        if (word == 0 && edges_ < 64) m &= (std::uint64_t{1} << edges_) - 1;
        if (word == 1) {
            if (edges_ <= 64)
                m = 0;
            else if (edges_ < 128)
                m &= (std::uint64_t{1} << (edges_ - 64)) - 1;
        }
        for (; m != 0; m &= m - 1) out.push_back(word * 64 + std::countr_zero(m));
    }
    return out;
}

bool Solver::spanning(const Mask& client) const {
    std::array<std::uint64_t, 16> rows{};
    for (int word = 0; word < 2; ++word)
        for (std::uint64_t m = client[word]; m != 0; m &= m - 1) {
            const auto [a, b] = endpoints_[word * 64 + std::countr_zero(m)];
            rows[a] |= std::uint64_t{1} << b;
            rows[b] |= std::uint64_t{1} << a;
        }
    const std::uint64_t cover = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    return has_triangle_factor({rows.data(), static_cast<std::size_t>(n_)}, cover);
}

Solver::Key Solver::table_key(const Mask& client, const Mask& waiter, int client_count) const {
    if (!options_.canonical || client_count > options_.canonical_rounds || perm_edge_maps_.empty())
        return Key{client, waiter};
    Key best{client, waiter};
    for (const auto& edge_map : perm_edge_maps_) {
        Key k{};
        for (int word = 0; word < 2; ++word) {
            for (std::uint64_t m = client[word]; m != 0; m &= m - 1)
                set_bit(k.client, edge_map[word * 64 + std::countr_zero(m)]);
            for (std::uint64_t m = waiter[word]; m != 0; m &= m - 1)
                set_bit(k.waiter, edge_map[word * 64 + std::countr_zero(m)]);
        }
        if (std::pair(k.client, k.waiter) < std::pair(best.client, best.waiter)) best = k;
    }
    return best;
}

std::int16_t Solver::leftover_value(const Mask& client, int client_count,
                                    const Mask& unclaimed) const {
    if (convention_ == Convention::ClientLeftover && popcount(unclaimed) == 1) {
        Mask ncli = client;
        ncli[0] |= unclaimed[0];
        ncli[1] |= unclaimed[1];
        if (client_count + 1 >= n_ && spanning(ncli))
            return static_cast<std::int16_t>(client_count + 1);
    }
    return kClientWins;
}

std::int16_t Solver::after_pick(const Mask& client, const Mask& waiter, int pick, int other,
                                int client_count) {
    Mask ncli = client;
    set_bit(ncli, pick);
    const int ncount = client_count + 1;
    if (ncount >= n_ && spanning(ncli)) return static_cast<std::int16_t>(ncount);
    Mask nwtr = waiter;
    set_bit(nwtr, other);
    return search(ncli, nwtr, ncount);
}

std::int16_t Solver::search(const Mask& client, const Mask& waiter, int client_count) {
    Mask unclaimed{full_[0] & ~(client[0] | waiter[0]), full_[1] & ~(client[1] | waiter[1])};
    if (popcount(unclaimed) < 2) return leftover_value(client, client_count, unclaimed);

    if (++stats_.nodes > options_.node_budget)
        throw BudgetExceededError("solver: node budget exceeded", stats_.nodes, table_.size());
    if (table_.size() >= options_.table_budget)
        throw BudgetExceededError("solver: transposition table budget exceeded", stats_.nodes,
                                  table_.size());

    const Key key = table_key(client, waiter, client_count);
    if (const auto it = table_.find(key); it != table_.end()) return it->second;

    const auto edges = unclaimed_list(client, waiter);
    const auto immediate = static_cast<std::int16_t>(client_count + 1);
    std::int16_t best = kClientWins;
    for (std::size_t i = 0; i < edges.size() && best != immediate; ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const std::int16_t v1 = after_pick(client, waiter, edges[i], edges[j], client_count);
            std::int16_t offer_value = kClientWins;
            if (v1 != kClientWins)
                offer_value = std::max(v1, after_pick(client, waiter, edges[j], edges[i], client_count));
            if (offer_value < best) best = offer_value;
            if (best == immediate) break;
        }
    }
    table_.emplace(key, best);
    stats_.table_entries = table_.size();
    return best;
}

SolveOutcome Solver::solve() { return solve_position({}, {}); }

SolveOutcome Solver::solve_position(const std::vector<EdgeId>& client_edges,
                                    const std::vector<EdgeId>& waiter_edges) {
    if (client_edges.size() != waiter_edges.size())
        throw std::invalid_argument("Solver: positions are Waiter-to-move, claim counts must match");
    const Mask cli = mask_from(client_edges);
    const Mask wtr = mask_from(waiter_edges);
    if ((cli[0] & wtr[0]) || (cli[1] & wtr[1]))
        throw std::invalid_argument("Solver: an edge cannot belong to both players");

    const auto start = std::chrono::steady_clock::now();
    const int count = popcount(cli);
    std::int16_t value = count >= n_ && spanning(cli) ? static_cast<std::int16_t>(count)
                                                      : search(cli, wtr, count);
    stats_.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stats_.table_entries = table_.size();
    if (value == kClientWins) return SolveOutcome{};
    return SolveOutcome{value};
}

Solver::BestOffer Solver::best_offer(const std::vector<EdgeId>& client_edges,
                                     const std::vector<EdgeId>& waiter_edges) {
    if (client_edges.size() != waiter_edges.size())
        throw std::invalid_argument("Solver: positions are Waiter-to-move, claim counts must match");
    const Mask cli = mask_from(client_edges);
    const Mask wtr = mask_from(waiter_edges);
    return best_offer_masks(cli, wtr, popcount(cli));
}

Solver::BestOffer Solver::best_offer_masks(const Mask& client, const Mask& waiter,
                                           int client_count) {
    const auto edges = unclaimed_list(client, waiter);
    if (edges.size() < 2) {
        Mask unclaimed{full_[0] & ~(client[0] | waiter[0]), full_[1] & ~(client[1] | waiter[1])};
        const std::int16_t v = leftover_value(client, client_count, unclaimed);
        return BestOffer{std::nullopt,
                         v == kClientWins ? SolveOutcome{} : SolveOutcome{static_cast<int>(v)}};
    }

    const auto immediate = static_cast<std::int16_t>(client_count + 1);
    std::int16_t best = kClientWins;
    std::optional<OfferPair> arg;
    for (std::size_t i = 0; i < edges.size() && best != immediate; ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const std::int16_t v1 = after_pick(client, waiter, edges[i], edges[j], client_count);
            std::int16_t offer_value = kClientWins;
            if (v1 != kClientWins)
                offer_value = std::max(v1, after_pick(client, waiter, edges[j], edges[i], client_count));
            if (!arg || offer_value < best) {
                best = offer_value;
                arg = OfferPair{EdgeId{edges[i]}, EdgeId{edges[j]}};
            }
            if (best == immediate) break;
        }
    }
    return BestOffer{arg, best == kClientWins ? SolveOutcome{} : SolveOutcome{static_cast<int>(best)}};
}

std::vector<Solver::PvRound> Solver::principal_variation() {
    return principal_variation({}, {});
}

std::vector<Solver::PvRound> Solver::principal_variation(
    const std::vector<EdgeId>& client_edges, const std::vector<EdgeId>& waiter_edges) {
    std::vector<PvRound> pv;
    if (!solve_position(client_edges, waiter_edges).waiter_wins()) return pv;

    Mask cli = mask_from(client_edges);
    Mask wtr = mask_from(waiter_edges);
    int count = popcount(cli);
    while (true) {
        const auto bo = best_offer_masks(cli, wtr, count);
        if (!bo.offer) break;
        const int first = bo.offer->first.index;
        const int second = bo.offer->second.index;
        const std::int16_t v1 = after_pick(cli, wtr, first, second, count);
        const std::int16_t v2 = after_pick(cli, wtr, second, first, count);
        const bool take_second = v2 > v1;
        const int pick = take_second ? second : first;
        const int other = take_second ? first : second;
        pv.push_back({*bo.offer, EdgeId{pick}});

        set_bit(cli, pick);
        set_bit(wtr, other);
        ++count;
        if (count >= n_ && spanning(cli)) break;
    }
    return pv;
}

}  // namespace trifactor
