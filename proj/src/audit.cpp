#include "trifactor/audit.hpp"

#include <algorithm>
#include <bit>

namespace trifactor {

namespace {

std::uint64_t vertices_to_mask(const std::vector<Vertex>& vs) {
    std::uint64_t m = 0;
    for (const Vertex v : vs) m |= std::uint64_t{1} << v;
    return m;
}

std::string edge_text(EdgeId e) {
    const auto [u, v] = decode_edge(e);
    return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

AuditReport audit(const GameTrace& trace) {
    AuditReport report;
    report.n = trace.n;
    report.waiter_name = trace.waiter_name;
    report.client_name = trace.client_name;
    report.convention = trace.convention;

    GameState state(trace.n, trace.convention);
    const auto violation = [&](std::string check, int round, std::string message) {
        report.violations.push_back({std::move(check), round, std::move(message)});
    };

    std::uint64_t recorded_b_seen = 0;
    int expected_round = 1;
    for (const LedgerEntry& rec : trace.rounds) {
        if (rec.round != expected_round)
            throw CorruptTraceError("round indices must be 1,2,... without gaps");
        const int i = expected_round++;

        // full-definition scan of every component of G_{i-1}
        for (const Vertex root : state.client.component_roots()) {
            ++report.components_checked;
            const auto brute = brute_force_crucial_edges(state.client, state.board, root);
            const auto fast = find_crucial_edge(state.client, state.board, root);
            if (brute.size() > 1)
                violation("crucial_uniqueness", i,
                          "component of vertex " + std::to_string(root) + " has " +
                              std::to_string(brute.size()) + " crucial edges");
            const std::optional<EdgeId> slow =
                brute.empty() ? std::nullopt : std::optional<EdgeId>(brute.front());
            if (slow != fast)
                violation("fastpath_equivalence", i,
                          "fast path disagrees with full-definition scan for component of vertex " +
                              std::to_string(root));
        }
        ++report.states_checked;

        // pre-claim view: the crucial components of
        // G_{i-1} and this round's recomputed B_i
        std::vector<std::uint64_t> crucial_comp_masks;
        for (const EdgeId e : {rec.offered.first, rec.offered.second})
            if (is_crucial(state, e))
                crucial_comp_masks.push_back(
                    state.client.component(decode_edge(e).first).vertex_mask);
        std::uint64_t a_mask = 0;
        for (const auto m : crucial_comp_masks) a_mask |= m;
        const std::uint64_t b_mask = a_mask & ~state.crucial_seen;

        const LedgerEntry* replayed = nullptr;
        try {
            replayed = &resolve_round(state, rec.offered, rec.pick);
        } catch (const IllegalMoveError& err) {
            throw CorruptTraceError("round " + std::to_string(i) +
                                    " cannot be replayed: " + err.what());
        }

        // recorded-vs-recomputed ledger fields
        if (replayed->crucial != rec.crucial)
            violation("ledger_divergence", i, "crucial flags differ from replay");
        if (replayed->a_set != rec.a_set) violation("ledger_divergence", i, "A differs from replay");
        if (replayed->b_set != rec.b_set) violation("ledger_divergence", i, "B differs from replay");
        if (replayed->difficult != rec.difficult)
            violation("ledger_divergence", i, "difficult flag differs from replay");
        if (replayed->declaration != rec.declaration)
            violation("ledger_divergence", i, "declaration differs from replay");

        // every crucial component must keep at least three fresh vertices
        for (const auto comp_mask : crucial_comp_masks)
            if (std::popcount(comp_mask & b_mask) < 3)
                violation("crucial_fresh_vertices", i,
                          "crucial component retains only " +
                              std::to_string(std::popcount(comp_mask & b_mask)) +
                              " vertices of B_i");

        // difficult rounds need six fresh vertices, on both the recorded and
        // the replayed ledger
        if (rec.difficult && rec.b_set.size() < 6)
            violation("difficult_b_size", i,
                      "difficult round with |B_i| = " + std::to_string(rec.b_set.size()));
        if (replayed->difficult && std::popcount(b_mask) < 6)
            violation("difficult_b_size", i, "replayed difficult round with |B_i| = " +
                                              std::to_string(std::popcount(b_mask)));

        const std::uint64_t rec_b = vertices_to_mask(rec.b_set);
        if ((rec_b & recorded_b_seen) != 0)
            violation("b_disjoint", i, "B_i intersects an earlier B_j");
        recorded_b_seen |= rec_b;

        if (replayed->difficult) ++report.difficult_rounds;
        if (trace.client_name == "avoid_crucial" && replayed->declaration && !replayed->difficult)
            violation("declaration_implies_difficult", i,
                      "declaration on pick " + edge_text(rec.pick) + " outside a difficult round");
    }

    report.rounds_replayed = static_cast<int>(trace.rounds.size());
    if (state.finished == Winner::Undecided) {
        if (state.board.unclaimed_count() < 2)
            finish_leftovers(state);
        else
            report.partial = true;
    }

    report.declarations = static_cast<int>(state.client.declarations().size());
    report.client_edges = state.client.edge_count();
    if (state.finished == Winner::Waiter)
        report.outcome = {Winner::Waiter, state.round};
    else if (state.finished == Winner::Client)
        report.outcome = {Winner::Client, std::nullopt};

    if (report.partial) {
        if (trace.outcome.winner != Winner::Client || trace.outcome.rounds)
            violation("outcome_divergence", -1,
                      "aborted trace must record winner \"client\" with null rounds");
        report.skipped_checks.push_back("outcome_divergence (partial trace)");
    } else if (trace.outcome != report.outcome) {
        violation("outcome_divergence", -1, "recorded outcome differs from replay");
    }

    const int n = trace.n;
    const int k = report.declarations;
    if (trace.client_name == "avoid_crucial" && trace.convention == Convention::WaiterLeftover) {
        if (6 * k > n)
            violation("declaration_budget", -1,
                      std::to_string(k) + " declarations exceed n/6 = " + std::to_string(n) + "/6");
    } else {
        report.skipped_checks.push_back(
            "declaration_budget (client is not avoid_crucial under the default convention)");
    }

    if (!report.partial && state.finished == Winner::Waiter && 6 * k <= n) {
        if (6 * report.client_edges < 7 * n)
            violation("win_edge_bound", -1,
                      "Waiter win with " + std::to_string(report.client_edges) +
                          " Client edges, below 7n/6");
        if (6 * state.round < 7 * n)
            violation("win_round_bound", -1,
                      "Waiter win in " + std::to_string(state.round) + " rounds, below 7n/6");
    }

    return report;
}

}  // namespace trifactor
