#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trifactor/engine.hpp"

namespace trifactor {

struct AuditViolation {
    std::string check;
    int round = -1;  // -1 for game-level checks
    std::string message;
};

struct AuditReport {
    int n = 0;
    std::string waiter_name;
    std::string client_name;
    Convention convention = Convention::WaiterLeftover;

    int rounds_replayed = 0;
    int declarations = 0;
    int difficult_rounds = 0;
    GameOutcome outcome;  // recomputed by replay
    std::int32_t client_edges = 0;
    bool partial = false;  // trace stops with two or more edges unclaimed

    // full-definition crucial-detector accounting
    std::int64_t states_checked = 0;
    std::int64_t components_checked = 0;

    std::vector<AuditViolation> violations;
    std::vector<std::string> skipped_checks;

    bool passed() const { return violations.empty(); }
};

// Replays the trace and checks every structural claim against it:
//   crucial_uniqueness                at most one crucial edge per component, by
//                            full-definition scan of every component
//   fastpath_equivalence     the incremental detector equals that scan
//   crucial_fresh_vertices                every crucial component C meets |V(C) & B_i| >= 3
//   difficult_b_size            difficult rounds have |B_i| >= 6
//   b_disjoint               recorded B sets are pairwise disjoint
//   ledger_divergence        recorded ledger fields match the replay
//   declaration_implies_difficult   (avoid_crucial only)
//   declaration_budget          declarations <= n/6 (avoid_crucial, default
//                            leftover convention only)
//   win_edge_bound    Waiter wins with <= n/6 declarations end with
//                            at least 7n/6 Client edges
//   win_round_bound       ... and take at least 7n/6 rounds
//   outcome_divergence       recorded outcome matches the replay
//
// Structural checks run against the recorded ledger where one exists (so
// edited traces surface as real violations, not just divergences) and the
// recomputed ledger. Structurally unreplayable traces throw
// CorruptTraceError; everything else becomes a report entry.
AuditReport audit(const GameTrace& trace);

}  // namespace trifactor
