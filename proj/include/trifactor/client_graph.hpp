#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "trifactor/board.hpp"
#include "trifactor/errors.hpp"

namespace trifactor {

// Emitted when a component is declared good: it gained a triangle-factor
// with exactly 4|V|/3 - 1 edges and neither endpoint of the new edge was in
// a good component. Absorbing vertices into an already-good component never
// emits one.
struct DeclarationEvent {
    int round = 0;
    std::vector<Vertex> vertices;  // sorted

    bool operator==(const DeclarationEvent&) const = default;
};

struct ComponentView {
    std::vector<Vertex> vertices;  // insertion order; use vertex_mask for set queries
    std::uint64_t vertex_mask = 0;
    std::int32_t edge_count = 0;
    bool good = false;
    // The unique unclaimed-or-not edge whose addition would trigger a
    // declaration, ignoring board claim state. Board filtering happens in
    // find_crucial_edge.
    std::optional<EdgeId> crucial_candidate;

    // cache for the component-level factor test
    mutable std::int32_t factor_checked_at = -1;
    mutable bool factor_ok = false;

    int size() const { return static_cast<int>(vertices.size()); }
};

// Fewest edges a connected graph on n0 vertices can have while containing a
// triangle-factor: 4*n0/3 - 1.
std::int32_t min_factor_edges(int n0);

// True iff `vertices` (a bitmask) can be partitioned into vertex-disjoint
// triangles of the graph given by adjacency rows. Backtracking on a
// minimum-degree vertex with divisibility and degree->=-2 pruning.
bool has_triangle_factor(std::span<const std::uint64_t> adjacency_rows,
                         std::uint64_t vertices);

// Incremental tracker of Client's graph: connected components with good/bad
// state, triangle membership, and per-component crucial-edge candidates.
// Edges are never removed; all derived state is grow-only.
class ClientGraph {
public:
    explicit ClientGraph(int n);

    int n() const { return n_; }
    std::int32_t edge_count() const { return edge_count_; }

    bool has_edge(Vertex a, Vertex b) const;
    std::uint64_t adjacency_row(Vertex v) const;
    std::span<const std::uint64_t> adjacency() const { return rows_; }

    Vertex find_root(Vertex v) const;
    const ComponentView& component(Vertex v) const;
    std::vector<Vertex> component_roots() const;  // ascending

    bool in_triangle(Vertex v) const { return (triangled_ >> v) & 1; }
    std::uint64_t triangled_mask() const { return triangled_; }
    std::uint64_t untriangled_mask(Vertex v) const;

    const std::vector<DeclarationEvent>& declarations() const { return declarations_; }

    // Adds a Client edge and reclassifies the merged component in the fixed
    // rule order: any good endpoint keeps the result good with no event;
    // otherwise a declaration fires exactly when the component gains a
    // triangle-factor at edge count 4|V|/3 - 1.
    std::optional<DeclarationEvent> add_edge(EdgeId e, int round);

    bool component_has_factor(Vertex v) const;
    // Spanning triangle-factor over all n vertices (isolated vertices fail).
    bool has_spanning_factor() const;

private:
    std::optional<EdgeId> compute_crucial_candidate(Vertex root);

    int n_;
    std::int32_t edge_count_ = 0;
    std::vector<std::uint64_t> rows_;
    std::uint64_t triangled_ = 0;
    mutable std::vector<Vertex> parent_;
    std::vector<ComponentView> comps_;  // valid only at root indices
    std::vector<DeclarationEvent> declarations_;
};

enum class CrucialCheck {
    Fast,     // cached candidate + board filter
    Verified  // additionally run the full-definition scan and cross-check
};

// The unique unclaimed edge inside the component whose selection by Client
// would declare the component good, if any.
std::optional<EdgeId> find_crucial_edge(const ClientGraph& g, const Board& board,
                                        Vertex component_vertex);

// Full-definition check: every unclaimed vertex pair inside the component,
// tested for a declaration by simulating the classification rules.
std::vector<EdgeId> brute_force_crucial_edges(const ClientGraph& g, const Board& board,
                                              Vertex component_vertex);

// One entry per component possessing a crucial edge. In Verified mode the
// full-definition scan must agree with the fast path and find at most one
// edge per component; disagreement throws InvariantViolationError.
std::map<Vertex, EdgeId> all_crucial_edges(const ClientGraph& g, const Board& board,
                                           CrucialCheck check = CrucialCheck::Fast);

}  // namespace trifactor
