#include "trifactor/client_graph.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace trifactor {

namespace {

constexpr std::uint64_t bit(Vertex v) { return std::uint64_t{1} << v; }

bool factor_search(const std::uint64_t* rows, std::uint64_t cover,
                   std::unordered_set<std::uint64_t>* failed) {
    if (cover == 0) return true;
    if (failed && failed->contains(cover)) return false;

    // min-degree branching; any vertex with fewer than two neighbours left
    // kills the branch
    Vertex best = -1;
    int best_deg = 65;
    for (std::uint64_t m = cover; m != 0; m &= m - 1) {
        const Vertex v = std::countr_zero(m);
        const int d = std::popcount(rows[v] & cover);
        if (d < 2) return false;
        if (d < best_deg) {
            best_deg = d;
            best = v;
        }
    }

    const std::uint64_t nb = rows[best] & cover;
    for (std::uint64_t mx = nb; mx != 0; mx &= mx - 1) {
        const Vertex x = std::countr_zero(mx);
        for (std::uint64_t my = mx & (mx - 1); my != 0; my &= my - 1) {
            const Vertex y = std::countr_zero(my);
            if (((rows[x] >> y) & 1) == 0) continue;
            if (factor_search(rows, cover & ~(bit(best) | bit(x) | bit(y)), failed))
                return true;
        }
    }
    if (failed) failed->insert(cover);
    return false;
}

}  // namespace

std::int32_t min_factor_edges(int n0) {
    if (n0 < 3 || n0 % 3 != 0)
        throw std::invalid_argument("min_factor_edges: size must be a positive multiple of 3");
    return 4 * n0 / 3 - 1;
}

bool has_triangle_factor(std::span<const std::uint64_t> adjacency_rows,
                         std::uint64_t vertices) {
    const int k = std::popcount(vertices);
    if (k % 3 != 0) return false;
    if (k == 0) return true;
    if (k >= 18) {
        // duplicate uncovered sets show up on larger components; remember
        // failed ones
        thread_local std::unordered_set<std::uint64_t> failed;
        failed.clear();
        return factor_search(adjacency_rows.data(), vertices, &failed);
    }
    return factor_search(adjacency_rows.data(), vertices, nullptr);
}

ClientGraph::ClientGraph(int n) : n_(n) {
    if (n < 1 || n > kMaxVertices)
        throw std::invalid_argument("ClientGraph: n must be in [1, 64]");
    rows_.assign(n, 0);
    parent_.resize(n);
    comps_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        parent_[v] = v;
        comps_[v].vertices = {v};
        comps_[v].vertex_mask = bit(v);
    }
}

bool ClientGraph::has_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
        throw std::invalid_argument("ClientGraph::has_edge: vertex out of range");
    return (rows_[a] >> b) & 1;
}

std::uint64_t ClientGraph::adjacency_row(Vertex v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("ClientGraph::adjacency_row: vertex out of range");
    return rows_[v];
}

Vertex ClientGraph::find_root(Vertex v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("ClientGraph::find_root: vertex out of range");
    Vertex r = v;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[v] != r) {
        const Vertex next = parent_[v];
        parent_[v] = r;
        v = next;
    }
    return r;
}

const ComponentView& ClientGraph::component(Vertex v) const {
    return comps_[find_root(v)];
}

std::vector<Vertex> ClientGraph::component_roots() const {
    std::vector<Vertex> roots;
    for (Vertex v = 0; v < n_; ++v)
        if (find_root(v) == v) roots.push_back(v);
    return roots;
}

std::uint64_t ClientGraph::untriangled_mask(Vertex v) const {
    return component(v).vertex_mask & ~triangled_;
}

std::optional<DeclarationEvent> ClientGraph::add_edge(EdgeId e, int round) {
    const auto [a, b] = decode_edge(e);
    if (b >= n_)
        throw std::invalid_argument("ClientGraph::add_edge: edge outside the board");
    if (has_edge(a, b))
        throw IllegalMoveError("add_edge: edge already in Client's graph");

    rows_[a] |= bit(b);
    rows_[b] |= bit(a);
    ++edge_count_;

    const Vertex ra = find_root(a);
    const Vertex rb = find_root(b);
    const bool any_good = comps_[ra].good || comps_[rb].good;

    Vertex root = ra;
    if (ra != rb) {
        Vertex big = ra, small = rb;
        if (comps_[big].vertices.size() < comps_[small].vertices.size())
            std::swap(big, small);
        ComponentView& dst = comps_[big];
        ComponentView& src = comps_[small];
        dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
        dst.vertex_mask |= src.vertex_mask;
        dst.edge_count += src.edge_count;
        parent_[small] = big;
        src = ComponentView{};
        root = big;
    }
    ComponentView& comp = comps_[root];
    comp.edge_count += 1;

    // every common neighbour of a and b completes a triangle
    for (std::uint64_t m = rows_[a] & rows_[b]; m != 0; m &= m - 1)
        triangled_ |= bit(a) | bit(b) | bit(std::countr_zero(m));

    std::optional<DeclarationEvent> event;
    if (any_good) {
        comp.good = true;
    } else if (comp.size() % 3 == 0 &&
               comp.edge_count == min_factor_edges(comp.size()) &&
               has_triangle_factor(rows_, comp.vertex_mask)) {
        comp.good = true;
        DeclarationEvent ev;
        ev.round = round;
        ev.vertices = comp.vertices;
        std::sort(ev.vertices.begin(), ev.vertices.end());
        declarations_.push_back(ev);
        event = ev;
    }

    comp.crucial_candidate = compute_crucial_candidate(root);
    comp.factor_checked_at = -1;
    return event;
}

std::optional<EdgeId> ClientGraph::compute_crucial_candidate(Vertex root) {
    const ComponentView& comp = comps_[root];
    if (comp.good) return std::nullopt;
    const int k = comp.size();
    if (k % 3 != 0) return std::nullopt;
    if (comp.edge_count + 1 != min_factor_edges(k)) return std::nullopt;

    std::uint64_t um = comp.vertex_mask & ~triangled_;
    if (std::popcount(um) != 3) return std::nullopt;

    Vertex x[3];
    for (int i = 0; i < 3; ++i) {
        x[i] = std::countr_zero(um);
        um &= um - 1;
    }
    // the declaring edge must close the triangle on the three untriangled
    // vertices, so exactly one of its edges may be missing
    Vertex mu = -1, mv = -1;
    int missing = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (((rows_[x[i]] >> x[j]) & 1) == 0) {
                ++missing;
                mu = x[i];
                mv = x[j];
            }
    if (missing != 1) return std::nullopt;

    // confirm against the full definition: the component plus this edge must
    // actually have a triangle-factor
    rows_[mu] |= bit(mv);
    rows_[mv] |= bit(mu);
    const bool ok = has_triangle_factor(rows_, comp.vertex_mask);
    rows_[mu] &= ~bit(mv);
    rows_[mv] &= ~bit(mu);
    if (!ok) return std::nullopt;
    return encode_edge(n_, mu, mv);
}

bool ClientGraph::component_has_factor(Vertex v) const {
    const ComponentView& comp = component(v);
    if (comp.factor_checked_at != comp.edge_count) {
        comp.factor_ok = has_triangle_factor(rows_, comp.vertex_mask);
        comp.factor_checked_at = comp.edge_count;
    }
    return comp.factor_ok;
}

bool ClientGraph::has_spanning_factor() const {
    if (edge_count_ < n_) return false;  // n/3 triangles need n edges
    if (std::popcount(triangled_) != n_) return false;
    for (Vertex v = 0; v < n_; ++v) {
        if (find_root(v) != v) continue;
        const ComponentView& comp = comps_[v];
        if (comp.size() % 3 != 0) return false;
        if (!component_has_factor(v)) return false;
    }
    return true;
}

std::optional<EdgeId> find_crucial_edge(const ClientGraph& g, const Board& board,
                                        Vertex component_vertex) {
    const auto& comp = g.component(component_vertex);
    if (!comp.crucial_candidate) return std::nullopt;
    if (board.state(*comp.crucial_candidate) != EdgeState::Unclaimed) return std::nullopt;
    return comp.crucial_candidate;
}

std::vector<EdgeId> brute_force_crucial_edges(const ClientGraph& g, const Board& board,
                                              Vertex component_vertex) {
    const auto& comp = g.component(component_vertex);
    std::vector<EdgeId> found;
    if (comp.good) return found;
    const int k = comp.size();
    // the declaration rule requires edge count exactly 4|V|/3 - 1 after the
    // add, independent of which edge is added
    if (k % 3 != 0) return found;
    if (comp.edge_count + 1 != min_factor_edges(k)) return found;

    std::vector<Vertex> verts = comp.vertices;
    std::sort(verts.begin(), verts.end());
    std::vector<std::uint64_t> rows(g.adjacency().begin(), g.adjacency().end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            const Vertex a = verts[i], b = verts[j];
            if (g.has_edge(a, b)) continue;
            const EdgeId e = encode_edge(g.n(), a, b);
            if (board.state(e) != EdgeState::Unclaimed) continue;
            rows[a] |= std::uint64_t{1} << b;
            rows[b] |= std::uint64_t{1} << a;
            if (has_triangle_factor(rows, comp.vertex_mask)) found.push_back(e);
            rows[a] &= ~(std::uint64_t{1} << b);
            rows[b] &= ~(std::uint64_t{1} << a);
        }
    }
    return found;
}

std::map<Vertex, EdgeId> all_crucial_edges(const ClientGraph& g, const Board& board,
                                           CrucialCheck check) {
    std::map<Vertex, EdgeId> out;
    for (const Vertex root : g.component_roots()) {
        const auto fast = find_crucial_edge(g, board, root);
        if (check == CrucialCheck::Verified) {
            const auto brute = brute_force_crucial_edges(g, board, root);
            if (brute.size() > 1)
                throw InvariantViolationError(
                    "all_crucial_edges: component with two crucial edges");
            const std::optional<EdgeId> slow =
                brute.empty() ? std::nullopt : std::optional<EdgeId>(brute.front());
            if (slow != fast)
                throw InvariantViolationError(
                    "all_crucial_edges: fast path disagrees with full definition");
        }
        if (fast) out.emplace(root, *fast);
    }
    return out;
}

}  // namespace trifactor
