#ifndef TROPCANON_CONNECTIVITY_HPP
#define TROPCANON_CONNECTIVITY_HPP

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tropcanon/curve.hpp"

namespace tropcanon {

/// Vertex filter for induced subgraphs. An empty mask keeps every vertex.
using VertexMask = std::vector<bool>;

inline bool kept(const VertexMask& keep, int v) { return keep.empty() || keep[v]; }

inline bool edge_kept(const CombinatorialCurve& c, const VertexMask& keep, int e) {
    return kept(keep, c.edges[e].ends[0]) && kept(keep, c.edges[e].ends[1]);
}

struct BlockDecomposition {
    std::vector<int> bridges;               // sorted edge indices
    std::vector<std::vector<int>> blocks;   // each block as a sorted edge list; loops are singleton blocks
    std::vector<int> cut_vertices;          // sorted
    std::vector<int> block_of_edge;         // -1 for edges outside the induced subgraph

    bool is_bridge(int e) const { return std::binary_search(bridges.begin(), bridges.end(), e); }
    bool is_cut_vertex(int v) const { return std::binary_search(cut_vertices.begin(), cut_vertices.end(), v); }
};

/// Bridges, biconnected blocks and cut vertices of the subgraph induced on kept vertices.
inline BlockDecomposition blocks(const CombinatorialCurve& c, const VertexMask& keep = {}) {
    const int n = c.vertex_count();
    BlockDecomposition out;
    out.block_of_edge.assign(c.edges.size(), -1);
    std::vector<std::vector<int>> adj(n);  // half-edges leaving each vertex along non-loop kept edges
    for (int e = 0; e < c.edge_count(); ++e) {
        if (!edge_kept(c, keep, e)) continue;
        if (c.edges[e].is_loop()) {
            out.block_of_edge[e] = static_cast<int>(out.blocks.size());
            out.blocks.push_back({e});
            continue;
        }
        adj[c.edges[e].ends[0]].push_back(half_edge(e, 0));
        adj[c.edges[e].ends[1]].push_back(half_edge(e, 1));
    }

    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> stack;
    std::set<int> cuts;
    int time = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = time++;
        int children = 0;
        for (int h : adj[v]) {
            int e = edge_of(h);
            if (e == parent_edge) continue;
            int w = c.half_edge_vertex(opposite(h));
            if (disc[w] < 0) {
                stack.push_back(e);
                ++children;
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) out.bridges.push_back(e);
                if (low[w] >= disc[v]) {
                    if (parent_edge >= 0 || children > 1) cuts.insert(v);
                    std::vector<int> block;
                    while (true) {
                        int top = stack.back();
                        stack.pop_back();
                        block.push_back(top);
                        if (top == e) break;
                    }
                    std::sort(block.begin(), block.end());
                    for (int x : block) out.block_of_edge[x] = static_cast<int>(out.blocks.size());
                    out.blocks.push_back(std::move(block));
                }
            } else if (disc[w] < disc[v]) {
                stack.push_back(e);
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (kept(keep, v) && disc[v] < 0) dfs(v, -1);

    // A vertex carrying a loop and another block is also a cut vertex.
    std::vector<std::set<int>> blocks_at(n);
    for (int b = 0; b < static_cast<int>(out.blocks.size()); ++b)
        for (int e : out.blocks[b])
            for (int x : c.edges[e].ends) blocks_at[x].insert(b);
    for (int v = 0; v < n; ++v)
        if (blocks_at[v].size() > 1) cuts.insert(v);

    std::sort(out.bridges.begin(), out.bridges.end());
    out.cut_vertices.assign(cuts.begin(), cuts.end());
    return out;
}

/// True iff `e` is not a bridge of the induced subgraph (loops always qualify).
inline bool edge_on_cycle(const CombinatorialCurve& c, int e, const VertexMask& keep = {}) {
    if (!edge_kept(c, keep, e)) throw Error(ErrorKind::InvalidQuery, "edge '" + c.edges[e].id + "' leaves the kept subgraph");
    if (c.edges[e].is_loop()) return true;
    return !blocks(c, keep).is_bridge(e);
}

/// True iff `v` lies on a simple cycle of the induced subgraph.
inline bool vertex_on_cycle(const CombinatorialCurve& c, int v, const VertexMask& keep = {}) {
    if (!kept(keep, v)) throw Error(ErrorKind::InvalidQuery, "vertex '" + c.vertices[v].id + "' is not kept");
    auto dec = blocks(c, keep);
    for (int e = 0; e < c.edge_count(); ++e) {
        if (!edge_kept(c, keep, e)) continue;
        const auto& ends = c.edges[e].ends;
        if (ends[0] != v && ends[1] != v) continue;
        if (c.edges[e].is_loop() || !dec.is_bridge(e)) return true;
    }
    return false;
}

/// A simple cycle through edge `e` inside the induced subgraph, as an edge
/// list starting with `e`, or nullopt if `e` is a bridge there.
inline std::optional<std::vector<int>> cycle_through_edge(const CombinatorialCurve& c, int e, const VertexMask& keep = {}) {
    if (!edge_kept(c, keep, e)) return std::nullopt;
    if (c.edges[e].is_loop()) return std::vector<int>{e};
    const int a = c.edges[e].ends[0];
    const int b = c.edges[e].ends[1];
    auto inc = c.incidence();
    std::vector<int> via(c.vertex_count(), -2);  // half-edge used to reach a vertex
    std::deque<int> queue{b};
    via[b] = -1;
    while (!queue.empty() && via[a] == -2) {
        int v = queue.front();
        queue.pop_front();
        for (int h : inc[v]) {
            int f = edge_of(h);
            if (f == e || c.edges[f].is_loop() || !edge_kept(c, keep, f)) continue;
            int w = c.half_edge_vertex(opposite(h));
            if (via[w] != -2) continue;
            via[w] = h;
            queue.push_back(w);
        }
    }
    if (via[a] == -2) return std::nullopt;
    std::vector<int> cycle{e};
    for (int v = a; v != b; v = c.half_edge_vertex(via[v])) cycle.push_back(edge_of(via[v]));
    return cycle;
}

/// A simple cycle through vertex `v` inside the induced subgraph, preferring
/// a loop at `v`; nullopt if none exists.
inline std::optional<std::vector<int>> cycle_through_vertex(const CombinatorialCurve& c, int v, const VertexMask& keep = {}) {
    if (!kept(keep, v)) return std::nullopt;
    auto inc = c.incidence();
    for (int h : inc[v])
        if (c.edges[edge_of(h)].is_loop() && edge_kept(c, keep, edge_of(h))) return std::vector<int>{edge_of(h)};
    for (int h : inc[v]) {
        auto cycle = cycle_through_edge(c, edge_of(h), keep);
        if (cycle) return cycle;
    }
    return std::nullopt;
}

/// Checks that the edge set `cycle` forms one simple cycle in the induced subgraph.
inline bool is_simple_cycle(const CombinatorialCurve& c, const std::vector<int>& cycle, const VertexMask& keep = {}) {
    if (cycle.empty()) return false;
    for (int e : cycle)
        if (e < 0 || e >= c.edge_count() || !edge_kept(c, keep, e)) return false;
    if (cycle.size() == 1) return c.edges[cycle[0]].is_loop();
    if (std::set<int>(cycle.begin(), cycle.end()).size() != cycle.size()) return false;
    std::map<int, std::vector<int>> degree;  // vertex -> incident cycle edges
    for (int e : cycle) {
        if (c.edges[e].is_loop()) return false;
        for (int x : c.edges[e].ends) degree[x].push_back(e);
    }
    for (const auto& [v, es] : degree)
        if (es.size() != 2) return false;
    // Connectedness: walk from the first edge.
    std::set<int> reached{cycle[0]};
    int prev = cycle[0];
    int cur = c.edges[cycle[0]].ends[1];
    while (true) {
        const auto& es = degree[cur];
        int next = es[0] == prev ? es[1] : es[0];
        if (!reached.insert(next).second) break;
        prev = next;
        cur = c.edges[next].ends[0] == cur ? c.edges[next].ends[1] : c.edges[next].ends[0];
    }
    return reached.size() == cycle.size();
}

/// Connected components of the induced subgraph; component id per vertex, -1 if not kept.
inline std::vector<int> components(const CombinatorialCurve& c, const VertexMask& keep, int* count = nullptr) {
    std::vector<int> comp(c.vertex_count(), -1);
    auto inc = c.incidence();
    int next = 0;
    for (int s = 0; s < c.vertex_count(); ++s) {
        if (!kept(keep, s) || comp[s] >= 0) continue;
        std::vector<int> todo{s};
        comp[s] = next;
        while (!todo.empty()) {
            int v = todo.back();
            todo.pop_back();
            for (int h : inc[v]) {
                int w = c.half_edge_vertex(opposite(h));
                if (!kept(keep, w) || comp[w] >= 0) continue;
                comp[w] = next;
                todo.push_back(w);
            }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

}  // namespace tropcanon

#endif  // TROPCANON_CONNECTIVITY_HPP
