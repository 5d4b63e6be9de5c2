#ifndef TROPCANON_CURVE_HPP
#define TROPCANON_CURVE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropcanon/errors.hpp"
#include "tropcanon/rational.hpp"

namespace tropcanon {

struct Vertex {
    std::string id;
    int genus = 0;
};

/// An edge between ends[0] and ends[1] (vertex indices). Half-edge 2*e sits
/// at ends[0], half-edge 2*e+1 at ends[1]; a loop keeps both half-edges at
/// the same vertex and is traversed from half-edge 2*e to 2*e+1.
struct Edge {
    std::string id;
    std::array<int, 2> ends{0, 0};

    bool is_loop() const { return ends[0] == ends[1]; }
};

struct Leg {
    std::string id;
    int vertex = 0;
};

inline int half_edge(int edge, int end) { return 2 * edge + end; }
inline int edge_of(int half) { return half / 2; }
inline int end_of(int half) { return half % 2; }
inline int opposite(int half) { return half ^ 1; }

/// Finite connected multigraph with loops, genus weights and legs.
struct CombinatorialCurve {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Leg> legs;

    int add_vertex(std::string id, int genus = 0) {
        vertices.push_back({std::move(id), genus});
        return static_cast<int>(vertices.size()) - 1;
    }
    int add_edge(std::string id, int a, int b) {
        edges.push_back({std::move(id), {a, b}});
        return static_cast<int>(edges.size()) - 1;
    }
    int add_leg(std::string id, int v) {
        legs.push_back({std::move(id), v});
        return static_cast<int>(legs.size()) - 1;
    }

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    int half_edge_vertex(int half) const { return edges[edge_of(half)].ends[end_of(half)]; }

    std::optional<int> find_vertex(std::string_view id) const {
        for (int i = 0; i < vertex_count(); ++i)
            if (vertices[i].id == id) return i;
        return std::nullopt;
    }
    std::optional<int> find_edge(std::string_view id) const {
        for (int i = 0; i < edge_count(); ++i)
            if (edges[i].id == id) return i;
        return std::nullopt;
    }
    int vertex_index(std::string_view id) const {
        auto v = find_vertex(id);
        if (!v) throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + std::string(id) + "'");
        return *v;
    }
    int edge_index(std::string_view id) const {
        auto e = find_edge(id);
        if (!e) throw Error(ErrorKind::InvalidArgument, "unknown edge '" + std::string(id) + "'");
        return *e;
    }

    /// Half-edges at each vertex, in increasing half-edge order.
    std::vector<std::vector<int>> incidence() const {
        std::vector<std::vector<int>> inc(vertices.size());
        for (int e = 0; e < edge_count(); ++e) {
            inc[edges[e].ends[0]].push_back(half_edge(e, 0));
            inc[edges[e].ends[1]].push_back(half_edge(e, 1));
        }
        return inc;
    }

    std::vector<std::vector<int>> legs_at() const {
        std::vector<std::vector<int>> out(vertices.size());
        for (int l = 0; l < static_cast<int>(legs.size()); ++l) out[legs[l].vertex].push_back(l);
        return out;
    }

    /// Valency counting loops twice and, optionally, legs once.
    std::vector<int> valence(bool count_legs) const {
        std::vector<int> val(vertices.size(), 0);
        for (const auto& e : edges) {
            ++val[e.ends[0]];
            ++val[e.ends[1]];
        }
        if (count_legs)
            for (const auto& l : legs) ++val[l.vertex];
        return val;
    }
};

/// Throws InvalidCurve unless ids are distinct, references resolve and the graph is connected.
inline void validate(const CombinatorialCurve& c) {
    if (c.vertices.empty()) throw Error(ErrorKind::InvalidCurve, "curve has no vertices");
    auto distinct = [](auto const& items, const char* what) {
        std::set<std::string> seen;
        for (const auto& it : items)
            if (!seen.insert(it.id).second)
                throw Error(ErrorKind::InvalidCurve, std::string("duplicate ") + what + " id '" + it.id + "'");
    };
    distinct(c.vertices, "vertex");
    distinct(c.edges, "edge");
    distinct(c.legs, "leg");
    const int n = c.vertex_count();
    for (const auto& v : c.vertices)
        if (v.genus < 0) throw Error(ErrorKind::InvalidCurve, "negative genus at '" + v.id + "'");
    for (const auto& e : c.edges)
        for (int x : e.ends)
            if (x < 0 || x >= n) throw Error(ErrorKind::InvalidCurve, "edge '" + e.id + "' references a missing vertex");
    for (const auto& l : c.legs)
        if (l.vertex < 0 || l.vertex >= n) throw Error(ErrorKind::InvalidCurve, "leg '" + l.id + "' references a missing vertex");

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : c.edges) parent[find(e.ends[0])] = find(e.ends[1]);
    for (int v = 1; v < n; ++v)
        if (find(v) != find(0)) throw Error(ErrorKind::InvalidCurve, "curve is not connected");
}

inline int first_betti(const CombinatorialCurve& c) {
    return c.edge_count() - c.vertex_count() + 1;
}

inline int genus(const CombinatorialCurve& c) {
    int g = first_betti(c);
    for (const auto& v : c.vertices) g += v.genus;
    return g;
}

enum class Stability { Stable, Semistable, Neither };

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Semistable: return "Semistable";
        case Stability::Neither: return "Neither";
    }
    return "?";
}

inline Stability stability(const CombinatorialCurve& c, bool count_legs) {
    auto val = c.valence(count_legs);
    bool strict = true;
    for (int v = 0; v < c.vertex_count(); ++v) {
        int s = 2 * c.vertices[v].genus - 2 + val[v];
        if (s < 0) return Stability::Neither;
        if (s == 0) strict = false;
    }
    return strict ? Stability::Stable : Stability::Semistable;
}

/// CombinatorialCurve with strictly positive rational edge lengths.
struct MetricCurve {
    CombinatorialCurve base;
    std::vector<Rational> length;  // indexed by edge

    const Rational& length_of(int edge) const { return length[edge]; }
    Rational total_length() const {
        Rational t = 0;
        for (const auto& l : length) t += l;
        return t;
    }
};

inline void validate(const MetricCurve& m) {
    validate(m.base);
    if (m.length.size() != m.base.edges.size())
        throw Error(ErrorKind::InvalidCurve, "every edge needs a length");
    for (std::size_t e = 0; e < m.length.size(); ++e)
        if (m.length[e] <= 0) throw Error(ErrorKind::InvalidCurve, "edge '" + m.base.edges[e].id + "' has non-positive length");
}

/// A point of the metric realization: a vertex, or a point strictly inside
/// an edge at `offset` from ends[0] (for loops: along the half-edge order).
struct CurvePoint {
    int vertex = -1;
    int edge = -1;
    Rational offset;

    static CurvePoint at_vertex(int v) { return {v, -1, 0}; }
    static CurvePoint interior(int e, Rational o) { return {-1, e, std::move(o)}; }

    bool is_vertex() const { return vertex >= 0; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        return a.vertex == b.vertex && a.edge == b.edge && a.offset == b.offset;
    }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
        if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
        if (a.is_vertex()) return a.vertex < b.vertex;
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.offset < b.offset;
    }
};

inline void validate_point(const MetricCurve& m, const CurvePoint& p) {
    if (p.is_vertex()) {
        if (p.vertex >= m.base.vertex_count()) throw Error(ErrorKind::InvalidArgument, "point references a missing vertex");
        return;
    }
    if (p.edge < 0 || p.edge >= m.base.edge_count()) throw Error(ErrorKind::InvalidArgument, "point references a missing edge");
    if (p.offset <= 0 || p.offset >= m.length[p.edge])
        throw Error(ErrorKind::InvalidArgument, "offset on edge '" + m.base.edges[p.edge].id + "' must lie strictly inside the edge");
}

inline std::string describe(const CombinatorialCurve& c, const CurvePoint& p) {
    if (p.is_vertex()) return c.vertices[p.vertex].id;
    return c.edges[p.edge].id + "@" + to_string(p.offset);
}

/// How an edge of a coarser/finer model sits inside an edge of the other model.
struct EdgeImage {
    int edge = 0;           // edge in the target model
    Rational start;         // offset in the target edge where this edge's end 0 lies
    bool reversed = false;  // true if this edge runs against the target orientation
};

struct Subdivision {
    MetricCurve curve;
    std::map<CurvePoint, int> new_vertex;  // requested point -> vertex of the refined curve
    std::vector<std::vector<int>> pieces;  // original edge -> refined edges in order
};

/// Splits edges at the given interior points. Vertex points map to themselves.
inline Subdivision subdivide(const MetricCurve& m, const std::set<CurvePoint>& points) {
    std::map<int, std::vector<Rational>> cuts;
    for (const auto& p : points) {
        validate_point(m, p);
        if (!p.is_vertex()) cuts[p.edge].push_back(p.offset);
    }
    Subdivision out;
    out.curve.base.vertices = m.base.vertices;
    out.curve.base.legs = m.base.legs;
    out.pieces.resize(m.base.edges.size());
    for (const auto& p : points)
        if (p.is_vertex()) out.new_vertex[p] = p.vertex;
    for (int e = 0; e < m.base.edge_count(); ++e) {
        const Edge& edge = m.base.edges[e];
        auto it = cuts.find(e);
        if (it == cuts.end()) {
            out.pieces[e].push_back(out.curve.base.add_edge(edge.id, edge.ends[0], edge.ends[1]));
            out.curve.length.push_back(m.length[e]);
            continue;
        }
        auto offsets = it->second;
        std::sort(offsets.begin(), offsets.end());
        offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
        int prev = edge.ends[0];
        Rational prev_offset = 0;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            int v = out.curve.base.add_vertex(edge.id + "@" + to_string(offsets[i]), 0);
            out.new_vertex[CurvePoint::interior(e, offsets[i])] = v;
            out.pieces[e].push_back(out.curve.base.add_edge(edge.id + "#" + std::to_string(i), prev, v));
            out.curve.length.push_back(offsets[i] - prev_offset);
            prev = v;
            prev_offset = offsets[i];
        }
        out.pieces[e].push_back(out.curve.base.add_edge(edge.id + "#" + std::to_string(offsets.size()), prev, edge.ends[1]));
        out.curve.length.push_back(m.length[e] - prev_offset);
    }
    return out;
}

/// Id for an edge obtained by merging a chain: pieces "x#0", "x#1", ... of
/// one subdivided edge recover "x"; otherwise the ids are joined with '+'.
inline std::string merged_edge_id(const std::vector<std::string>& ids) {
    if (ids.size() == 1) return ids.front();
    auto stem = [](const std::string& id) {
        auto hash = id.rfind('#');
        return hash == std::string::npos ? std::string() : id.substr(0, hash);
    };
    std::string common = stem(ids.front());
    bool same = !common.empty();
    for (const auto& id : ids) same = same && stem(id) == common;
    if (same) return common;
    std::string joined;
    for (const auto& id : ids) joined += (joined.empty() ? "" : "+") + id;
    return joined;
}

struct Suppression {
    MetricCurve curve;
    std::vector<CurvePoint> vertex_image;  // old vertex -> point of the new curve
    std::vector<EdgeImage> edge_image;     // old edge -> placement in the new curve
};

/// Removes 2-valent genus-0 vertices without legs by merging their two
/// edges, until none is left (a lone circle keeps one vertex). Vertices
/// flagged in `protect` are always kept.
inline Suppression suppress(const MetricCurve& m, const std::vector<bool>& protect = {}) {
    const auto& c = m.base;
    const int n = c.vertex_count();
    auto val = c.valence(true);
    auto inc = c.incidence();
    std::vector<bool> removable(n, false);
    for (int v = 0; v < n; ++v) {
        removable[v] = c.vertices[v].genus == 0 && val[v] == 2 && inc[v].size() == 2 &&
                       !c.edges[edge_of(inc[v][0])].is_loop() && (protect.empty() || !protect[v]);
    }

    Suppression out;
    out.vertex_image.resize(n);
    out.edge_image.resize(c.edges.size());
    std::vector<int> new_index(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!removable[v]) {
            new_index[v] = out.curve.base.add_vertex(c.vertices[v].id, c.vertices[v].genus);
            out.vertex_image[v] = CurvePoint::at_vertex(new_index[v]);
        }
    }
    for (const auto& l : c.legs) out.curve.base.add_leg(l.id, new_index[l.vertex]);

    std::vector<bool> visited(c.edges.size(), false);
    // Walks a maximal chain starting at half-edge `h` leaving a kept vertex.
    auto walk = [&](int h) {
        std::vector<std::pair<int, bool>> chain;  // (edge, forward)
        std::vector<int> inner;
        int cur = h;
        while (true) {
            int e = edge_of(cur);
            chain.push_back({e, end_of(cur) == 0});
            visited[e] = true;
            int w = c.half_edge_vertex(opposite(cur));
            if (!removable[w] || new_index[w] >= 0) return std::make_pair(chain, inner);
            inner.push_back(w);
            cur = inc[w][0] == opposite(cur) ? inc[w][1] : inc[w][0];
        }
    };
    auto emit = [&](int from, int h) {
        auto [chain, inner] = walk(h);
        int last = chain.back().first;
        int to = c.edges[last].ends[chain.back().second ? 1 : 0];
        int target_to = new_index[to];
        std::vector<std::string> ids;
        for (auto [e, forward] : chain) ids.push_back(c.edges[e].id);
        std::string id = merged_edge_id(ids);
        int ne = out.curve.base.add_edge(id, new_index[from], target_to);
        Rational pos = 0;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            auto [e, forward] = chain[i];
            out.edge_image[e] = {ne, forward ? pos : pos + m.length[e], !forward};
            pos += m.length[e];
            if (i < inner.size()) out.vertex_image[inner[i]] = CurvePoint::interior(ne, pos);
        }
        out.curve.length.push_back(pos);
    };
    // Chains are emitted in order of their edges; each starts at the kept
    // vertex found by walking backwards from the edge's first end.
    for (int e = 0; e < c.edge_count(); ++e) {
        if (visited[e]) continue;
        int h = half_edge(e, 0);
        int v = c.half_edge_vertex(h);
        while (removable[v] && new_index[v] < 0) {
            int back = inc[v][0] == h ? inc[v][1] : inc[v][0];
            if (edge_of(back) == e) break;  // circle of removable vertices
            h = opposite(back);
            v = c.half_edge_vertex(h);
        }
        if (new_index[v] < 0) {
            h = half_edge(e, 0);
            v = c.half_edge_vertex(h);
            new_index[v] = out.curve.base.add_vertex(c.vertices[v].id, 0);
            out.vertex_image[v] = CurvePoint::at_vertex(new_index[v]);
        }
        emit(v, h);
    }
    return out;
}

/// Transports a point of the old model of a suppression into the new model.
inline CurvePoint transport(const Suppression& s, const CurvePoint& p) {
    if (p.is_vertex()) return s.vertex_image[p.vertex];
    const auto& img = s.edge_image[p.edge];
    Rational o = img.reversed ? img.start - p.offset : img.start + p.offset;
    return CurvePoint::interior(img.edge, o);
}

/// Scales every edge length by a positive rational factor.
inline MetricCurve scaled(const MetricCurve& m, const Rational& factor) {
    MetricCurve out = m;
    for (auto& l : out.length) l *= factor;
    return out;
}

}  // namespace tropcanon

#endif  // TROPCANON_CURVE_HPP
