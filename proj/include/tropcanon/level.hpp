#ifndef TROPCANON_LEVEL_HPP
#define TROPCANON_LEVEL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropcanon/connectivity.hpp"
#include "tropcanon/curve.hpp"
#include "tropcanon/divisor.hpp"

namespace tropcanon {

/// Level graph with an integer enhancement on every half-edge and leg.
struct EnhancedLevelGraph {
    CombinatorialCurve base;
    std::vector<int> level;  // per vertex, 0 at the top
    std::vector<int> k;      // per half-edge (2e + end)
    std::vector<int> leg_k;  // per leg

    bool is_horizontal(int e) const {
        return level[base.edges[e].ends[0]] == level[base.edges[e].ends[1]];
    }
    int level_count() const {
        std::set<int> ls(level.begin(), level.end());
        return static_cast<int>(ls.size());
    }
    /// Half-edge of a vertical edge at its upper end.
    int upper_half(int e) const {
        return level[base.edges[e].ends[0]] >= level[base.edges[e].ends[1]] ? half_edge(e, 0) : half_edge(e, 1);
    }
};

/// Maps levels onto 0, -1, ... preserving their order.
inline std::vector<int> normalized_levels(const std::vector<int>& raw) {
    std::set<int, std::greater<>> distinct(raw.begin(), raw.end());
    std::map<int, int> rank;
    int next = 0;
    for (int x : distinct) rank[x] = next--;
    std::vector<int> out;
    out.reserve(raw.size());
    for (int x : raw) out.push_back(rank[x]);
    return out;
}

struct Violation {
    std::string kind;
    std::string location;
    std::string reason;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// All failures of the enhancement axioms; empty when the graph is valid.
inline std::vector<Violation> validate(const EnhancedLevelGraph& g) {
    std::vector<Violation> out;
    const auto& c = g.base;
    try {
        validate(c);
    } catch (const Error& e) {
        out.push_back({"Curve", "", e.what()});
        return out;
    }
    if (g.level.size() != c.vertices.size() || g.k.size() != 2 * c.edges.size() || g.leg_k.size() != c.legs.size()) {
        out.push_back({"Shape", "", "level or enhancement data does not match the graph"});
        return out;
    }
    if (normalized_levels(g.level) != g.level)
        out.push_back({"Levels", "", "levels are not consecutive integers starting at 0"});
    for (int e = 0; e < c.edge_count(); ++e) {
        const auto& id = c.edges[e].id;
        int k0 = g.k[half_edge(e, 0)], k1 = g.k[half_edge(e, 1)];
        if (k0 + k1 != -2) out.push_back({"EdgeSum", id, "k values on the two half-edges must sum to -2"});
        bool flat = k0 == -1 && k1 == -1;
        if (g.is_horizontal(e) != flat)
            out.push_back({"Horizontal", id, "an edge is horizontal exactly when its endpoints share a level and both k are -1"});
        if (!g.is_horizontal(e) && g.k[g.upper_half(e)] < 0)
            out.push_back({"VerticalUpper", id, "the upper half-edge of a vertical edge must have k >= 0"});
    }
    std::vector<int> sum(c.vertices.size(), 0);
    for (int h = 0; h < 2 * c.edge_count(); ++h) sum[c.half_edge_vertex(h)] += g.k[h];
    for (int l = 0; l < static_cast<int>(c.legs.size()); ++l) sum[c.legs[l].vertex] += g.leg_k[l];
    for (int v = 0; v < c.vertex_count(); ++v)
        if (sum[v] != 2 * c.vertices[v].genus - 2)
            out.push_back({"VertexSum", c.vertices[v].id, "k values at the vertex must sum to 2h - 2"});
    return out;
}

inline bool is_valid(const EnhancedLevelGraph& g) { return validate(g).empty(); }

/// All k values at v (half-edges and legs).
inline DivisorType vertex_type(const EnhancedLevelGraph& g, int v) {
    std::vector<int> entries;
    const auto& c = g.base;
    for (int h = 0; h < 2 * c.edge_count(); ++h)
        if (c.half_edge_vertex(h) == v) entries.push_back(g.k[h]);
    for (int l = 0; l < static_cast<int>(c.legs.size()); ++l)
        if (c.legs[l].vertex == v) entries.push_back(g.leg_k[l]);
    return DivisorType(std::move(entries));
}

/// Genus-0 type with no entry -1 and an entry above (pole orders) - p - 1.
inline bool is_inconvenient_type(int genus_weight, const DivisorType& t) {
    if (genus_weight != 0 || t.minus_one() != 0) return false;
    int poles = 0;
    for (int x : t.entries)
        if (x < 0) poles += -x;
    int threshold = poles - t.negative() - 1;
    return std::any_of(t.entries.begin(), t.entries.end(), [&](int x) { return x > threshold; });
}

inline bool is_inconvenient(const EnhancedLevelGraph& g, int v) {
    return is_inconvenient_type(g.base.vertices[v].genus, vertex_type(g, v));
}

/// Mask of vertices at level >= lvl.
inline VertexMask at_or_above(const EnhancedLevelGraph& g, int lvl) {
    VertexMask keep(g.level.size());
    for (std::size_t v = 0; v < g.level.size(); ++v) keep[v] = g.level[v] >= lvl;
    return keep;
}

/// Removes vertices and edges flagged for deletion, remapping everything else.
inline EnhancedLevelGraph without(const EnhancedLevelGraph& g, const std::vector<bool>& drop_vertex,
                                  const std::vector<bool>& drop_edge) {
    EnhancedLevelGraph out;
    const auto& c = g.base;
    std::vector<int> index(c.vertices.size(), -1);
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (drop_vertex[v]) continue;
        index[v] = out.base.add_vertex(c.vertices[v].id, c.vertices[v].genus);
        out.level.push_back(g.level[v]);
    }
    for (int e = 0; e < c.edge_count(); ++e) {
        if (drop_edge[e]) continue;
        out.base.add_edge(c.edges[e].id, index[c.edges[e].ends[0]], index[c.edges[e].ends[1]]);
        out.k.push_back(g.k[half_edge(e, 0)]);
        out.k.push_back(g.k[half_edge(e, 1)]);
    }
    for (int l = 0; l < static_cast<int>(c.legs.size()); ++l) {
        out.base.add_leg(c.legs[l].id, index[c.legs[l].vertex]);
        out.leg_k.push_back(g.leg_k[l]);
    }
    out.level = normalized_levels(out.level);
    return out;
}

/// Repeatedly contracts the edge at a genus-0 vertex whose only other
/// incident half-edges are n >= 1 legs, moving the legs to the other end.
inline EnhancedLevelGraph contract_marked_trees(EnhancedLevelGraph g) {
    while (true) {
        const auto& c = g.base;
        auto val = c.valence(false);
        auto legs = c.legs_at();
        auto inc = c.incidence();
        int victim = -1;
        for (int v = 0; v < c.vertex_count() && victim < 0; ++v) {
            if (c.vertices[v].genus == 0 && val[v] == 1 && !legs[v].empty() && c.vertex_count() > 1) victim = v;
        }
        if (victim < 0) return g;
        int h = inc[victim][0];
        int target = c.half_edge_vertex(opposite(h));
        for (int l : legs[victim]) g.base.legs[l].vertex = target;
        std::vector<bool> drop_vertex(c.vertices.size(), false), drop_edge(c.edges.size(), false);
        drop_vertex[victim] = true;
        drop_edge[edge_of(h)] = true;
        g = without(g, drop_vertex, drop_edge);
    }
}

/// (#levels - 1) + #horizontal edges, computed after contracting marked trees.
inline int cone_dimension(const EnhancedLevelGraph& g) {
    auto g0 = contract_marked_trees(g);
    int horizontal = 0;
    for (int e = 0; e < g0.base.edge_count(); ++e) horizontal += g0.is_horizontal(e) ? 1 : 0;
    return g0.level_count() - 1 + horizontal;
}

/// The profile of a maximal-dimensional cone, checked on the contracted graph.
inline bool is_maximal_profile(const EnhancedLevelGraph& input) {
    auto g = contract_marked_trees(input);
    const auto& c = g.base;
    const int n = c.vertex_count();
    auto val = c.valence(true);
    auto legs = c.legs_at();
    std::vector<int> down(n, 0);
    for (int v = 0; v < n; ++v) {
        if (c.vertices[v].genus != 0) return false;
        if (val[v] < 3) return false;
        down[v] = static_cast<int>(legs[v].size());
    }
    for (const auto& e : c.edges) {
        int a = e.ends[0], b = e.ends[1];
        if (g.level[a] > g.level[b]) ++down[a];
        if (g.level[b] > g.level[a]) ++down[b];
    }
    for (int v = 0; v < n; ++v)
        if (down[v] != 1 && down[v] != 2) return false;

    const int levels = g.level_count();
    for (int lvl = 0; lvl > -levels; --lvl) {
        auto keep = at_or_above(g, lvl);
        auto dec = blocks(c, keep);
        std::vector<int> here;
        for (int v = 0; v < n; ++v)
            if (g.level[v] == lvl) here.push_back(v);
        if (here.size() == 1 && down[here[0]] == 2) {
            // (iii.1): every edge to a higher level disconnects. A horizontal
            // edge at this vertex never does, so it rules the level out too.
            int v = here[0];
            bool ok = true;
            for (int e = 0; e < c.edge_count(); ++e) {
                const auto& ends = c.edges[e].ends;
                if (ends[0] != v && ends[1] != v) continue;
                int other = ends[0] == v ? ends[1] : ends[0];
                if (g.level[other] >= lvl && !dec.is_bridge(e)) ok = false;
            }
            if (ok) continue;
            return false;
        }
        // (iii.2)
        std::vector<int> cycle_edges;
        for (int v : here) {
            if (down[v] != 1) return false;
            int degree = 0, bridges = 0;
            for (int e = 0; e < c.edge_count(); ++e) {
                if (!edge_kept(c, keep, e)) continue;
                const auto& ends = c.edges[e].ends;
                if (ends[0] != v && ends[1] != v) continue;
                degree += ends[0] == ends[1] ? 2 : 1;
                if (dec.is_bridge(e)) ++bridges;
            }
            if (bridges != degree - 2) return false;
        }
        for (int e = 0; e < c.edge_count(); ++e) {
            if (!edge_kept(c, keep, e) || dec.is_bridge(e)) continue;
            const auto& ends = c.edges[e].ends;
            if (g.level[ends[0]] == lvl || g.level[ends[1]] == lvl) cycle_edges.push_back(e);
        }
        // Nodes: level vertices and the components of the part strictly above.
        VertexMask above = at_or_above(g, lvl + 1);
        int comp_count = 0;
        auto comp = components(c, above, &comp_count);
        auto node = [&](int v) { return g.level[v] == lvl ? v : n + comp[v]; };
        std::map<int, std::vector<int>> incident;
        for (int e : cycle_edges) {
            int a = node(c.edges[e].ends[0]), b = node(c.edges[e].ends[1]);
            incident[a].push_back(e);
            incident[b].push_back(e);
        }
        if (cycle_edges.empty()) return false;
        for (const auto& [x, es] : incident)
            if (es.size() != 2) return false;
        // Connected: walk along the cycle.
        std::set<int> seen;
        int cur = incident.begin()->first;
        int prev_edge = -1;
        while (true) {
            const auto& es = incident[cur];
            int e = es[0] != prev_edge ? es[0] : es[1];
            if (es[0] == es[1]) e = es[0];
            if (!seen.insert(e).second) break;
            int a = node(c.edges[e].ends[0]), b = node(c.edges[e].ends[1]);
            cur = a == cur ? b : a;
            prev_edge = e;
        }
        if (seen.size() != cycle_edges.size()) return false;
    }
    return true;
}

enum class LegGrouping { Split, Stratum };

/// An enhanced level graph together with the metric data it was built from.
struct Enhancement {
    EnhancedLevelGraph graph;
    std::vector<Rational> length;       // per edge of graph
    std::vector<Rational> value;        // f at each vertex of graph
    std::vector<CurvePoint> position;   // each vertex of graph as a point of the input curve
};

/// Builds the enhanced level graph of (curve, f): vertices are the vertices
/// of the minimal model together with every point where f bends, levels
/// follow f, k = -s - 1 on each half-edge with s the outgoing slope. Legs
/// are D = K + div(f): one k = 1 leg per unit of D (Split), or one leg per
/// support point carrying its multiplicity (Stratum, checked against mu).
inline Enhancement enhance(const RationalFunction& f, LegGrouping grouping, const std::optional<DivisorType>& mu = std::nullopt) {
    validate(f);
    const auto& m = f.curve;
    if (!m.base.legs.empty()) throw Error(ErrorKind::InvalidArgument, "input curve must not carry legs");
    Divisor d = canonical_divisor(m) + divisor_of(f);
    if (!d.effective()) throw Error(ErrorKind::NonEffective, "K + div(f) is not effective");
    if (grouping == LegGrouping::Stratum) {
        if (!mu) throw Error(ErrorKind::InvalidArgument, "stratum grouping needs a type");
        if (!(type_of(d) == *mu))
            throw Error(ErrorKind::WrongType, "divisor has type " + to_string(type_of(d)) + ", expected " + to_string(*mu));
    }

    auto fm = model_of(f);
    const auto& refined = fm.subdivision.curve;
    const int rn = refined.base.vertex_count();
    std::vector<CurvePoint> where(rn);
    for (int v = 0; v < m.base.vertex_count(); ++v) where[v] = CurvePoint::at_vertex(v);
    for (const auto& [p, v] : fm.subdivision.new_vertex) where[v] = p;

    auto val = refined.base.valence(false);
    std::vector<bool> essential(rn, false);
    for (int v = 0; v < rn; ++v) {
        essential[v] = refined.base.vertices[v].genus > 0 || val[v] != 2 || d.at(where[v]) != 0;
    }
    if (std::none_of(essential.begin(), essential.end(), [](bool b) { return b; })) essential[0] = true;
    auto sup = suppress(refined, essential);
    const auto& curve = sup.curve;

    Enhancement out;
    const int n = curve.base.vertex_count();
    out.value.resize(n);
    out.position.resize(n);
    for (int v = 0; v < rn; ++v) {
        if (!sup.vertex_image[v].is_vertex()) continue;
        int w = sup.vertex_image[v].vertex;
        out.value[w] = fm.values[v];
        out.position[w] = where[v];
    }
    auto& g = out.graph;
    for (int v = 0; v < n; ++v) g.base.add_vertex(curve.base.vertices[v].id, curve.base.vertices[v].genus);
    std::vector<Rational> raw = out.value;
    std::vector<Rational> distinct = raw;
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < n; ++v)
        g.level.push_back(-static_cast<int>(std::find(distinct.begin(), distinct.end(), raw[v]) - distinct.begin()));
    for (int e = 0; e < curve.base.edge_count(); ++e) {
        int a = curve.base.edges[e].ends[0], b = curve.base.edges[e].ends[1];
        g.base.add_edge(curve.base.edges[e].id, a, b);
        Rational s = (out.value[b] - out.value[a]) / curve.length[e];
        if (!is_integer(s)) throw Error(ErrorKind::InvalidArgument, "non-integral slope");
        int si = static_cast<int>(to_int(s));
        g.k.push_back(-si - 1);
        g.k.push_back(si - 1);
        out.length.push_back(curve.length[e]);
    }
    for (int v = 0; v < n; ++v) {
        long mult = d.at(out.position[v]);
        const std::string& id = g.base.vertices[v].id;
        if (mult <= 0) continue;
        if (grouping == LegGrouping::Split) {
            for (long i = 0; i < mult; ++i) {
                g.base.add_leg(id + "/" + std::to_string(i), v);
                g.leg_k.push_back(1);
            }
        } else {
            g.base.add_leg(id + "/0", v);
            g.leg_k.push_back(static_cast<int>(mult));
        }
    }
    return out;
}

}  // namespace tropcanon

#endif  // TROPCANON_LEVEL_HPP
