#ifndef TROPCANON_REALIZE_HPP
#define TROPCANON_REALIZE_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropcanon/connectivity.hpp"
#include "tropcanon/divisor.hpp"
#include "tropcanon/level.hpp"
#include "tropcanon/solve.hpp"

namespace tropcanon {

enum class CheckMode { Normative, Strict };

inline const char* to_string(CheckMode m) { return m == CheckMode::Normative ? "normative" : "strict"; }

struct Verdict {
    bool realizable = true;
    std::vector<Violation> violations;
    // Keyed by "vertex:<id>" or "edge:<id>"; each value is a simple cycle as edge ids.
    std::map<std::string, std::vector<std::string>> witnesses;
};

/// True iff removing v splits its connected component of the kept subgraph.
inline bool disconnects(const CombinatorialCurve& c, int v, const VertexMask& keep) {
    VertexMask full = keep.empty() ? VertexMask(c.vertices.size(), true) : keep;
    int before = 0, after = 0;
    components(c, full, &before);
    full[v] = false;
    components(c, full, &after);
    return after > before;
}

/// Cycle conditions for every inconvenient vertex and every horizontal
/// edge, each inside the subgraph on levels at or above its own. Strict
/// mode additionally rejects inconvenient vertices that disconnect that subgraph.
inline Verdict check_level_graph(const EnhancedLevelGraph& g, CheckMode mode = CheckMode::Normative) {
    auto problems = validate(g);
    if (!problems.empty())
        throw Error(ErrorKind::InvalidEnhancement, problems.front().kind + " " + problems.front().location + ": " + problems.front().reason);
    Verdict out;
    const auto& c = g.base;
    auto ids = [&](const std::vector<int>& cycle) {
        std::vector<std::string> r;
        for (int e : cycle) r.push_back(c.edges[e].id);
        return r;
    };
    for (int v = 0; v < c.vertex_count(); ++v) {
        if (!is_inconvenient(g, v)) continue;
        auto keep = at_or_above(g, g.level[v]);
        auto cycle = cycle_through_vertex(c, v, keep);
        if (!cycle) {
            out.violations.push_back({"InconvenientVertex", c.vertices[v].id,
                                      "inconvenient vertex of type " + to_string(vertex_type(g, v)) +
                                          " lies on no simple cycle at or above its level"});
            continue;
        }
        if (mode == CheckMode::Strict && disconnects(c, v, keep)) {
            out.violations.push_back({"InconvenientVertex", c.vertices[v].id,
                                      "inconvenient vertex disconnects the subgraph at or above its level"});
            continue;
        }
        out.witnesses["vertex:" + c.vertices[v].id] = ids(*cycle);
    }
    for (int e = 0; e < c.edge_count(); ++e) {
        if (!g.is_horizontal(e)) continue;
        auto keep = at_or_above(g, g.level[c.edges[e].ends[0]]);
        auto cycle = cycle_through_edge(c, e, keep);
        if (!cycle) {
            out.violations.push_back({"HorizontalEdge", c.edges[e].id,
                                      "horizontal edge disconnects the subgraph at or above its level"});
            continue;
        }
        out.witnesses["edge:" + c.edges[e].id] = ids(*cycle);
    }
    out.realizable = out.violations.empty();
    return out;
}

enum class PairStatus { Ok, NotEquivalent, WrongType };

inline const char* to_string(PairStatus s) {
    switch (s) {
        case PairStatus::Ok: return "Ok";
        case PairStatus::NotEquivalent: return "NotEquivalent";
        case PairStatus::WrongType: return "WrongType";
    }
    return "?";
}

struct PairResult {
    PairStatus status = PairStatus::Ok;
    Verdict verdict;
    std::optional<RationalFunction> function;
    std::optional<Enhancement> enhancement;
};

namespace detail {

inline void require_canonical_degree(const MetricCurve& m, const Divisor& d) {
    validate(m);
    validate(m, d);
    if (!d.effective()) throw Error(ErrorKind::NonEffective, "divisor is not effective");
}

}  // namespace detail

/// Solves for f with K + div(f) = D, builds the enhanced level graph with
/// one k = 1 leg per unit of D, and applies the cycle conditions.
inline PairResult check_pair(const MetricCurve& m, const Divisor& d, CheckMode mode = CheckMode::Normative) {
    detail::require_canonical_degree(m, d);
    PairResult out;
    auto f = solve_function(m, d);
    if (!f) {
        out.status = PairStatus::NotEquivalent;
        out.verdict.realizable = false;
        return out;
    }
    out.enhancement = enhance(*f, LegGrouping::Split);
    out.verdict = check_level_graph(out.enhancement->graph, mode);
    out.function = std::move(f);
    return out;
}

/// As check_pair, with one leg per support point carrying its multiplicity;
/// D must have type mu.
inline PairResult check_stratum(const MetricCurve& m, const Divisor& d, const DivisorType& mu,
                                CheckMode mode = CheckMode::Normative) {
    detail::require_canonical_degree(m, d);
    PairResult out;
    if (!(type_of(d) == mu)) {
        out.status = PairStatus::WrongType;
        out.verdict.realizable = false;
        return out;
    }
    auto f = solve_function(m, d);
    if (!f) {
        out.status = PairStatus::NotEquivalent;
        out.verdict.realizable = false;
        return out;
    }
    out.enhancement = enhance(*f, LegGrouping::Stratum, mu);
    out.verdict = check_level_graph(out.enhancement->graph, mode);
    out.function = std::move(f);
    return out;
}

struct Witness {
    RationalFunction function;
    Divisor divisor;  // K + div(function)
    Verdict verdict;
};

/// A function f with K + div(f) effective whose enhanced level graph is
/// realizable. The 2-edge-connected pieces of the curve are kept flat; a
/// bridge into a piece that is a lone genus-0 vertex on bridges only drops
/// with slope -1, any other bridge gets a double point at its midpoint.
inline Witness construct_witness(const MetricCurve& m) {
    validate(m);
    const auto& c = m.base;
    if (stability(c, false) != Stability::Stable) throw Error(ErrorKind::NotStable, "witness construction needs a stable curve");
    if (genus(c) < 2) throw Error(ErrorKind::NotStable, "witness construction needs genus at least 2");
    const int n = c.vertex_count();
    auto dec = blocks(c);

    // 2-edge-connected components: connectivity after deleting bridges.
    std::vector<int> comp(n, -1);
    int count = 0;
    auto inc = c.incidence();
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> todo{s};
        comp[s] = count;
        while (!todo.empty()) {
            int v = todo.back();
            todo.pop_back();
            for (int h : inc[v]) {
                if (dec.is_bridge(edge_of(h))) continue;
                int w = c.half_edge_vertex(opposite(h));
                if (comp[w] < 0) {
                    comp[w] = count;
                    todo.push_back(w);
                }
            }
        }
        ++count;
    }
    std::vector<int> size(count, 0);
    for (int v = 0; v < n; ++v) ++size[comp[v]];
    std::vector<bool> bad(count, false);
    for (int v = 0; v < n; ++v) {
        if (size[comp[v]] != 1 || c.vertices[v].genus != 0) continue;
        bool only_bridges = true;
        for (int h : inc[v]) only_bridges = only_bridges && dec.is_bridge(edge_of(h));
        bad[comp[v]] = only_bridges;
    }
    int root = -1;
    for (int v = 0; v < n && root < 0; ++v)
        if (!bad[comp[v]]) root = comp[v];

    RationalFunction f = constant_function(m);
    std::vector<bool> placed(count, false);
    std::vector<Rational> level_of(count, 0);
    placed[root] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (int e : dec.bridges) {
            int a = c.edges[e].ends[0], b = c.edges[e].ends[1];
            int side = comp[a] == cur ? 0 : (comp[b] == cur ? 1 : -1);
            if (side < 0) continue;
            int child = comp[side == 0 ? b : a];
            if (placed[child]) continue;
            placed[child] = true;
            const Rational& len = m.length[e];
            Rational top = level_of[cur];
            if (bad[child]) {
                level_of[child] = top - len;
            } else {
                level_of[child] = top;
                f.breaks[e] = {{len / 2, top - len / 2}};
            }
            queue.push_back(child);
        }
    }
    for (int v = 0; v < n; ++v) f.vertex_value[v] = level_of[comp[v]];
    f.shift(-f.max_value());

    Witness out;
    out.function = f;
    out.divisor = canonical_divisor(m) + divisor_of(f);
    out.verdict = check_level_graph(enhance(f, LegGrouping::Split).graph);
    return out;
}

}  // namespace tropcanon

#endif  // TROPCANON_REALIZE_HPP
