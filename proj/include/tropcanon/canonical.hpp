#ifndef TROPCANON_CANONICAL_HPP
#define TROPCANON_CANONICAL_HPP

// Canonical labeling of small colored multigraphs with loops and legs by
// color refinement plus individualization. Every branch of the search tree
// is explored, so the leaves that attain the minimal encoding are in
// bijection with the vertex automorphisms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tropcanon/curve.hpp"

namespace tropcanon {

inline constexpr int default_canonical_vertex_bound = 16;

struct ColoredCurve {
    const CombinatorialCurve* curve = nullptr;
    std::vector<std::string> vertex_colors;     // optional, per vertex
    std::vector<std::string> half_edge_colors;  // optional, per half-edge (2e + end)
    std::vector<std::string> leg_colors;        // optional, per leg
};

struct CanonicalForm {
    std::string encoding;
    std::vector<int> order;           // canonical position -> vertex index
    std::uint64_t automorphisms = 1;  // vertex automorphisms times edge symmetries
};

namespace detail {

struct Prepared {
    int n = 0;
    std::vector<int> base;  // initial vertex color ids
    // For each vertex, (neighbor, descriptor id) per non-loop incident edge.
    std::vector<std::vector<std::pair<int, int>>> nbr;
    // Per unordered pair (i <= j): edges with their descriptor as seen from i.
    std::vector<std::string> base_label;
    std::vector<std::tuple<int, int, std::string>> edges;  // (u, w, "a|b" from u's side)
    std::vector<std::string> loops_label;                  // per vertex: sorted loop descriptors joined
};

inline std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

template <class T>
std::vector<int> rank_of(const std::vector<T>& keys) {
    std::vector<T> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return out;
}

inline Prepared prepare(const ColoredCurve& in) {
    const auto& c = *in.curve;
    Prepared p;
    p.n = c.vertex_count();
    auto hc = [&](int half) { return in.half_edge_colors.empty() ? std::string() : in.half_edge_colors[half]; };
    auto leg_lists = c.legs_at();
    std::vector<std::vector<std::string>> loops(p.n);
    std::map<std::string, int> descriptor_ids;
    std::vector<std::tuple<int, int, std::string>> oriented;
    for (int e = 0; e < c.edge_count(); ++e) {
        int a = c.edges[e].ends[0], b = c.edges[e].ends[1];
        std::string ca = hc(half_edge(e, 0)), cb = hc(half_edge(e, 1));
        if (a == b) {
            loops[a].push_back(std::min(ca, cb) + "|" + std::max(ca, cb));
            continue;
        }
        p.edges.emplace_back(a, b, ca + "|" + cb);
        oriented.emplace_back(a, b, ca + "|" + cb);
        oriented.emplace_back(b, a, cb + "|" + ca);
    }
    for (const auto& [u, w, d] : oriented) descriptor_ids.emplace(d, 0);
    int next = 0;
    for (auto& [d, id] : descriptor_ids) id = next++;
    p.nbr.resize(p.n);
    for (const auto& [u, w, d] : oriented) p.nbr[u].push_back({w, descriptor_ids[d]});
    p.base_label.resize(p.n);
    p.loops_label.resize(p.n);
    for (int v = 0; v < p.n; ++v) {
        std::vector<std::string> legs;
        for (int l : leg_lists[v]) legs.push_back(in.leg_colors.empty() ? std::string() : in.leg_colors[l]);
        std::sort(legs.begin(), legs.end());
        std::sort(loops[v].begin(), loops[v].end());
        p.loops_label[v] = join(loops[v], ',');
        p.base_label[v] = "h" + std::to_string(c.vertices[v].genus) + "/c" +
                          (in.vertex_colors.empty() ? std::string() : in.vertex_colors[v]) + "/L" +
                          std::to_string(legs.size()) + ":" + join(legs, ',') + "/O" + p.loops_label[v];
    }
    p.base = rank_of(p.base_label);
    return p;
}

// Refines `colors` to the coarsest equitable partition finer than it.
inline std::vector<int> refine(const Prepared& p, std::vector<int> colors) {
    while (true) {
        std::vector<std::pair<int, std::vector<std::pair<int, int>>>> keys(p.n);
        for (int v = 0; v < p.n; ++v) {
            std::vector<std::pair<int, int>> sig;
            for (auto [w, d] : p.nbr[v]) sig.push_back({colors[w], d});
            std::sort(sig.begin(), sig.end());
            keys[v] = {colors[v], std::move(sig)};
        }
        auto next = rank_of(keys);
        int before = *std::max_element(colors.begin(), colors.end());
        int after = *std::max_element(next.begin(), next.end());
        colors = std::move(next);
        if (after == before) return colors;
    }
}

inline std::string leaf_encoding(const Prepared& p, const std::vector<int>& position) {
    std::vector<int> order(p.n);
    for (int v = 0; v < p.n; ++v) order[position[v]] = v;
    std::string out = "V";
    for (int i = 0; i < p.n; ++i) out += "[" + p.base_label[order[i]] + "]";
    std::vector<std::tuple<int, int, std::string>> es;
    for (const auto& [u, w, d] : p.edges) {
        int a = position[u], b = position[w];
        if (a <= b) {
            es.emplace_back(a, b, d);
        } else {
            auto bar = d.find('|');
            es.emplace_back(b, a, d.substr(bar + 1) + "|" + d.substr(0, bar));
        }
    }
    std::sort(es.begin(), es.end());
    out += "E";
    for (const auto& [a, b, d] : es) out += "[" + std::to_string(a) + "-" + std::to_string(b) + ":" + d + "]";
    return out;
}

struct Search {
    const Prepared& p;
    std::string best;
    std::vector<int> best_position;
    std::uint64_t leaves_at_best = 0;

    void run(std::vector<int> colors) {
        colors = refine(p, std::move(colors));
        int cells = *std::max_element(colors.begin(), colors.end()) + 1;
        if (cells == p.n) {
            std::string enc = leaf_encoding(p, colors);
            if (best_position.empty() || enc < best) {
                best = std::move(enc);
                best_position = colors;
                leaves_at_best = 1;
            } else if (enc == best) {
                ++leaves_at_best;
            }
            return;
        }
        std::vector<int> size(cells, 0);
        for (int c : colors) ++size[c];
        int target = 0;
        while (size[target] == 1) ++target;
        for (int v = 0; v < p.n; ++v) {
            if (colors[v] != target) continue;
            // Individualize v: it keeps its color, the rest of its cell moves one up.
            std::vector<int> next(p.n);
            for (int w = 0; w < p.n; ++w) next[w] = 2 * colors[w] + ((colors[w] == target && w != v) ? 1 : 0);
            run(rank_of(next));
        }
    }
};

inline std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace detail

/// Canonical encoding: equal for two colored curves iff they are isomorphic
/// (genus, colors, legs by color and half-edge colors respected).
inline CanonicalForm canonical_form(const ColoredCurve& in, int max_vertices = default_canonical_vertex_bound) {
    const auto& c = *in.curve;
    if (c.vertex_count() > max_vertices)
        throw Error(ErrorKind::SizeLimit, "canonical form limited to " + std::to_string(max_vertices) + " vertices");
    CanonicalForm out;
    if (c.vertex_count() == 0) {
        out.encoding = "V";
        return out;
    }
    auto p = detail::prepare(in);
    detail::Search search{p, {}, {}, 0};
    search.run(p.base);
    out.encoding = search.best;
    out.order.resize(p.n);
    for (int v = 0; v < p.n; ++v) out.order[search.best_position[v]] = v;

    std::uint64_t aut = search.leaves_at_best;
    std::map<std::tuple<int, int, std::string>, int> parallel;
    for (const auto& [u, w, d] : p.edges) {
        if (u < w) ++parallel[{u, w, d}];
        else {
            auto bar = d.find('|');
            ++parallel[{w, u, d.substr(bar + 1) + "|" + d.substr(0, bar)}];
        }
    }
    for (const auto& [key, k] : parallel) aut *= detail::factorial(k);
    std::map<std::pair<int, std::string>, int> loop_groups;
    auto hc = [&](int half) { return in.half_edge_colors.empty() ? std::string() : in.half_edge_colors[half]; };
    for (int e = 0; e < c.edge_count(); ++e) {
        if (!c.edges[e].is_loop()) continue;
        std::string a = hc(half_edge(e, 0)), b = hc(half_edge(e, 1));
        if (a == b) aut *= 2;
        ++loop_groups[{c.edges[e].ends[0], std::min(a, b) + "|" + std::max(a, b)}];
    }
    for (const auto& [key, k] : loop_groups) aut *= detail::factorial(k);
    out.automorphisms = aut;
    return out;
}

/// Plain curve: genus weights and unlabeled legs only.
inline CanonicalForm canonical_form(const CombinatorialCurve& c, int max_vertices = default_canonical_vertex_bound) {
    return canonical_form(ColoredCurve{&c, {}, {}, {}}, max_vertices);
}

/// Curve with vertex colors and one color per edge (applied to both half-edges).
inline CanonicalForm canonical_form(const CombinatorialCurve& c, const std::vector<std::string>& vertex_colors,
                                    const std::vector<std::string>& edge_colors,
                                    int max_vertices = default_canonical_vertex_bound) {
    std::vector<std::string> halves;
    if (!edge_colors.empty()) {
        halves.resize(2 * c.edges.size());
        for (int e = 0; e < c.edge_count(); ++e) halves[half_edge(e, 0)] = halves[half_edge(e, 1)] = edge_colors[e];
    }
    return canonical_form(ColoredCurve{&c, vertex_colors, halves, {}}, max_vertices);
}

}  // namespace tropcanon

#endif  // TROPCANON_CANONICAL_HPP
