#ifndef TROPCANON_ENUMERATE_HPP
#define TROPCANON_ENUMERATE_HPP

// Enumeration of stable graphs, leg decorations of a stable graph, and the
// enhanced level structures on a decorated graph.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tropcanon/canonical.hpp"
#include "tropcanon/connectivity.hpp"
#include "tropcanon/curve.hpp"
#include "tropcanon/divisor.hpp"
#include "tropcanon/level.hpp"

namespace tropcanon {

inline constexpr int default_max_genus = 4;

namespace detail {

// Nonincreasing sequences of (genus, legs) pairs of length n with the given sums bounded.
inline void vertex_profiles(int n, int max_genus_sum, int legs, std::vector<std::pair<int, int>>& cur,
                            std::vector<std::vector<std::pair<int, int>>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        int l = 0;
        for (auto [h, x] : cur) l += x;
        if (l == legs) out.push_back(cur);
        return;
    }
    int used_h = 0, used_l = 0;
    for (auto [h, x] : cur) {
        used_h += h;
        used_l += x;
    }
    for (int h = max_genus_sum - used_h; h >= 0; --h) {
        for (int x = legs - used_l; x >= 0; --x) {
            std::pair<int, int> p{h, x};
            if (!cur.empty() && p > cur.back()) continue;
            cur.push_back(p);
            vertex_profiles(n, max_genus_sum, legs, cur, out);
            cur.pop_back();
        }
    }
}

}  // namespace detail

/// Isomorphism classes of connected stable curves of genus g with `legs`
/// unlabeled legs, sorted by (vertices, edges, encoding).
inline std::vector<CombinatorialCurve> enumerate_stable_graphs(int g, int legs, int max_genus = default_max_genus) {
    if (g > max_genus) throw Error(ErrorKind::SizeLimit, "genus " + std::to_string(g) + " exceeds the bound " + std::to_string(max_genus));
    if (g < 0 || legs < 0) throw Error(ErrorKind::InvalidArgument, "genus and leg count must be non-negative");
    if (2 * g - 2 + legs <= 0) return {};
    std::map<std::string, CombinatorialCurve> found;
    const int max_vertices = 2 * g - 2 + legs;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::vector<std::pair<int, int>>> profiles;
        std::vector<std::pair<int, int>> cur;
        detail::vertex_profiles(n, g, legs, cur, profiles);
        for (const auto& prof : profiles) {
            int hsum = 0;
            for (auto [h, x] : prof) hsum += h;
            const int edges = g - hsum + n - 1;
            if (edges < n - 1) continue;
            // Symmetric multiplicity matrix filled row by row (diagonal = loops).
            std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
            std::vector<int> degree(n, 0);
            std::function<void(int, int, int)> fill = [&](int i, int j, int left) {
                if (i == n) {
                    if (left != 0) return;
                    CombinatorialCurve c;
                    for (int v = 0; v < n; ++v) c.add_vertex("v" + std::to_string(v), prof[v].first);
                    int eid = 0;
                    for (int x = 0; x < n; ++x)
                        for (int y = x; y < n; ++y)
                            for (int t = 0; t < a[x][y]; ++t) c.add_edge("e" + std::to_string(eid++), x, y);
                    int lid = 0;
                    for (int v = 0; v < n; ++v)
                        for (int t = 0; t < prof[v].second; ++t) c.add_leg("l" + std::to_string(lid++), v);
                    int comps = 0;
                    components(c, {}, &comps);
                    if (comps != 1) return;
                    auto enc = canonical_form(c).encoding;
                    found.emplace(enc, std::move(c));
                    return;
                }
                if (j == n) {
                    // Row i complete: its degree is final.
                    if (2 * prof[i].first - 2 + degree[i] + prof[i].second <= 0) return;
                    fill(i + 1, i + 1, left);
                    return;
                }
                for (int k = 0; k <= left; ++k) {
                    a[i][j] = a[j][i] = k;
                    int add = i == j ? 2 * k : k;
                    degree[i] += add;
                    if (i != j) degree[j] += k;
                    fill(i, j + 1, left - k);
                    degree[i] -= add;
                    if (i != j) degree[j] -= k;
                }
                a[i][j] = a[j][i] = 0;
            };
            fill(0, 0, edges);
        }
    }
    std::vector<std::pair<std::tuple<int, int, std::string>, CombinatorialCurve>> sorted;
    for (auto& [enc, c] : found) sorted.push_back({{c.vertex_count(), c.edge_count(), enc}, std::move(c)});
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<CombinatorialCurve> out;
    for (auto& [key, c] : sorted) out.push_back(std::move(c));
    return out;
}

/// A stable curve subdivided at marked points, with legs and their k values.
struct DecoratedCurve {
    CombinatorialCurve curve;
    std::vector<int> leg_k;
};

/// Placements of a divisor of degree 2g - 2 on a stable legless curve, up to
/// isomorphism. With no type, every unit of the divisor becomes a k = 1
/// leg; with a type, each support point carries one leg with its multiplicity.
/// Edges carrying points are subdivided, pieces named "<edge>.<i>" and new
/// vertices "<edge>:<i>".
inline std::vector<DecoratedCurve> leg_decorations(const CombinatorialCurve& base, const std::optional<DivisorType>& mu = std::nullopt) {
    const int g = genus(base);
    const int degree = 2 * g - 2;
    if (mu && mu->sum() != degree) throw Error(ErrorKind::InvalidArgument, "type " + to_string(*mu) + " does not have degree 2g - 2");
    if (mu)
        for (int x : mu->entries)
            if (x <= 0) throw Error(ErrorKind::InvalidArgument, "type entries must be positive");
    const int n = base.vertex_count();
    const int ne = base.edge_count();

    // Each support point receives a "label": its multiplicity. Without a type
    // the labels are free positive integers summing to the degree.
    std::vector<int> pool = mu ? mu->entries : std::vector<int>{};
    std::map<std::string, DecoratedCurve> found;
    std::vector<int> at_vertex(n, 0);
    std::vector<std::vector<int>> on_edge(ne);

    auto emit = [&] {
        DecoratedCurve d;
        auto& c = d.curve;
        for (const auto& v : base.vertices) c.add_vertex(v.id, v.genus);
        auto add_legs = [&](int v, int mult) {
            if (mult == 0) return;
            if (mu) {
                c.add_leg(c.vertices[v].id + "/0", v);
                d.leg_k.push_back(mult);
            } else {
                for (int i = 0; i < mult; ++i) {
                    c.add_leg(c.vertices[v].id + "/" + std::to_string(i), v);
                    d.leg_k.push_back(1);
                }
            }
        };
        for (int e = 0; e < ne; ++e) {
            const auto& edge = base.edges[e];
            if (on_edge[e].empty()) {
                c.add_edge(edge.id, edge.ends[0], edge.ends[1]);
                continue;
            }
            int prev = edge.ends[0];
            for (std::size_t i = 0; i < on_edge[e].size(); ++i) {
                int w = c.add_vertex(edge.id + ":" + std::to_string(i + 1), 0);
                c.add_edge(edge.id + "." + std::to_string(i), prev, w);
                prev = w;
            }
            c.add_edge(edge.id + "." + std::to_string(on_edge[e].size()), prev, edge.ends[1]);
        }
        for (int v = 0; v < n; ++v) add_legs(v, at_vertex[v]);
        int next = n;
        for (int e = 0; e < ne; ++e)
            for (int mult : on_edge[e]) add_legs(next++, mult);
        std::vector<std::string> colors;
        for (int k : d.leg_k) colors.push_back(std::to_string(k));
        auto enc = canonical_form(ColoredCurve{&c, {}, {}, colors}).encoding;
        found.emplace(enc, std::move(d));
    };

    if (!mu) {
        // Vertex multiplicities then edge compositions, all summing to the degree.
        std::function<void(int, int)> edges_fill;
        std::function<void(int, int)> vertex_fill = [&](int v, int left) {
            if (v == n) {
                edges_fill(0, left);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                at_vertex[v] = x;
                vertex_fill(v + 1, left - x);
            }
            at_vertex[v] = 0;
        };
        edges_fill = [&](int e, int left) {
            if (e == ne) {
                if (left == 0) emit();
                return;
            }
            // Ordered compositions of some amount a <= left.
            std::function<void(int)> parts = [&](int remaining) {
                edges_fill(e + 1, remaining);
                for (int x = 1; x <= remaining; ++x) {
                    on_edge[e].push_back(x);
                    parts(remaining - x);
                    on_edge[e].pop_back();
                }
            };
            parts(left);
        };
        vertex_fill(0, degree);
        std::vector<DecoratedCurve> out;
        for (auto& [enc, d] : found) out.push_back(std::move(d));
        return out;
    }

    // Typed: place the entries of mu one by one at distinct support points.
    std::vector<int> entries = pool;
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (i == entries.size()) {
            emit();
            return;
        }
        int mult = entries[i];
        for (int v = 0; v < n; ++v) {
            if (at_vertex[v] != 0) continue;
            at_vertex[v] = mult;
            place(i + 1);
            at_vertex[v] = 0;
        }
        for (int e = 0; e < ne; ++e) {
            for (std::size_t pos = 0; pos <= on_edge[e].size(); ++pos) {
                on_edge[e].insert(on_edge[e].begin() + static_cast<long>(pos), mult);
                place(i + 1);
                on_edge[e].erase(on_edge[e].begin() + static_cast<long>(pos));
            }
        }
    };
    place(0);
    std::vector<DecoratedCurve> out;
    for (auto& [enc, d] : found) out.push_back(std::move(d));
    return out;
}

/// Every full order and enhancement on a curve with legs satisfying the
/// enhanced level graph axioms. Levels are built top-down: when a set of
/// vertices is placed, k on edges to vertices above is forced, horizontal
/// edges get -1, and the remainder of 2h - 2 is spread over the edges that
/// go further down.
inline std::vector<EnhancedLevelGraph> enumerate_enhancements(const CombinatorialCurve& c, const std::vector<int>& leg_k) {
    const int n = c.vertex_count();
    if (n > 20) throw Error(ErrorKind::SizeLimit, "too many vertices for enhancement enumeration");
    if (leg_k.size() != c.legs.size()) throw Error(ErrorKind::InvalidArgument, "one k value per leg required");
    std::vector<EnhancedLevelGraph> out;
    auto inc = c.incidence();
    std::vector<int> leg_sum(n, 0);
    for (std::size_t l = 0; l < c.legs.size(); ++l) leg_sum[c.legs[l].vertex] += leg_k[l];

    std::vector<int> level(n, 1);  // 1 = unplaced
    std::vector<int> k(2 * c.edges.size(), 0);

    std::function<void(unsigned, int)> place_level;

    // Distributes remainders over down half-edges for the vertices in `block`, one vertex at a time.
    std::function<void(const std::vector<int>&, std::size_t, unsigned, int)> distribute =
        [&](const std::vector<int>& block, std::size_t idx, unsigned placed, int depth) {
            if (idx == block.size()) {
                place_level(placed, depth - 1);
                return;
            }
            int v = block[idx];
            int remainder = 2 * c.vertices[v].genus - 2 - leg_sum[v];
            std::vector<int> down;
            for (int h : inc[v]) {
                int w = c.half_edge_vertex(opposite(h));
                if (level[w] == 1) {
                    down.push_back(h);
                } else if (level[w] == depth) {
                    remainder += 1;  // k = -1
                } else {
                    remainder -= k[h];
                }
            }
            if (remainder < 0) return;
            if (down.empty()) {
                if (remainder == 0) distribute(block, idx + 1, placed, depth);
                return;
            }
            // Non-negative compositions of `remainder` into down.size() parts.
            std::function<void(std::size_t, int)> parts = [&](std::size_t i, int left) {
                if (i + 1 == down.size()) {
                    k[down[i]] = left;
                    k[opposite(down[i])] = -2 - left;
                    distribute(block, idx + 1, placed, depth);
                    return;
                }
                for (int x = 0; x <= left; ++x) {
                    k[down[i]] = x;
                    k[opposite(down[i])] = -2 - x;
                    parts(i + 1, left - x);
                }
            };
            parts(0, remainder);
        };

    const unsigned all = n >= 32 ? ~0u : ((1u << n) - 1);
    place_level = [&](unsigned placed, int depth) {
        if (placed == all) {
            EnhancedLevelGraph g;
            g.base = c;
            g.k = k;
            for (int e = 0; e < c.edge_count(); ++e)
                if (level[c.edges[e].ends[0]] == level[c.edges[e].ends[1]]) g.k[half_edge(e, 0)] = g.k[half_edge(e, 1)] = -1;
            g.leg_k = leg_k;
            g.level = normalized_levels(level);
            out.push_back(std::move(g));
            return;
        }
        unsigned rest = all & ~placed;
        for (unsigned s = rest; s; s = (s - 1) & rest) {
            std::vector<int> block;
            for (int v = 0; v < n; ++v)
                if (s & (1u << v)) block.push_back(v);
            for (int v : block) level[v] = depth;
            distribute(block, 0, placed | s, depth);
            for (int v : block) level[v] = 1;
        }
    };
    place_level(0, 0);
    return out;
}

}  // namespace tropcanon

#endif  // TROPCANON_ENUMERATE_HPP
