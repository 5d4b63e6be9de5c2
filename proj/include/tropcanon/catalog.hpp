#ifndef TROPCANON_CATALOG_HPP
#define TROPCANON_CATALOG_HPP

// Catalog of realizable enhanced level graphs of a genus, and the passage
// between cones and metric curves: sample realizations, embeddings into a
// given curve, and the cells of the realizable locus over a fixed curve.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropcanon/canonical.hpp"
#include "tropcanon/enumerate.hpp"
#include "tropcanon/level.hpp"
#include "tropcanon/linear.hpp"
#include "tropcanon/realize.hpp"

namespace tropcanon {

/// Encoding of an enhanced level graph up to isomorphism preserving levels and k.
inline CanonicalForm level_graph_form(const EnhancedLevelGraph& g) {
    ColoredCurve cc{&g.base, {}, {}, {}};
    for (int l : g.level) cc.vertex_colors.push_back(std::to_string(l));
    for (int k : g.k) cc.half_edge_colors.push_back(std::to_string(k));
    for (int k : g.leg_k) cc.leg_colors.push_back(std::to_string(k));
    return canonical_form(cc);
}

/// The curve with legs dropped and unmarked 2-valent genus-0 vertices suppressed, all lengths 1.
inline Suppression stabilization(const CombinatorialCurve& c) {
    MetricCurve m;
    m.base = c;
    m.base.legs.clear();
    m.length.assign(c.edges.size(), Rational(1));
    return suppress(m);
}

struct Cone {
    EnhancedLevelGraph graph;  // representative, marked trees contracted
    std::string encoding;
    std::string graph_encoding;  // encoding of the underlying stable curve
    int dimension = 0;
    bool maximal = false;
    std::uint64_t automorphisms = 1;
};

inline Cone make_cone(const EnhancedLevelGraph& input) {
    Cone out;
    out.graph = contract_marked_trees(input);
    auto form = level_graph_form(out.graph);
    out.encoding = form.encoding;
    out.automorphisms = form.automorphisms;
    out.graph_encoding = canonical_form(stabilization(out.graph.base).curve.base).encoding;
    out.dimension = cone_dimension(out.graph);
    out.maximal = is_maximal_profile(out.graph);
    return out;
}

struct CatalogOptions {
    CheckMode mode = CheckMode::Normative;
    std::optional<DivisorType> mu;            // stratum; principal when empty
    std::optional<std::string> graph_filter;  // encoding of a stable curve
    int max_genus = default_max_genus;
    bool maximal_only = false;
};

struct Catalog {
    int genus = 0;
    CatalogOptions options;
    std::vector<Cone> cones;  // sorted by encoding
};

/// Every realizable enhanced level graph of genus g up to isomorphism: legs
/// are placed on each stable curve in all ways, every enhancement of the
/// decorated curve is checked, survivors are deduplicated.
inline Catalog build_catalog(int g, const CatalogOptions& options = {}) {
    if (g < 2) throw Error(ErrorKind::InvalidArgument, "catalogs need genus at least 2");
    Catalog out;
    out.genus = g;
    out.options = options;
    std::map<std::string, Cone> found;
    for (const auto& base : enumerate_stable_graphs(g, 0, options.max_genus)) {
        if (options.graph_filter && canonical_form(base).encoding != *options.graph_filter) continue;
        for (const auto& dec : leg_decorations(base, options.mu)) {
            for (const auto& eg : enumerate_enhancements(dec.curve, dec.leg_k)) {
                if (!check_level_graph(eg, options.mode).realizable) continue;
                auto form = level_graph_form(eg);
                if (found.count(form.encoding)) continue;
                Cone cone = make_cone(eg);
                if (options.maximal_only && !cone.maximal) continue;
                found.emplace(form.encoding, std::move(cone));
            }
        }
    }
    for (auto& [enc, cone] : found) out.cones.push_back(std::move(cone));
    return out;
}

/// Metric curve and function carried by a point of a cone.
struct ConeRealization {
    MetricCurve curve;
    RationalFunction function;
};

/// Level values (top first, strictly decreasing) and lengths of the
/// horizontal edges in edge order give a metric curve: a vertical edge
/// between values a > b with upper enhancement k has length (a - b) / (k + 1).
inline ConeRealization cone_to_metric(const EnhancedLevelGraph& g, const std::vector<Rational>& values,
                                      const std::vector<Rational>& horizontal_lengths) {
    if (static_cast<int>(values.size()) != g.level_count())
        throw Error(ErrorKind::InvalidDepths, "expected " + std::to_string(g.level_count()) + " level values");
    if (values.front() != 0) throw Error(ErrorKind::InvalidDepths, "the top level value must be 0");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] < values[i - 1])) throw Error(ErrorKind::InvalidDepths, "level values must strictly decrease");
    const auto& c = g.base;
    int horizontal = 0;
    for (int e = 0; e < c.edge_count(); ++e) horizontal += g.is_horizontal(e) ? 1 : 0;
    if (static_cast<int>(horizontal_lengths.size()) != horizontal)
        throw Error(ErrorKind::InvalidDepths, "expected " + std::to_string(horizontal) + " horizontal lengths");
    for (const auto& l : horizontal_lengths)
        if (l <= 0) throw Error(ErrorKind::InvalidDepths, "horizontal lengths must be positive");
    auto levels = normalized_levels(g.level);
    ConeRealization out;
    out.curve.base = c;
    out.curve.base.legs.clear();
    std::size_t next = 0;
    for (int e = 0; e < c.edge_count(); ++e) {
        if (g.is_horizontal(e)) {
            out.curve.length.push_back(horizontal_lengths[next++]);
            continue;
        }
        int up = g.upper_half(e);
        const Rational& a = values[-levels[c.half_edge_vertex(up)]];
        const Rational& b = values[-levels[c.half_edge_vertex(opposite(up))]];
        out.curve.length.push_back((a - b) / (g.k[up] + 1));
    }
    out.function = constant_function(out.curve);
    for (int v = 0; v < c.vertex_count(); ++v) out.function.vertex_value[v] = values[-levels[v]];
    return out;
}

/// Identification of the stabilized cone graph with the minimal model of a
/// curve: vertices, and per stabilized edge the target edge and whether it
/// is traversed against the target orientation.
struct Embedding {
    std::vector<int> vertex;
    std::vector<int> edge;
    std::vector<bool> reversed;
};

/// Every embedding of `source` onto `target` (same genus weights and edge
/// multiplicities). With `pinned`, vertices must keep their ids. Loops are
/// taken in both orientations.
inline std::vector<Embedding> embeddings(const CombinatorialCurve& source, const CombinatorialCurve& target, bool pinned = false) {
    std::vector<Embedding> out;
    const int n = source.vertex_count();
    if (n != target.vertex_count() || source.edge_count() != target.edge_count()) return out;
    auto bucket = [](const CombinatorialCurve& c) {
        std::map<std::pair<int, int>, std::vector<int>> b;
        for (int e = 0; e < c.edge_count(); ++e) {
            auto [a, x] = c.edges[e].ends;
            b[{std::min(a, x), std::max(a, x)}].push_back(e);
        }
        return b;
    };
    auto src = bucket(source), dst = bucket(target);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            ok = source.vertices[v].genus == target.vertices[perm[v]].genus;
            if (ok && pinned) ok = source.vertices[v].id == target.vertices[perm[v]].id;
        }
        if (!ok) continue;
        for (const auto& [key, es] : src) {
            int a = perm[key.first], b = perm[key.second];
            auto it = dst.find({std::min(a, b), std::max(a, b)});
            if (it == dst.end() || it->second.size() != es.size()) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // Match parallel classes in every order, loops in both orientations.
        std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
        for (const auto& [key, es] : src) {
            int a = perm[key.first], b = perm[key.second];
            classes.push_back({es, dst.at({std::min(a, b), std::max(a, b)})});
        }
        Embedding emb;
        emb.vertex = perm;
        emb.edge.assign(source.edges.size(), -1);
        emb.reversed.assign(source.edges.size(), false);
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (i == classes.size()) {
                out.push_back(emb);
                return;
            }
            const auto& [es, ts] = classes[i];
            std::vector<int> order = ts;
            std::sort(order.begin(), order.end());
            do {
                std::function<void(std::size_t)> orient = [&](std::size_t j) {
                    if (j == es.size()) {
                        go(i + 1);
                        return;
                    }
                    int e = es[j], t = order[j];
                    emb.edge[e] = t;
                    if (source.edges[e].is_loop()) {
                        for (bool r : {false, true}) {
                            emb.reversed[e] = r;
                            orient(j + 1);
                        }
                    } else {
                        emb.reversed[e] = perm[source.edges[e].ends[0]] != target.edges[t].ends[0];
                        orient(j + 1);
                    }
                };
                orient(0);
            } while (std::next_permutation(order.begin(), order.end()));
        };
        go(0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace detail {

/// Cone edges grouped into chains of the stabilization, ordered along the
/// chain's own orientation.
struct Chains {
    Suppression stab;
    std::vector<std::vector<int>> edges;  // stabilized edge -> cone edges in order
};

inline Chains chains_of(const EnhancedLevelGraph& g) {
    Chains out;
    out.stab = stabilization(g.base);
    out.edges.resize(out.stab.curve.base.edges.size());
    std::vector<std::pair<Rational, int>> order;
    for (int e = 0; e < g.base.edge_count(); ++e) order.push_back({out.stab.edge_image[e].start, e});
    std::sort(order.begin(), order.end());
    for (const auto& [start, e] : order) out.edges[out.stab.edge_image[e].edge].push_back(e);
    return out;
}

/// Variables: values of levels -1, -2, ... (top fixed at 0), then horizontal lengths.
struct ConeSystem {
    int levels = 0;
    std::vector<int> horizontal_index;  // per cone edge, -1 when vertical
    int horizontal = 0;
    std::size_t variables() const { return static_cast<std::size_t>(levels - 1 + horizontal); }
};

inline ConeSystem cone_system(const EnhancedLevelGraph& g) {
    ConeSystem s;
    s.levels = g.level_count();
    s.horizontal_index.assign(g.base.edges.size(), -1);
    for (int e = 0; e < g.base.edge_count(); ++e)
        if (g.is_horizontal(e)) s.horizontal_index[e] = s.horizontal++;
    return s;
}

/// Length of a cone edge as a linear form in the cone variables.
inline linear::Row edge_length_form(const EnhancedLevelGraph& g, const std::vector<int>& levels, const ConeSystem& s, int e) {
    linear::Row r(s.variables());
    if (s.horizontal_index[e] >= 0) {
        r[s.levels - 1 + s.horizontal_index[e]] = 1;
        return r;
    }
    int up = g.upper_half(e);
    int a = -levels[g.base.half_edge_vertex(up)];
    int b = -levels[g.base.half_edge_vertex(opposite(up))];
    Rational w = Rational(1) / (g.k[up] + 1);
    if (a > 0) r[a - 1] += w;
    if (b > 0) r[b - 1] -= w;
    return r;
}

inline linear::System base_system(const ConeSystem& s) {
    linear::System sys(s.variables());
    for (int i = 1; i < s.levels; ++i) {
        auto row = sys.unit(i - 1);
        if (i > 1) row[i - 2] = -1;
        sys.less(row, 0);  // value(i) < value(i-1)
    }
    for (int j = 0; j < s.horizontal; ++j) sys.greater(sys.unit(s.levels - 1 + j), 0);
    return sys;
}

}  // namespace detail

struct Feasible {
    bool feasible = false;
    std::optional<Embedding> embedding;
    std::vector<Rational> values;              // level values, top first
    std::vector<Rational> horizontal_lengths;  // in edge order
    std::size_t dimension = 0;                 // of the solution set for that embedding
};

namespace detail {

inline linear::System embedding_system(const EnhancedLevelGraph& g, const Chains& ch, const ConeSystem& s,
                                       const MetricCurve& target, const Embedding& emb) {
    auto levels = normalized_levels(g.level);
    auto sys = base_system(s);
    for (std::size_t se = 0; se < ch.edges.size(); ++se) {
        linear::Row total(s.variables());
        for (int e : ch.edges[se]) {
            auto r = edge_length_form(g, levels, s, e);
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += r[i];
        }
        sys.equal(total, target.length[emb.edge[se]]);
    }
    return sys;
}

inline void fill_sample(Feasible& out, const ConeSystem& s, const std::vector<Rational>& x) {
    out.values.assign(1, Rational(0));
    for (int i = 1; i < s.levels; ++i) out.values.push_back(x[i - 1]);
    out.horizontal_lengths.assign(x.begin() + (s.levels - 1), x.end());
}

}  // namespace detail

/// Whether some point of the cone realizes a curve isometric to `m` (or,
/// with `pinned`, to `m` with vertex ids kept). Throws WrongGraph when the
/// cone's stable curve is not that of m.
inline Feasible feasible_for_lengths(const EnhancedLevelGraph& g, const MetricCurve& m, bool pinned = false) {
    validate(m);
    auto target = suppress(m).curve;
    auto ch = detail::chains_of(g);
    const auto& source = ch.stab.curve.base;
    if (canonical_form(source).encoding != canonical_form(target.base).encoding)
        throw Error(ErrorKind::WrongGraph, "cone lives over a different stable curve");
    auto s = detail::cone_system(g);
    Feasible out;
    for (const auto& emb : embeddings(source, target.base, pinned)) {
        auto sol = linear::solve(detail::embedding_system(g, ch, s, target, emb));
        if (!sol.feasible) continue;
        out.feasible = true;
        out.embedding = emb;
        out.dimension = sol.dimension;
        detail::fill_sample(out, s, sol.sample);
        return out;
    }
    return out;
}

inline Feasible feasible_for_lengths(const Cone& cone, const MetricCurve& m, bool pinned = false) {
    return feasible_for_lengths(cone.graph, m, pinned);
}

/// A relatively open cell of realizable divisors on a fixed curve.
struct FiberCell {
    std::string cone_encoding;
    EnhancedLevelGraph graph;
    Embedding embedding;
    std::string key;  // identifies the cell among all cells over the curve
    std::size_t dimension = 0;
    Divisor sample;  // on the input curve
};

struct Fiber {
    MetricCurve curve;
    std::vector<FiberCell> cells;  // sorted by (dimension, key)
};

namespace detail {

/// Point of the original curve lying at q of its suppressed model.
inline CurvePoint lift(const MetricCurve& m, const Suppression& s, const CurvePoint& q) {
    if (q.is_vertex()) {
        for (int v = 0; v < m.base.vertex_count(); ++v)
            if (s.vertex_image[v] == q) return CurvePoint::at_vertex(v);
    }
    for (int e = 0; e < m.base.edge_count(); ++e) {
        const auto& img = s.edge_image[e];
        if (q.is_vertex() || img.edge != q.edge) continue;
        Rational local = img.reversed ? img.start - q.offset : q.offset - img.start;
        if (local < 0 || local > m.length[e]) continue;
        if (local == 0) return CurvePoint::at_vertex(m.base.edges[e].ends[0]);
        if (local == m.length[e]) return CurvePoint::at_vertex(m.base.edges[e].ends[1]);
        return CurvePoint::interior(e, local);
    }
    throw Error(ErrorKind::InvalidArgument, "point does not lie on the curve");
}

}  // namespace detail

/// Cells of realizable divisors on m (principal, or of type mu), one per
/// cone and embedding up to symmetry of the cone.
inline Fiber fiber_over_metric(const MetricCurve& m, CheckMode mode = CheckMode::Normative,
                               const std::optional<DivisorType>& mu = std::nullopt) {
    validate(m);
    auto ms = suppress(m);
    const auto& target = ms.curve;
    if (stability(target.base, false) != Stability::Stable) throw Error(ErrorKind::NotStable, "fiber needs a stable curve");
    CatalogOptions opt;
    opt.mode = mode;
    opt.mu = mu;
    opt.graph_filter = canonical_form(target.base).encoding;
    auto catalog = build_catalog(genus(m.base), opt);

    Fiber out;
    out.curve = m;
    std::map<std::string, FiberCell> found;
    for (const auto& cone : catalog.cones) {
        const auto& g = cone.graph;
        auto ch = detail::chains_of(g);
        auto s = detail::cone_system(g);
        auto levels = normalized_levels(g.level);
        for (const auto& emb : embeddings(ch.stab.curve.base, target.base)) {
            auto sol = linear::solve(detail::embedding_system(g, ch, s, target, emb));
            if (!sol.feasible) continue;
            // Each cone vertex labeled by where it lands on the target.
            std::vector<std::string> where(g.base.vertices.size());
            std::vector<CurvePoint> position(g.base.vertices.size());
            for (int v = 0; v < g.base.vertex_count(); ++v) {
                const auto& img = ch.stab.vertex_image[v];
                if (img.is_vertex()) {
                    where[v] = "v" + std::to_string(emb.vertex[img.vertex]);
                    position[v] = CurvePoint::at_vertex(emb.vertex[img.vertex]);
                }
            }
            Feasible f;
            detail::fill_sample(f, s, sol.sample);
            for (std::size_t se = 0; se < ch.edges.size(); ++se) {
                const auto& chain = ch.edges[se];
                int t = emb.edge[se];
                // Walk the chain in target orientation.
                std::vector<int> walk = chain;
                if (emb.reversed[se]) std::reverse(walk.begin(), walk.end());
                int at = emb.vertex[ch.stab.curve.base.edges[se].ends[emb.reversed[se] ? 1 : 0]];
                int cur = -1;
                for (int v = 0; v < g.base.vertex_count(); ++v)
                    if (ch.stab.vertex_image[v].is_vertex() && emb.vertex[ch.stab.vertex_image[v].vertex] == at &&
                        (g.base.edges[walk.front()].ends[0] == v || g.base.edges[walk.front()].ends[1] == v))
                        cur = v;
                Rational offset = 0;
                for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
                    int e = walk[i];
                    auto r = detail::edge_length_form(g, levels, s, e);
                    Rational len = 0;
                    for (std::size_t j = 0; j < r.size(); ++j) len += r[j] * sol.sample[j];
                    offset += len;
                    const auto& ends = g.base.edges[e].ends;
                    cur = ends[0] == cur ? ends[1] : ends[0];
                    where[cur] = "e" + std::to_string(t) + ":" + std::to_string(i + 1);
                    position[cur] = CurvePoint::interior(t, offset);
                }
            }
            ColoredCurve cc{&g.base, {}, {}, {}};
            for (int v = 0; v < g.base.vertex_count(); ++v) cc.vertex_colors.push_back(std::to_string(g.level[v]) + "@" + where[v]);
            for (int k : g.k) cc.half_edge_colors.push_back(std::to_string(k));
            for (int k : g.leg_k) cc.leg_colors.push_back(std::to_string(k));
            auto key = canonical_form(cc).encoding;
            if (found.count(key)) continue;
            FiberCell cell;
            cell.cone_encoding = cone.encoding;
            cell.graph = g;
            cell.embedding = emb;
            cell.key = key;
            cell.dimension = sol.dimension;
            for (std::size_t l = 0; l < g.base.legs.size(); ++l)
                cell.sample.add(detail::lift(m, ms, position[g.base.legs[l].vertex]), g.leg_k[l]);
            found.emplace(key, std::move(cell));
        }
    }
    for (auto& [key, cell] : found) out.cells.push_back(std::move(cell));
    std::stable_sort(out.cells.begin(), out.cells.end(),
                     [](const FiberCell& a, const FiberCell& b) { return a.dimension < b.dimension; });
    return out;
}

}  // namespace tropcanon

#endif  // TROPCANON_CATALOG_HPP
