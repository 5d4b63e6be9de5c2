#ifndef TROPCANON_DIVISOR_HPP
#define TROPCANON_DIVISOR_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropcanon/curve.hpp"

namespace tropcanon {

/// Finite formal sum of points of a metric curve. Zero coefficients are never stored.
struct Divisor {
    std::map<CurvePoint, long> coeff;

    void add(const CurvePoint& p, long m) {
        if (m == 0) return;
        long& c = coeff[p];
        c += m;
        if (c == 0) coeff.erase(p);
    }
    long at(const CurvePoint& p) const {
        auto it = coeff.find(p);
        return it == coeff.end() ? 0 : it->second;
    }
    long degree() const {
        long d = 0;
        for (const auto& [p, m] : coeff) d += m;
        return d;
    }
    bool effective() const {
        return std::all_of(coeff.begin(), coeff.end(), [](const auto& kv) { return kv.second >= 0; });
    }
    bool empty() const { return coeff.empty(); }

    friend Divisor operator+(Divisor a, const Divisor& b) {
        for (const auto& [p, m] : b.coeff) a.add(p, m);
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        for (const auto& [p, m] : b.coeff) a.add(p, -m);
        return a;
    }
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.coeff == b.coeff; }
};

inline void validate(const MetricCurve& m, const Divisor& d) {
    for (const auto& [p, c] : d.coeff) validate_point(m, p);
}

/// Nonincreasing tuple of integers with the counts used by the inconvenience test.
struct DivisorType {
    std::vector<int> entries;

    DivisorType() = default;
    explicit DivisorType(std::vector<int> e) : entries(std::move(e)) {
        std::sort(entries.begin(), entries.end(), std::greater<>());
    }

    int positive() const { return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](int x) { return x > 0; })); }
    int zero() const { return static_cast<int>(std::count(entries.begin(), entries.end(), 0)); }
    int negative() const { return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](int x) { return x < 0; })); }
    int minus_one() const { return static_cast<int>(std::count(entries.begin(), entries.end(), -1)); }
    int sum() const {
        int s = 0;
        for (int x : entries) s += x;
        return s;
    }

    friend bool operator==(const DivisorType& a, const DivisorType& b) { return a.entries == b.entries; }
};

inline std::string to_string(const DivisorType& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.entries.size(); ++i) out += (i ? "," : "") + std::to_string(t.entries[i]);
    return out + ")";
}

/// Continuous piecewise-affine function with integer slopes on a metric
/// curve: values at the vertices plus interior breakpoints per edge.
struct RationalFunction {
    MetricCurve curve;
    std::vector<Rational> vertex_value;
    // Per edge: strictly increasing interior offsets with their values.
    std::vector<std::vector<std::pair<Rational, Rational>>> breaks;

    /// Knots of edge e from end 0 to end 1, including both endpoints.
    std::vector<std::pair<Rational, Rational>> knots(int e) const {
        std::vector<std::pair<Rational, Rational>> out;
        out.push_back({0, vertex_value[curve.base.edges[e].ends[0]]});
        for (const auto& b : breaks[e]) out.push_back(b);
        out.push_back({curve.length[e], vertex_value[curve.base.edges[e].ends[1]]});
        return out;
    }

    Rational value_at(const CurvePoint& p) const {
        if (p.is_vertex()) return vertex_value[p.vertex];
        auto k = knots(p.edge);
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (p.offset <= k[i].first) {
                const auto& [o0, v0] = k[i - 1];
                const auto& [o1, v1] = k[i];
                return v0 + (v1 - v0) * (p.offset - o0) / (o1 - o0);
            }
        }
        return k.back().second;
    }

    /// Slope of edge e in the forward direction just after `offset` (or just before it when `after` is false).
    Rational slope(int e, const Rational& offset, bool after) const {
        auto k = knots(e);
        for (std::size_t i = 1; i < k.size(); ++i) {
            bool inside = after ? offset < k[i].first : offset <= k[i].first;
            if (inside) return (k[i].second - k[i - 1].second) / (k[i].first - k[i - 1].first);
        }
        return (k.back().second - k[k.size() - 2].second) / (k.back().first - k[k.size() - 2].first);
    }

    Rational max_value() const {
        Rational best = vertex_value.front();
        for (const auto& v : vertex_value) best = std::max(best, v);
        for (const auto& bs : breaks)
            for (const auto& b : bs) best = std::max(best, b.second);
        return best;
    }

    void shift(const Rational& c) {
        for (auto& v : vertex_value) v += c;
        for (auto& bs : breaks)
            for (auto& b : bs) b.second += c;
    }

    /// Every point where the function may fail to be affine, vertices included.
    std::vector<CurvePoint> model_points() const {
        std::vector<CurvePoint> out;
        for (int v = 0; v < curve.base.vertex_count(); ++v) out.push_back(CurvePoint::at_vertex(v));
        for (int e = 0; e < curve.base.edge_count(); ++e)
            for (const auto& b : breaks[e]) out.push_back(CurvePoint::interior(e, b.first));
        return out;
    }
};

/// Throws InvalidArgument unless every segment has an integer slope and breakpoints are well placed.
inline void validate(const RationalFunction& f) {
    validate(f.curve);
    const auto& c = f.curve.base;
    if (f.vertex_value.size() != c.vertices.size() || f.breaks.size() != c.edges.size())
        throw Error(ErrorKind::InvalidArgument, "function does not match its curve");
    for (int e = 0; e < c.edge_count(); ++e) {
        auto k = f.knots(e);
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (k[i].first <= k[i - 1].first)
                throw Error(ErrorKind::InvalidArgument, "breakpoints on edge '" + c.edges[e].id + "' are not increasing inside the edge");
            if (!is_integer((k[i].second - k[i - 1].second) / (k[i].first - k[i - 1].first)))
                throw Error(ErrorKind::InvalidArgument, "non-integral slope on edge '" + c.edges[e].id + "'");
        }
    }
}

inline RationalFunction constant_function(const MetricCurve& m, const Rational& value = 0) {
    RationalFunction f;
    f.curve = m;
    f.vertex_value.assign(m.base.vertices.size(), value);
    f.breaks.assign(m.base.edges.size(), {});
    return f;
}

/// Outgoing slope along half-edge `half` at its vertex.
inline long outgoing_slope(const RationalFunction& f, int half) {
    int e = edge_of(half);
    if (end_of(half) == 0) return static_cast<long>(to_int(f.slope(e, 0, true)));
    return -static_cast<long>(to_int(f.slope(e, f.curve.length[e], false)));
}

/// Sum of outgoing slopes of f at p.
inline long order_at(const RationalFunction& f, const CurvePoint& p) {
    if (p.is_vertex()) {
        long s = 0;
        for (int e = 0; e < f.curve.base.edge_count(); ++e)
            for (int end = 0; end < 2; ++end)
                if (f.curve.base.edges[e].ends[end] == p.vertex) s += outgoing_slope(f, half_edge(e, end));
        return s;
    }
    return static_cast<long>(to_int(f.slope(p.edge, p.offset, true) - f.slope(p.edge, p.offset, false)));
}

inline Divisor divisor_of(const RationalFunction& f) {
    Divisor d;
    for (const auto& p : f.model_points()) d.add(p, order_at(f, p));
    return d;
}

/// 2h(v) + |v| - 2 at every vertex, loops counted twice. Legs are ignored.
inline Divisor canonical_divisor(const MetricCurve& m) {
    Divisor d;
    auto val = m.base.valence(false);
    for (int v = 0; v < m.base.vertex_count(); ++v) d.add(CurvePoint::at_vertex(v), 2 * m.base.vertices[v].genus + val[v] - 2);
    return d;
}

/// Multiplicities of D at its support points, nonincreasing.
inline DivisorType type_of(const Divisor& d) {
    std::vector<int> entries;
    for (const auto& [p, m] : d.coeff) entries.push_back(static_cast<int>(m));
    return DivisorType(std::move(entries));
}

/// Refined model of f: the curve subdivided at every breakpoint with f's values.
struct FunctionModel {
    Subdivision subdivision;
    std::vector<Rational> values;  // per vertex of the refined curve
};

inline FunctionModel model_of(const RationalFunction& f) {
    std::set<CurvePoint> pts;
    for (int e = 0; e < f.curve.base.edge_count(); ++e)
        for (const auto& b : f.breaks[e]) pts.insert(CurvePoint::interior(e, b.first));
    FunctionModel out;
    out.subdivision = subdivide(f.curve, pts);
    out.values.resize(out.subdivision.curve.base.vertices.size());
    for (int v = 0; v < f.curve.base.vertex_count(); ++v) out.values[v] = f.vertex_value[v];
    for (const auto& [p, v] : out.subdivision.new_vertex) out.values[v] = f.value_at(p);
    return out;
}

/// Pulls a function on the suppressed curve back to the original model.
inline RationalFunction pull_back(const RationalFunction& g, const MetricCurve& original, const Suppression& s) {
    RationalFunction f;
    f.curve = original;
    f.vertex_value.resize(original.base.vertices.size());
    for (int v = 0; v < original.base.vertex_count(); ++v) f.vertex_value[v] = g.value_at(s.vertex_image[v]);
    f.breaks.resize(original.base.edges.size());
    for (int e = 0; e < original.base.edge_count(); ++e) {
        const auto& img = s.edge_image[e];
        const Rational& len = original.length[e];
        for (const auto& [o, val] : g.breaks[img.edge]) {
            Rational local = img.reversed ? img.start - o : o - img.start;
            if (local > 0 && local < len) f.breaks[e].push_back({local, val});
        }
        std::sort(f.breaks[e].begin(), f.breaks[e].end());
    }
    return f;
}

/// Drops breakpoints where f is affine.
inline RationalFunction simplified(RationalFunction f) {
    for (int e = 0; e < f.curve.base.edge_count(); ++e) {
        auto k = f.knots(e);
        std::vector<std::pair<Rational, Rational>> kept;
        for (std::size_t i = 1; i + 1 < k.size(); ++i) {
            const auto& prev = kept.empty() ? k[0] : kept.back();
            Rational left = (k[i].second - prev.second) / (k[i].first - prev.first);
            Rational right = (k[i + 1].second - k[i].second) / (k[i + 1].first - k[i].first);
            if (left != right) kept.push_back(k[i]);
        }
        f.breaks[e] = std::move(kept);
    }
    return f;
}

}  // namespace tropcanon

#endif  // TROPCANON_DIVISOR_HPP
