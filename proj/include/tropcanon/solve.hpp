#ifndef TROPCANON_SOLVE_HPP
#define TROPCANON_SOLVE_HPP

// Membership in the canonical linear system |K| and its cell structure.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tropcanon/curve.hpp"
#include "tropcanon/divisor.hpp"
#include "tropcanon/linear.hpp"

namespace tropcanon {

namespace detail {

// Interior points of D on edge e, sorted by offset: (offset, multiplicity).
inline std::vector<std::vector<std::pair<Rational, long>>> interior_support(const MetricCurve& m, const Divisor& d) {
    std::vector<std::vector<std::pair<Rational, long>>> out(m.base.edges.size());
    for (const auto& [p, c] : d.coeff)
        if (!p.is_vertex()) out[p.edge].push_back({p.offset, c});
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

inline Divisor transport(const Suppression& s, const Divisor& d) {
    Divisor out;
    for (const auto& [p, c] : d.coeff) out.add(tropcanon::transport(s, p), c);
    return out;
}

// The function with initial slopes `slope` and interior support `support`
// on each edge, given vertex values.
inline RationalFunction assemble(const MetricCurve& m, const std::vector<Rational>& values, const std::vector<long>& slope,
                                 const std::vector<std::vector<std::pair<Rational, long>>>& support) {
    RationalFunction f;
    f.curve = m;
    f.vertex_value = values;
    f.breaks.resize(m.base.edges.size());
    for (int e = 0; e < m.base.edge_count(); ++e) {
        Rational value = values[m.base.edges[e].ends[0]];
        Rational pos = 0;
        Rational s = slope[e];
        for (const auto& [o, a] : support[e]) {
            value += s * (o - pos);
            pos = o;
            f.breaks[e].push_back({o, value});
            s += a;
        }
    }
    return f;
}

inline std::optional<RationalFunction> solve_on_minimal(const MetricCurve& m, const Divisor& d) {
    const auto& c = m.base;
    const int n = c.vertex_count();
    const int ne = c.edge_count();
    Divisor k = canonical_divisor(m);
    auto support = interior_support(m, d);
    // Unknowns: f(v) for each vertex, then the initial slope m_e of each edge.
    const std::size_t vars = static_cast<std::size_t>(n + ne);
    linear::Matrix rows;
    auto row = [&] { return linear::Row(vars + 1, 0); };
    for (int e = 0; e < ne; ++e) {
        // f(v1) - f(v0) - m_e L = sum_j a_j (L - o_j)
        auto r = row();
        const Rational& len = m.length[e];
        r[c.edges[e].ends[1]] += 1;
        r[c.edges[e].ends[0]] -= 1;
        r[n + e] = -len;
        Rational rhs = 0;
        for (const auto& [o, a] : support[e]) rhs += a * (len - o);
        r[vars] = rhs;
        rows.push_back(std::move(r));
    }
    for (int v = 0; v < n; ++v) {
        // sum of outgoing slopes = D(v) - K(v)
        auto r = row();
        long rhs = d.at(CurvePoint::at_vertex(v)) - k.at(CurvePoint::at_vertex(v));
        for (int e = 0; e < ne; ++e) {
            long total = 0;
            for (const auto& [o, a] : support[e]) total += a;
            if (c.edges[e].ends[0] == v) r[n + e] += 1;
            if (c.edges[e].ends[1] == v) {
                r[n + e] -= 1;
                rhs += total;
            }
        }
        r[vars] = rhs;
        rows.push_back(std::move(r));
    }
    auto anchor = row();
    anchor[0] = 1;
    rows.push_back(std::move(anchor));
    auto ech = linear::rref(std::move(rows), vars);
    if (!ech.consistent || ech.rank() != vars) return std::nullopt;
    std::vector<Rational> sol(vars);
    for (std::size_t r = 0; r < ech.rows.size(); ++r) sol[ech.pivots[r]] = ech.rows[r][vars];
    std::vector<long> slope(ne);
    for (int e = 0; e < ne; ++e) {
        if (!is_integer(sol[n + e])) return std::nullopt;
        slope[e] = static_cast<long>(to_int(sol[n + e]));
    }
    std::vector<Rational> values(sol.begin(), sol.begin() + n);
    auto f = assemble(m, values, slope, support);
    f.shift(-f.max_value());
    return f;
}

// x[to] - x[from] <= bound, or < bound when strict.
struct DifferenceConstraint {
    int from = 0;
    int to = 0;
    Rational bound;
    bool strict = false;
};

// Bellman-Ford with an infinitesimal for strict bounds: weights are pairs
// (bound, -strict) compared lexicographically.
inline bool difference_feasible(int n, const std::vector<DifferenceConstraint>& cs) {
    using Weight = std::pair<Rational, int>;
    auto add = [](const Weight& a, const Weight& b) { return Weight{a.first + b.first, a.second + b.second}; };
    std::vector<Weight> dist(n, Weight{0, 0});
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (const auto& c : cs) {
            Weight cand = add(dist[c.from], Weight{c.bound, c.strict ? -1 : 0});
            if (cand < dist[c.to]) {
                dist[c.to] = cand;
                changed = true;
            }
        }
        if (!changed) return true;
    }
    return false;
}

}  // namespace detail

/// The function f, normalized to maximum 0, with K + div(f) = D; nullopt if
/// D is not linearly equivalent to K. Works on the minimal model and pulls
/// the result back to the input model.
inline std::optional<RationalFunction> solve_function(const MetricCurve& m, const Divisor& d) {
    validate(m);
    validate(m, d);
    if (d.degree() != 2 * genus(m.base) - 2) return std::nullopt;
    auto s = suppress(m);
    auto g = detail::solve_on_minimal(s.curve, detail::transport(s, d));
    if (!g) return std::nullopt;
    return simplified(pull_back(*g, m, s));
}

/// One combinatorial type of divisors in |K| on a minimal model: initial
/// slopes per edge, the ordered multiplicities of interior support points
/// per edge, and the resulting vertex multiplicities.
struct SystemCell {
    std::vector<long> slope;                   // initial outgoing slope at end 0 of each edge
    std::vector<std::vector<long>> pattern;    // per edge: multiplicities of interior points from end 0
    std::vector<long> vertex_multiplicity;     // D at each vertex
    int dimension = 0;
    Divisor sample_divisor;
    RationalFunction sample;  // normalized to maximum 0

    int support_points() const {
        int s = 0;
        for (const auto& p : pattern) s += static_cast<int>(p.size());
        for (long x : vertex_multiplicity) s += x > 0 ? 1 : 0;
        return s;
    }
};

struct SystemCells {
    MetricCurve minimal;        // the model all cells refer to
    Suppression suppression;    // from the input curve to `minimal`
    std::vector<SystemCell> cells;
};

/// True iff D (on the minimal model) lies in the cell: same support pattern
/// and the edge equations close up around every cycle.
inline bool contains(const SystemCells& sys, const SystemCell& cell, const Divisor& d_input) {
    Divisor d = detail::transport(sys.suppression, d_input);
    const auto& m = sys.minimal;
    const auto& c = m.base;
    for (int v = 0; v < c.vertex_count(); ++v)
        if (d.at(CurvePoint::at_vertex(v)) != cell.vertex_multiplicity[v]) return false;
    auto support = detail::interior_support(m, d);
    const int n = c.vertex_count();
    linear::Matrix rows;
    for (int e = 0; e < c.edge_count(); ++e) {
        if (support[e].size() != cell.pattern[e].size()) return false;
        for (std::size_t j = 0; j < support[e].size(); ++j)
            if (support[e][j].second != cell.pattern[e][j]) return false;
        linear::Row r(n + 1, 0);
        const Rational& len = m.length[e];
        Rational rhs = cell.slope[e] * len;
        for (const auto& [o, a] : support[e]) rhs += a * (len - o);
        r[c.edges[e].ends[1]] += 1;
        r[c.edges[e].ends[0]] -= 1;
        r[n] = rhs;
        rows.push_back(std::move(r));
    }
    return linear::rref(std::move(rows), n).consistent;
}

/// All nonempty cells of |K| for the given edge lengths. Initial slopes are
/// searched in [-bound, bound]; bound < 0 selects 2g - 2, which always
/// suffices. A smaller bound that is attained by a nonempty cell raises
/// SlopeBoundExceeded.
inline SystemCells canonical_system_cells(const MetricCurve& input, int bound = -1) {
    validate(input);
    const int g = genus(input.base);
    if (g < 2) throw Error(ErrorKind::InvalidArgument, "canonical system cells need genus at least 2");
    SystemCells out;
    out.suppression = suppress(input);
    out.minimal = out.suppression.curve;
    const auto& m = out.minimal;
    const auto& c = m.base;
    if (stability(c, false) != Stability::Stable) throw Error(ErrorKind::NotStable, "minimal model is not stable");
    const int budget = 2 * g - 2;
    const int b = bound < 0 ? budget : bound;
    const int n = c.vertex_count();
    const int ne = c.edge_count();
    Divisor k = canonical_divisor(m);

    // Edges are assigned in an order that completes vertices early.
    std::vector<int> last_edge(n, -1);
    for (int e = 0; e < ne; ++e)
        for (int x : c.edges[e].ends) last_edge[x] = std::max(last_edge[x], e);

    std::vector<long> slope(ne, 0);
    std::vector<std::vector<long>> pattern(ne);
    std::vector<long> partial(n, 0);  // K(v) + outgoing slopes assigned so far
    for (int v = 0; v < n; ++v) partial[v] = k.at(CurvePoint::at_vertex(v));

    auto evaluate = [&] {
        // Unknowns: f(v) per vertex, then the interior offsets edge by edge.
        std::vector<std::size_t> first(ne, 0);
        std::size_t vars = n;
        for (int e = 0; e < ne; ++e) {
            first[e] = vars;
            vars += pattern[e].size();
        }
        linear::System sys(vars);
        sys.equal(sys.unit(0), 0);
        for (int e = 0; e < ne; ++e) {
            const Rational& len = m.length[e];
            linear::Row r(vars, 0);
            r[c.edges[e].ends[1]] += 1;
            r[c.edges[e].ends[0]] -= 1;
            Rational rhs = slope[e] * len;
            for (std::size_t j = 0; j < pattern[e].size(); ++j) {
                r[first[e] + j] += pattern[e][j];
                rhs += pattern[e][j] * len;
            }
            sys.equal(r, rhs);
            for (std::size_t j = 0; j < pattern[e].size(); ++j) {
                linear::Row lo(vars, 0);
                lo[first[e] + j] = 1;
                if (j == 0) {
                    sys.greater(lo, 0);
                } else {
                    lo[first[e] + j - 1] = -1;
                    sys.greater(lo, 0);
                }
            }
            if (!pattern[e].empty()) sys.less(sys.unit(first[e] + pattern[e].size() - 1), len);
        }
        auto res = linear::solve(sys);
        if (!res.feasible) return;
        for (int e = 0; e < ne; ++e) {
            long end_slope = slope[e];
            for (long a : pattern[e]) end_slope += a;
            if (bound >= 0 && bound < budget && (std::labs(slope[e]) >= b || std::labs(end_slope) >= b))
                throw Error(ErrorKind::SlopeBoundExceeded, "a nonempty cell reaches the slope bound " + std::to_string(b));
        }
        SystemCell cell;
        cell.slope = slope;
        cell.pattern = pattern;
        cell.vertex_multiplicity = partial;
        cell.dimension = static_cast<int>(res.dimension);
        std::vector<std::vector<std::pair<Rational, long>>> support(ne);
        for (int e = 0; e < ne; ++e)
            for (std::size_t j = 0; j < pattern[e].size(); ++j) {
                support[e].push_back({res.sample[first[e] + j], pattern[e][j]});
                cell.sample_divisor.add(CurvePoint::interior(e, res.sample[first[e] + j]), pattern[e][j]);
            }
        for (int v = 0; v < n; ++v) cell.sample_divisor.add(CurvePoint::at_vertex(v), partial[v]);
        std::vector<Rational> values(res.sample.begin(), res.sample.begin() + n);
        cell.sample = detail::assemble(m, values, slope, support);
        cell.sample.shift(-cell.sample.max_value());
        out.cells.push_back(std::move(cell));
    };

    // Compositions of `total` into ordered positive parts.
    auto compositions = [](int total) {
        std::vector<std::vector<long>> all;
        if (total == 0) {
            all.push_back({});
            return all;
        }
        for (int mask = 0; mask < (1 << (total - 1)); ++mask) {
            std::vector<long> parts;
            long run = 1;
            for (int i = 0; i < total - 1; ++i) {
                if (mask & (1 << i)) {
                    parts.push_back(run);
                    run = 1;
                } else {
                    ++run;
                }
            }
            parts.push_back(run);
            all.push_back(std::move(parts));
        }
        return all;
    };
    std::vector<std::vector<std::vector<long>>> comps(budget + 1);
    for (int a = 0; a <= budget; ++a) comps[a] = compositions(a);

    // Projecting out the interior offsets leaves difference constraints on
    // the vertex values: f(v1) - f(v0) equals m_e L when the edge carries no
    // support and lies strictly between m_e L and (m_e + A_e) L otherwise.
    std::vector<int> total(ne, 0);
    auto consistent_prefix = [&](int upto) {
        std::vector<detail::DifferenceConstraint> cs;
        for (int e = 0; e <= upto; ++e) {
            int u = c.edges[e].ends[0], w = c.edges[e].ends[1];
            Rational lo = slope[e] * m.length[e];
            Rational hi = (slope[e] + total[e]) * m.length[e];
            bool strict = total[e] > 0;
            cs.push_back({u, w, hi, strict});
            cs.push_back({w, u, -lo, strict});
        }
        return detail::difference_feasible(n, cs);
    };

    std::function<void(int)> compose = [&](int e) {
        if (e == ne) {
            evaluate();
            return;
        }
        for (const auto& comp : comps[total[e]]) {
            pattern[e] = comp;
            compose(e + 1);
        }
        pattern[e].clear();
    };

    std::function<void(int, int)> assign = [&](int e, int used) {
        if (e == ne) {
            compose(0);
            return;
        }
        const int v0 = c.edges[e].ends[0], v1 = c.edges[e].ends[1];
        for (int a = 0; used + a <= budget; ++a) {
            for (long s = -b; s <= b; ++s) {
                long end_slope = s + a;
                if (end_slope < -b || end_slope > b) continue;
                partial[v0] += s;
                partial[v1] -= end_slope;
                int spent = used + a;
                bool ok = true;
                for (int x : {v0, v1}) {
                    if (last_edge[x] == e && partial[x] < 0) ok = false;
                }
                if (ok) {
                    // Completed vertices consume the degree budget too.
                    int committed = spent;
                    for (int v = 0; v < n; ++v)
                        if (last_edge[v] <= e) committed += static_cast<int>(partial[v]);
                    ok = committed <= budget;
                }
                if (ok) {
                    slope[e] = s;
                    total[e] = a;
                    if (consistent_prefix(e)) assign(e + 1, spent);
                }
                partial[v0] -= s;
                partial[v1] += end_slope;
            }
        }
    };
    assign(0, 0);
    return out;
}

}  // namespace tropcanon

#endif  // TROPCANON_SOLVE_HPP
