#ifndef TROPCANON_LINEAR_HPP
#define TROPCANON_LINEAR_HPP

// Exact rational linear algebra: reduced row echelon form, rank, and a
// feasibility decider for mixed systems of equalities, weak and strict
// inequalities (Fourier-Motzkin elimination with strictness tracking).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "tropcanon/rational.hpp"

namespace tropcanon::linear {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

/// Row-reduced echelon form of the augmented system [A | b].
struct Echelon {
    Matrix rows;                  // reduced rows, each of size n + 1 (last entry = rhs)
    std::vector<std::size_t> pivots;  // pivot column of each row
    bool consistent = true;
    std::size_t columns = 0;

    std::size_t rank() const { return pivots.size(); }
};

inline Echelon rref(Matrix a, std::size_t columns) {
    Echelon out;
    out.columns = columns;
    std::size_t row = 0;
    for (std::size_t col = 0; col < columns && row < a.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[row], a[pivot]);
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational factor = a[r][col];
            for (std::size_t c = col; c <= columns; ++c) a[r][c] -= factor * a[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < a.size(); ++r) {
        if (a[r][columns] != 0) out.consistent = false;
    }
    a.resize(row);
    out.rows = std::move(a);
    return out;
}

/// Rank of a coefficient matrix (no right-hand side column).
inline std::size_t rank(const Matrix& a, std::size_t columns) {
    Matrix augmented = a;
    for (auto& r : augmented) r.push_back(0);
    return rref(std::move(augmented), columns).rank();
}

enum class Relation { Equal, LessEqual, Less };

struct Constraint {
    Row coeffs;  // coeffs . x  (rel)  rhs
    Rational rhs;
    Relation relation = Relation::Equal;
};

/// A system over `variables` unknowns. Coefficient rows shorter than the
/// variable count are zero-padded.
class System {
public:
    explicit System(std::size_t variables) : variables_(variables) {}

    std::size_t variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    void add(Row coeffs, Rational rhs, Relation relation) {
        coeffs.resize(variables_);
        constraints_.push_back({std::move(coeffs), std::move(rhs), relation});
    }
    void equal(Row coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), Relation::Equal); }
    void less(Row coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), Relation::Less); }
    void less_equal(Row coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), Relation::LessEqual); }
    void greater(Row coeffs, Rational rhs) {
        for (auto& c : coeffs) c = -c;
        less(std::move(coeffs), -rhs);
    }
    void greater_equal(Row coeffs, Rational rhs) {
        for (auto& c : coeffs) c = -c;
        less_equal(std::move(coeffs), -rhs);
    }

    /// Unit row helper: returns a zero row with `value` at `index`.
    Row unit(std::size_t index, Rational value = 1) const {
        Row r(variables_);
        r[index] = std::move(value);
        return r;
    }

private:
    std::size_t variables_;
    std::vector<Constraint> constraints_;
};

struct Feasibility {
    bool feasible = false;
    std::vector<Rational> sample;  // a point satisfying every constraint
    std::size_t dimension = 0;     // dimension of the solution set (valid when feasible)
};

namespace detail {

struct Ineq {
    Row coeffs;
    Rational rhs;
    bool strict = false;
};

// Scales so the last nonzero coefficient has absolute value one; keeps direction.
inline void normalize(Ineq& q) {
    for (std::size_t i = q.coeffs.size(); i-- > 0;) {
        if (q.coeffs[i] != 0) {
            Rational s = abs(q.coeffs[i]);
            for (auto& c : q.coeffs) c /= s;
            q.rhs /= s;
            return;
        }
    }
}

inline bool all_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
}

// Drops duplicates and, among parallel constraints with equal coefficients,
// keeps the tightest one. Returns false if a constant constraint fails.
inline bool tidy(std::vector<Ineq>& qs) {
    std::vector<Ineq> kept;
    for (auto& q : qs) {
        normalize(q);
        if (all_zero(q.coeffs)) {
            if (q.strict ? !(0 < q.rhs) : !(0 <= q.rhs)) return false;
            continue;
        }
        bool merged = false;
        for (auto& k : kept) {
            if (k.coeffs == q.coeffs) {
                if (q.rhs < k.rhs) {
                    k.rhs = q.rhs;
                    k.strict = q.strict;
                } else if (q.rhs == k.rhs) {
                    k.strict = k.strict || q.strict;
                }
                merged = true;
                break;
            }
        }
        if (!merged) kept.push_back(std::move(q));
    }
    qs = std::move(kept);
    return true;
}

// Eliminates the variable `var` (assumed the last one still present).
inline std::vector<Ineq> eliminate(const std::vector<Ineq>& qs, std::size_t var) {
    std::vector<Ineq> out, upper, lower;
    for (const auto& q : qs) {
        if (q.coeffs[var] > 0) upper.push_back(q);
        else if (q.coeffs[var] < 0) lower.push_back(q);
        else out.push_back(q);
    }
    for (const auto& u : upper) {
        for (const auto& l : lower) {
            // u: a x + cu t <= bu (cu > 0), l: a' x + cl t <= bl (cl < 0)
            Rational wu = -l.coeffs[var];
            Rational wl = u.coeffs[var];
            Ineq c;
            c.coeffs.resize(u.coeffs.size());
            for (std::size_t i = 0; i < u.coeffs.size(); ++i) c.coeffs[i] = wu * u.coeffs[i] + wl * l.coeffs[i];
            c.coeffs[var] = 0;
            c.rhs = wu * u.rhs + wl * l.rhs;
            c.strict = u.strict || l.strict;
            out.push_back(std::move(c));
        }
    }
    return out;
}

// Picks a value for `var` given all earlier variables fixed in `point`.
inline std::optional<Rational> pick(const std::vector<Ineq>& qs, std::size_t var, const std::vector<Rational>& point) {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& q : qs) {
        Rational rest = q.rhs;
        for (std::size_t i = 0; i < var; ++i) rest -= q.coeffs[i] * point[i];
        const Rational& c = q.coeffs[var];
        if (c == 0) {
            if (q.strict ? !(0 < rest) : !(0 <= rest)) return std::nullopt;
            continue;
        }
        Rational bound = rest / c;
        if (c > 0) {
            if (!hi || bound < *hi) {
                hi = bound;
                hi_strict = q.strict;
            } else if (bound == *hi) {
                hi_strict = hi_strict || q.strict;
            }
        } else {
            if (!lo || bound > *lo) {
                lo = bound;
                lo_strict = q.strict;
            } else if (bound == *lo) {
                lo_strict = lo_strict || q.strict;
            }
        }
    }
    if (lo && hi) {
        if (*lo < *hi) return (*lo + *hi) / 2;
        if (*lo == *hi && !lo_strict && !hi_strict) return *lo;
        return std::nullopt;
    }
    if (lo) return lo_strict ? *lo + 1 : *lo;
    if (hi) return hi_strict ? *hi - 1 : *hi;
    return Rational(0);
}

// Feasibility over the free variables after equalities have been eliminated.
inline std::optional<std::vector<Rational>> fourier_motzkin(std::vector<Ineq> qs, std::size_t n) {
    if (!tidy(qs)) return std::nullopt;
    std::vector<std::vector<Ineq>> stages(n + 1);
    stages[n] = qs;
    for (std::size_t v = n; v-- > 0;) {
        auto next = eliminate(stages[v + 1], v);
        if (!tidy(next)) return std::nullopt;
        stages[v] = std::move(next);
    }
    std::vector<Rational> point(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto value = pick(stages[v + 1], v, point);
        if (!value) return std::nullopt;
        point[v] = *value;
    }
    return point;
}

struct Reduced {
    bool consistent = true;
    std::size_t rank = 0;
    std::vector<std::size_t> free;  // free columns
    // x = offset + basis * t, t indexed by free columns
    std::vector<Rational> offset;
    Matrix basis;  // n x free.size()
};

inline Reduced reduce_equalities(const System& sys, const std::vector<Row>& extra_eq = {}) {
    const std::size_t n = sys.variables();
    Matrix a;
    for (const auto& c : sys.constraints()) {
        if (c.relation != Relation::Equal) continue;
        Row r = c.coeffs;
        r.push_back(c.rhs);
        a.push_back(std::move(r));
    }
    for (const auto& r : extra_eq) a.push_back(r);
    Echelon e = rref(std::move(a), n);
    Reduced out;
    out.consistent = e.consistent;
    out.rank = e.rank();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) out.free.push_back(c);
    out.offset.assign(n, 0);
    out.basis.assign(n, Row(out.free.size()));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        std::size_t p = e.pivots[r];
        out.offset[p] = e.rows[r][n];
        for (std::size_t f = 0; f < out.free.size(); ++f) out.basis[p][f] = -e.rows[r][out.free[f]];
    }
    for (std::size_t f = 0; f < out.free.size(); ++f) out.basis[out.free[f]][f] = 1;
    return out;
}

inline std::vector<Ineq> project_inequalities(const System& sys, const Reduced& red) {
    std::vector<Ineq> qs;
    const std::size_t k = red.free.size();
    for (const auto& c : sys.constraints()) {
        if (c.relation == Relation::Equal) continue;
        Ineq q;
        q.coeffs.assign(k, 0);
        q.rhs = c.rhs;
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
            if (c.coeffs[i] == 0) continue;
            q.rhs -= c.coeffs[i] * red.offset[i];
            for (std::size_t f = 0; f < k; ++f) q.coeffs[f] += c.coeffs[i] * red.basis[i][f];
        }
        q.strict = c.relation == Relation::Less;
        qs.push_back(std::move(q));
    }
    return qs;
}

inline std::vector<Rational> lift(const Reduced& red, const std::vector<Rational>& t) {
    std::vector<Rational> x = red.offset;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t f = 0; f < t.size(); ++f) x[i] += red.basis[i][f] * t[f];
    return x;
}

}  // namespace detail

/// Decides whether the system has a solution; on success returns a sample
/// point and the dimension of the solution set. Weak inequalities that are
/// tight on the whole solution set are detected and counted as equalities.
inline Feasibility solve(const System& sys) {
    Feasibility out;
    auto red = detail::reduce_equalities(sys);
    if (!red.consistent) return out;
    auto qs = detail::project_inequalities(sys, red);
    auto t = detail::fourier_motzkin(qs, red.free.size());
    if (!t) return out;
    out.feasible = true;
    out.sample = detail::lift(red, *t);

    std::vector<Row> implicit;
    for (const auto& c : sys.constraints()) {
        if (c.relation != Relation::LessEqual) continue;
        System probe = sys;
        probe.less(c.coeffs, c.rhs);
        auto pred = detail::reduce_equalities(probe);
        auto pqs = detail::project_inequalities(probe, pred);
        if (!detail::fourier_motzkin(pqs, pred.free.size())) {
            Row r = c.coeffs;
            r.push_back(c.rhs);
            implicit.push_back(std::move(r));
        }
    }
    auto full = detail::reduce_equalities(sys, implicit);
    out.dimension = sys.variables() - full.rank;
    return out;
}

}  // namespace tropcanon::linear

#endif  // TROPCANON_LINEAR_HPP
