#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "tropcanon/divisor.hpp"
#include "tropcanon/solve.hpp"

using namespace tropcanon;

namespace {

CurvePoint V(int v) { return CurvePoint::at_vertex(v); }
CurvePoint I(int e, Rational o) { return CurvePoint::interior(e, std::move(o)); }

// Order of f at p recomputed from values on either side of p at a small distance.
long order_by_difference(const RationalFunction& f, const CurvePoint& p) {
    const auto& c = f.curve.base;
    Rational eps = f.curve.total_length();
    for (int e = 0; e < c.edge_count(); ++e) {
        for (const auto& b : f.breaks[e]) eps = std::min(eps, b.first);
        auto k = f.knots(e);
        for (std::size_t i = 1; i < k.size(); ++i) eps = std::min(eps, k[i].first - k[i - 1].first);
    }
    eps /= 4;
    Rational here = f.value_at(p);
    Rational total = 0;
    if (p.is_vertex()) {
        for (int e = 0; e < c.edge_count(); ++e) {
            if (c.edges[e].ends[0] == p.vertex) total += (f.value_at(I(e, eps)) - here) / eps;
            if (c.edges[e].ends[1] == p.vertex) total += (f.value_at(I(e, f.curve.length[e] - eps)) - here) / eps;
        }
    } else {
        total += (f.value_at(I(p.edge, p.offset + eps)) - here) / eps;
        total += (f.value_at(I(p.edge, p.offset - eps)) - here) / eps;
    }
    return static_cast<long>(to_int(total));
}

}  // namespace

TEST(CanonicalDivisor, Examples) {
    auto d = canonical_divisor(fixtures::dumbbell());
    EXPECT_EQ(d.at(V(0)), 1);
    EXPECT_EQ(d.at(V(1)), 1);
    EXPECT_EQ(d.degree(), 2);
    auto t = canonical_divisor(fixtures::theta());
    EXPECT_EQ(t.at(V(0)), 1);
    EXPECT_EQ(t.at(V(1)), 1);
    MetricCurve rose;
    int v = rose.base.add_vertex("v");
    rose.base.add_edge("a", v, v);
    rose.base.add_edge("b", v, v);
    rose.length = {1, 1};
    EXPECT_EQ(canonical_divisor(rose).at(V(0)), 2);
}

TEST(OrderAt, Examples) {
    auto m = fixtures::dumbbell(1, 2, 1);
    auto f = constant_function(m);
    EXPECT_EQ(order_at(f, I(1, 1)), 0);
    EXPECT_TRUE(divisor_of(f).empty());
    f.vertex_value = {0, 2};
    EXPECT_EQ(order_at(f, I(1, Rational(1, 2))), 0);
    EXPECT_EQ(order_at(f, V(0)), 1);
    f.vertex_value = {1, 1};
    f.breaks[1] = {{1, 0}};
    EXPECT_EQ(order_at(f, I(1, 1)), 2);
    EXPECT_EQ(divisor_of(f).degree(), 0);
}

TEST(DivisorOf, BridgeMinimumMatchesLevelPicture) {
    auto m = fixtures::dumbbell();
    auto f = constant_function(m);
    f.breaks[1] = {{Rational(1, 2), Rational(-1, 2)}};
    auto d = divisor_of(f);
    Divisor expected;
    expected.add(I(1, Rational(1, 2)), 2);
    expected.add(V(0), -1);
    expected.add(V(1), -1);
    EXPECT_EQ(d, expected);
}

TEST(SolveFunction, CanonicalDivisorGivesConstant) {
    auto m = fixtures::dumbbell();
    auto f = solve_function(m, canonical_divisor(m));
    ASSERT_TRUE(f);
    EXPECT_EQ(f->vertex_value, (std::vector<Rational>{0, 0}));
    for (const auto& b : f->breaks) EXPECT_TRUE(b.empty());
}

TEST(SolveFunction, BridgeDoublePoint) {
    auto m = fixtures::dumbbell();
    Divisor d;
    d.add(I(1, Rational(1, 2)), 2);
    auto f = solve_function(m, d);
    ASSERT_TRUE(f);
    EXPECT_EQ(f->value_at(I(1, Rational(1, 2))), Rational(-1, 2));
    EXPECT_EQ(f->vertex_value, (std::vector<Rational>{0, 0}));
    EXPECT_EQ(f->slope(1, 0, true), -1);
    EXPECT_EQ(f->slope(1, 1, false), 1);
    for (const auto& p : f->model_points())
        EXPECT_EQ(order_by_difference(*f, p) + canonical_divisor(m).at(p), d.at(p));
}

TEST(SolveFunction, LoopDoublePoint) {
    auto m = fixtures::dumbbell();
    Divisor d;
    d.add(I(0, Rational(1, 2)), 2);
    auto f = solve_function(m, d);
    ASSERT_TRUE(f);
    EXPECT_EQ(f->vertex_value, (std::vector<Rational>{-1, 0}));
    EXPECT_EQ(f->value_at(I(0, Rational(1, 2))), Rational(-3, 2));
    EXPECT_EQ(order_by_difference(*f, V(0)), -1);
    EXPECT_EQ(order_by_difference(*f, V(1)), -1);
    EXPECT_EQ(order_by_difference(*f, I(0, Rational(1, 2))), 2);
}

TEST(SolveFunction, RejectsInequivalentDivisors) {
    auto m = fixtures::dumbbell();
    Divisor one_per_loop;
    one_per_loop.add(I(0, Rational(1, 3)), 1);
    one_per_loop.add(I(2, Rational(1, 3)), 1);
    EXPECT_FALSE(solve_function(m, one_per_loop));
    Divisor wrong_degree;
    wrong_degree.add(V(0), 1);
    EXPECT_FALSE(solve_function(m, wrong_degree));
    Divisor two_bridge;
    two_bridge.add(I(1, Rational(1, 3)), 1);
    two_bridge.add(I(1, Rational(2, 3)), 1);
    EXPECT_TRUE(solve_function(m, two_bridge));
}

TEST(SolveFunction, SubdividedInputIsSuppressedFirst) {
    auto m = fixtures::dumbbell(1, 2, 1);
    auto s = subdivide(m, {I(1, 1)});
    Divisor d;
    d.add(V(s.new_vertex.at(I(1, 1))), 2);
    auto f = solve_function(s.curve, d);
    ASSERT_TRUE(f);
    EXPECT_EQ(f->vertex_value[s.new_vertex.at(I(1, 1))], -1);
    EXPECT_EQ(canonical_divisor(s.curve) + divisor_of(*f), d);
}

TEST(SolveFunction, RoundTripOnRandomCellSamples) {
    for (auto m : {fixtures::dumbbell(1, 2, 3), fixtures::theta(1, 2, 2), fixtures::k4({1, 2, 3, 2, 1, 3})}) {
        auto sys = canonical_system_cells(m);
        ASSERT_FALSE(sys.cells.empty());
        int g = genus(m.base);
        for (const auto& cell : sys.cells) {
            EXPECT_TRUE(cell.sample_divisor.effective());
            EXPECT_EQ(cell.sample_divisor.degree(), 2 * g - 2);
            EXPECT_LE(cell.dimension, 2 * g - 2);
            EXPECT_TRUE(contains(sys, cell, cell.sample_divisor));
            auto f = solve_function(m, cell.sample_divisor);
            ASSERT_TRUE(f);
            EXPECT_EQ(canonical_divisor(m) + divisor_of(*f), cell.sample_divisor);
            // Uniqueness: the cell's own sample agrees with the solver after normalization.
            auto mine = simplified(cell.sample);
            EXPECT_EQ(mine.vertex_value, f->vertex_value);
        }
    }
}

TEST(CanonicalSystem, DumbbellCells) {
    auto sys = canonical_system_cells(fixtures::dumbbell());
    int max_dim = 0;
    bool has_k = false;
    for (const auto& cell : sys.cells) {
        max_dim = std::max(max_dim, cell.dimension);
        if (cell.sample_divisor == canonical_divisor(sys.minimal)) {
            has_k = true;
            EXPECT_EQ(cell.dimension, 0);
        }
    }
    EXPECT_EQ(max_dim, 2);
    EXPECT_TRUE(has_k);
}

TEST(CanonicalSystem, TooSmallBoundIsReported) {
    EXPECT_THROW(canonical_system_cells(fixtures::dumbbell(), 1), Error);
    EXPECT_NO_THROW(canonical_system_cells(fixtures::dumbbell(), 2));
}

TEST(CanonicalSystem, WiderSlopeSearchFindsNothingNew) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 9), den(1, 3);
    auto signature = [](const SystemCells& sys) {
        std::set<std::pair<std::vector<long>, std::vector<std::vector<long>>>> out;
        for (const auto& cell : sys.cells) out.insert({cell.slope, cell.pattern});
        return out;
    };
    for (auto m : {fixtures::dumbbell(), fixtures::theta(), fixtures::k4()}) {
        for (int trial = 0; trial < 3; ++trial) {
            for (auto& l : m.length) l = Rational(num(rng), den(rng));
            int g = genus(m.base);
            EXPECT_EQ(signature(canonical_system_cells(m)), signature(canonical_system_cells(m, 2 * g)));
        }
    }
}

TEST(TypeOf, Examples) {
    Divisor d;
    d.add(I(1, Rational(1, 2)), 2);
    EXPECT_EQ(type_of(d).entries, std::vector<int>{2});
    d = canonical_divisor(fixtures::dumbbell());
    EXPECT_EQ(type_of(d).entries, (std::vector<int>{1, 1}));
    Divisor four;
    for (int e = 0; e < 4; ++e) four.add(I(e, Rational(1, 2)), 1);
    EXPECT_EQ(type_of(four).entries, (std::vector<int>{1, 1, 1, 1}));
    DivisorType t({-2, 2, -2});
    EXPECT_EQ(t.entries, (std::vector<int>{2, -2, -2}));
    EXPECT_EQ(t.positive(), 1);
    EXPECT_EQ(t.negative(), 2);
    EXPECT_EQ(t.minus_one(), 0);
}
