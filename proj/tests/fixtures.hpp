#ifndef TROPCANON_TESTS_FIXTURES_HPP
#define TROPCANON_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "tropcanon/curve.hpp"

namespace fixtures {

using tropcanon::CombinatorialCurve;
using tropcanon::MetricCurve;
using tropcanon::Rational;

// v1 carries loop l1, v2 carries loop l2, bridge b joins them.
inline MetricCurve dumbbell(Rational l1 = 1, Rational b = 1, Rational l2 = 1) {
    MetricCurve m;
    int v1 = m.base.add_vertex("v1");
    int v2 = m.base.add_vertex("v2");
    m.base.add_edge("l1", v1, v1);
    m.base.add_edge("b", v1, v2);
    m.base.add_edge("l2", v2, v2);
    m.length = {l1, b, l2};
    return m;
}

inline MetricCurve theta(Rational a = 1, Rational b = 1, Rational c = 1) {
    MetricCurve m;
    int v1 = m.base.add_vertex("v1");
    int v2 = m.base.add_vertex("v2");
    m.base.add_edge("a", v1, v2);
    m.base.add_edge("b", v1, v2);
    m.base.add_edge("c", v1, v2);
    m.length = {a, b, c};
    return m;
}

// Vertices v1..v4; e1 = v1v2, e2 = v1v3, e3 = v2v3 form the bottom triangle,
// e4 = v1v4, e5 = v2v4, e6 = v3v4.
inline MetricCurve k4(std::vector<Rational> lengths = {1, 1, 1, 1, 1, 1}) {
    MetricCurve m;
    for (int i = 1; i <= 4; ++i) m.base.add_vertex("v" + std::to_string(i));
    m.base.add_edge("e1", 0, 1);
    m.base.add_edge("e2", 0, 2);
    m.base.add_edge("e3", 1, 2);
    m.base.add_edge("e4", 0, 3);
    m.base.add_edge("e5", 1, 3);
    m.base.add_edge("e6", 2, 3);
    m.length = std::move(lengths);
    return m;
}

inline CombinatorialCurve path3() {
    CombinatorialCurve c;
    int a = c.add_vertex("a");
    int b = c.add_vertex("b");
    int d = c.add_vertex("c");
    c.add_edge("ab", a, b);
    c.add_edge("bc", b, d);
    return c;
}

}  // namespace fixtures

#endif
