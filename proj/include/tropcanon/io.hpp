#ifndef TROPCANON_IO_HPP
#define TROPCANON_IO_HPP

// JSON reading and writing for curves, divisors, functions, enhanced level
// graphs, verdicts and catalogs, plus DOT export. Rationals are "p/q" strings.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tropcanon/catalog.hpp"
#include "tropcanon/realize.hpp"
#include "tropcanon/solve.hpp"

namespace tropcanon::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

inline const json& field(const json& j, const char* key, const char* where) {
    if (!j.is_object()) schema(std::string(where) + " must be an object");
    auto it = j.find(key);
    if (it == j.end()) schema(std::string(where) + " is missing '" + key + "'");
    return *it;
}

inline std::string text(const json& j, const char* key, const char* where) {
    const auto& v = field(j, key, where);
    if (!v.is_string()) schema(std::string(where) + "." + key + " must be a string");
    return v.get<std::string>();
}

inline long integer(const json& j, const char* key, const char* where) {
    const auto& v = field(j, key, where);
    if (!v.is_number_integer()) schema(std::string(where) + "." + key + " must be an integer");
    return v.get<long>();
}

inline Rational rational(const json& v, const char* where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) schema(std::string(where) + " must be a \"p/q\" string");
    return parse_rational(v.get<std::string>());
}

inline const json& array(const json& j, const char* key, const char* where) {
    const auto& v = field(j, key, where);
    if (!v.is_array()) schema(std::string(where) + "." + key + " must be an array");
    return v;
}

inline int vertex_ref(const CombinatorialCurve& c, const std::string& id) {
    auto v = c.find_vertex(id);
    if (!v) schema("unknown vertex '" + id + "'");
    return *v;
}

inline int edge_ref(const CombinatorialCurve& c, const std::string& id) {
    auto e = c.find_edge(id);
    if (!e) schema("unknown edge '" + id + "'");
    return *e;
}

}  // namespace detail

// ---- curves

inline json to_json(const CombinatorialCurve& c, const std::vector<Rational>* lengths = nullptr) {
    json out;
    out["vertices"] = json::array();
    for (const auto& v : c.vertices) out["vertices"].push_back({{"id", v.id}, {"genus", v.genus}});
    out["edges"] = json::array();
    for (int e = 0; e < c.edge_count(); ++e) {
        const auto& edge = c.edges[e];
        json je{{"id", edge.id}, {"ends", {c.vertices[edge.ends[0]].id, c.vertices[edge.ends[1]].id}}};
        if (lengths) je["length"] = to_string((*lengths)[e]);
        out["edges"].push_back(je);
    }
    out["legs"] = json::array();
    for (const auto& l : c.legs) out["legs"].push_back({{"id", l.id}, {"vertex", c.vertices[l.vertex].id}});
    return out;
}

inline json to_json(const MetricCurve& m) { return to_json(m.base, &m.length); }

/// Reads vertices, edges and legs; fills `lengths` when every edge has one
/// and `leg_k` with the legs' "k" entries (0 when absent).
inline CombinatorialCurve curve_from_json(const json& j, std::vector<Rational>* lengths = nullptr,
                                          std::vector<int>* leg_k = nullptr) {
    CombinatorialCurve c;
    for (const auto& v : detail::array(j, "vertices", "curve")) {
        int genus = v.contains("genus") ? static_cast<int>(detail::integer(v, "genus", "vertex")) : 0;
        c.add_vertex(detail::text(v, "id", "vertex"), genus);
    }
    for (const auto& e : detail::array(j, "edges", "curve")) {
        const auto& ends = detail::field(e, "ends", "edge");
        if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
            detail::schema("edge.ends must be a pair of vertex ids");
        c.add_edge(detail::text(e, "id", "edge"), detail::vertex_ref(c, ends[0].get<std::string>()),
                   detail::vertex_ref(c, ends[1].get<std::string>()));
        if (lengths) {
            if (!e.contains("length")) detail::schema("edge '" + c.edges.back().id + "' has no length");
            lengths->push_back(detail::rational(e["length"], "edge.length"));
        }
    }
    if (j.contains("legs")) {
        for (const auto& l : detail::array(j, "legs", "curve")) {
            c.add_leg(detail::text(l, "id", "leg"), detail::vertex_ref(c, detail::text(l, "vertex", "leg")));
            if (leg_k) leg_k->push_back(l.contains("k") ? static_cast<int>(detail::integer(l, "k", "leg")) : 0);
        }
    }
    validate(c);
    return c;
}

inline MetricCurve metric_from_json(const json& j) {
    MetricCurve m;
    m.base = curve_from_json(j, &m.length);
    try {
        validate(m);
    } catch (const Error& err) {
        detail::schema(err.what());
    }
    return m;
}

// ---- points, divisors, functions

inline json to_json(const CombinatorialCurve& c, const CurvePoint& p) {
    if (p.is_vertex()) return {{"vertex", c.vertices[p.vertex].id}};
    return {{"edge", c.edges[p.edge].id}, {"offset", to_string(p.offset)}};
}

inline CurvePoint point_from_json(const MetricCurve& m, const json& j) {
    if (!j.is_object()) detail::schema("point must be an object");
    if (j.contains("vertex")) return CurvePoint::at_vertex(detail::vertex_ref(m.base, detail::text(j, "vertex", "point")));
    int e = detail::edge_ref(m.base, detail::text(j, "edge", "point"));
    auto p = CurvePoint::interior(e, detail::rational(detail::field(j, "offset", "point"), "point.offset"));
    try {
        validate_point(m, p);
    } catch (const Error& err) {
        detail::schema(err.what());
    }
    return p;
}

inline json to_json(const MetricCurve& m, const Divisor& d) {
    json out = json::array();
    for (const auto& [p, mult] : d.coeff) out.push_back({{"at", to_json(m.base, p)}, {"mult", mult}});
    return out;
}

inline Divisor divisor_from_json(const MetricCurve& m, const json& j) {
    if (!j.is_array()) detail::schema("divisor must be an array");
    Divisor d;
    for (const auto& entry : j) d.add(point_from_json(m, detail::field(entry, "at", "divisor entry")), detail::integer(entry, "mult", "divisor entry"));
    return d;
}

/// {"model_points": [...], "values": {"<vertex id>" | "<edge>@p/q": "p/q"}}.
inline json to_json(const RationalFunction& f) {
    json out;
    out["model_points"] = json::array();
    out["values"] = json::object();
    for (const auto& p : f.model_points()) {
        out["model_points"].push_back(to_json(f.curve.base, p));
        out["values"][describe(f.curve.base, p)] = to_string(f.value_at(p));
    }
    return out;
}

inline RationalFunction function_from_json(const MetricCurve& m, const json& j) {
    RationalFunction f = constant_function(m);
    const auto& values = detail::field(j, "values", "function");
    if (!values.is_object()) detail::schema("function.values must be an object");
    std::vector<bool> seen(m.base.vertices.size(), false);
    for (const auto& pj : detail::array(j, "model_points", "function")) {
        auto p = point_from_json(m, pj);
        auto key = describe(m.base, p);
        if (!values.contains(key)) detail::schema("function has no value at " + key);
        Rational v = detail::rational(values[key], "function value");
        if (p.is_vertex()) {
            f.vertex_value[p.vertex] = v;
            seen[p.vertex] = true;
        } else {
            f.breaks[p.edge].push_back({p.offset, v});
        }
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) detail::schema("function has no value at vertex '" + m.base.vertices[v].id + "'");
    for (auto& b : f.breaks) std::sort(b.begin(), b.end());
    try {
        validate(f);
    } catch (const Error& err) {
        detail::schema(err.what());
    }
    return f;
}

inline DivisorType type_from_text(const std::string& s) {
    std::vector<int> entries;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            entries.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            detail::schema("malformed type entry '" + part + "'");
        }
    }
    if (entries.empty()) detail::schema("empty type");
    return DivisorType(std::move(entries));
}

// ---- enhanced level graphs

inline json to_json(const EnhancedLevelGraph& g) {
    json out = to_json(g.base);
    for (std::size_t v = 0; v < g.base.vertices.size(); ++v) out["vertices"][v]["level"] = g.level[v];
    for (std::size_t l = 0; l < g.base.legs.size(); ++l) out["legs"][l]["k"] = g.leg_k[l];
    out["half_edges"] = json::array();
    for (int e = 0; e < g.base.edge_count(); ++e)
        for (int end = 0; end < 2; ++end)
            out["half_edges"].push_back({{"edge", g.base.edges[e].id}, {"end", end}, {"k", g.k[half_edge(e, end)]}});
    return out;
}

inline EnhancedLevelGraph level_graph_from_json(const json& j) {
    EnhancedLevelGraph g;
    g.base = curve_from_json(j, nullptr, &g.leg_k);
    for (const auto& v : detail::array(j, "vertices", "level graph")) g.level.push_back(static_cast<int>(detail::integer(v, "level", "vertex")));
    g.k.assign(2 * g.base.edges.size(), 0);
    std::vector<bool> seen(g.k.size(), false);
    for (const auto& h : detail::array(j, "half_edges", "level graph")) {
        int e = detail::edge_ref(g.base, detail::text(h, "edge", "half-edge"));
        long end = detail::integer(h, "end", "half-edge");
        if (end != 0 && end != 1) detail::schema("half-edge end must be 0 or 1");
        g.k[half_edge(e, static_cast<int>(end))] = static_cast<int>(detail::integer(h, "k", "half-edge"));
        seen[half_edge(e, static_cast<int>(end))] = true;
    }
    for (std::size_t h = 0; h < seen.size(); ++h)
        if (!seen[h]) detail::schema("half-edge " + g.base.edges[edge_of(static_cast<int>(h))].id + ":" + std::to_string(end_of(static_cast<int>(h))) + " has no k");
    for (const auto& l : j["legs"])
        if (!l.contains("k")) detail::schema("leg '" + l.value("id", std::string()) + "' has no k");
    return g;
}

// ---- reports

inline json to_json(const Verdict& v) {
    json out;
    out["realizable"] = v.realizable;
    out["violations"] = json::array();
    for (const auto& x : v.violations) out["violations"].push_back({{"kind", x.kind}, {"location", x.location}, {"reason", x.reason}});
    out["witnesses"] = json::object();
    for (const auto& [key, cycle] : v.witnesses) out["witnesses"][key] = cycle;
    return out;
}

inline json to_json(const PairResult& r) {
    json out;
    out["status"] = to_string(r.status);
    auto verdict = to_json(r.verdict);
    for (auto it = verdict.begin(); it != verdict.end(); ++it) out[it.key()] = it.value();
    if (r.function) out["function"] = to_json(*r.function);
    if (r.enhancement) out["level_graph"] = to_json(r.enhancement->graph);
    return out;
}

inline json to_json(const Cone& cone) {
    const auto& g = cone.graph;
    json out;
    out["encoding"] = cone.encoding;
    out["graph"] = to_json(g.base);
    out["levels"] = json::object();
    for (std::size_t v = 0; v < g.base.vertices.size(); ++v) out["levels"][g.base.vertices[v].id] = g.level[v];
    json k;
    k["half_edges"] = json::array();
    for (int e = 0; e < g.base.edge_count(); ++e)
        for (int end = 0; end < 2; ++end)
            k["half_edges"].push_back({{"edge", g.base.edges[e].id}, {"end", end}, {"k", g.k[half_edge(e, end)]}});
    k["legs"] = json::object();
    for (std::size_t l = 0; l < g.base.legs.size(); ++l) k["legs"][g.base.legs[l].id] = g.leg_k[l];
    out["k"] = k;
    out["dimension"] = cone.dimension;
    out["maximal"] = cone.maximal;
    out["automorphisms"] = cone.automorphisms;
    return out;
}

inline json to_json(const Catalog& c) {
    json out = json::array();
    for (const auto& cone : c.cones) out.push_back(to_json(cone));
    return out;
}

inline json to_json(const Fiber& f) {
    json out;
    out["curve"] = to_json(f.curve);
    out["cells"] = json::array();
    for (const auto& cell : f.cells) {
        out["cells"].push_back({{"cone", cell.cone_encoding},
                                {"dimension", cell.dimension},
                                {"sample", to_json(f.curve, cell.sample)},
                                {"level_graph", to_json(cell.graph)}});
    }
    return out;
}

/// DOT text: one rank per level, vertex labels "h=..., lvl=...", edge labels "k=a|b".
inline std::string to_dot(const EnhancedLevelGraph& g) {
    const auto& c = g.base;
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '\\';
            out += ch;
        }
        return out + "\"";
    };
    std::ostringstream out;
    out << "graph level_graph {\n  rankdir=TB;\n";
    std::map<int, std::vector<int>, std::greater<>> by_level;
    for (int v = 0; v < c.vertex_count(); ++v) by_level[g.level[v]].push_back(v);
    for (int v = 0; v < c.vertex_count(); ++v)
        out << "  " << quote(c.vertices[v].id) << " [label=" << quote(c.vertices[v].id + "\\nh=" + std::to_string(c.vertices[v].genus) + ", lvl=" + std::to_string(g.level[v])) << "];\n";
    for (const auto& [lvl, vs] : by_level) {
        out << "  { rank=same;";
        for (int v : vs) out << " " << quote(c.vertices[v].id) << ";";
        out << " }\n";
    }
    for (int e = 0; e < c.edge_count(); ++e) {
        const auto& edge = c.edges[e];
        out << "  " << quote(c.vertices[edge.ends[0]].id) << " -- " << quote(c.vertices[edge.ends[1]].id) << " [label="
            << quote(edge.id + " k=" + std::to_string(g.k[half_edge(e, 0)]) + "|" + std::to_string(g.k[half_edge(e, 1)])) << "];\n";
    }
    for (std::size_t l = 0; l < c.legs.size(); ++l) {
        std::string node = "leg:" + c.legs[l].id;
        out << "  " << quote(node) << " [shape=point];\n";
        out << "  " << quote(c.vertices[c.legs[l].vertex].id) << " -- " << quote(node) << " [label=" << quote("k=" + std::to_string(g.leg_k[l])) << "];\n";
    }
    out << "}\n";
    return out.str();
}

// ---- files

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) detail::schema("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        detail::schema("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace tropcanon::io

#endif  // TROPCANON_IO_HPP
