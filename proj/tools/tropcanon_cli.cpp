// Command-line front end. Every subcommand prints one JSON document (or DOT
// text) to stdout or --out. Exit codes: 0 after a successful evaluation,
// whatever the verdict; 2 for unreadable or malformed input; 3 when a size
// bound is hit; 1 for any other error raised by the evaluation itself.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "tropcanon/io.hpp"
#include "tropcanon/tropcanon.hpp"

using namespace tropcanon;
using io::json;

namespace {

struct Options {
    std::string mode = "normative";
    std::string out;
    std::string mu;
    std::string graph_filter;
    int genus = 0;
    int max_genus = default_max_genus;
    int bound = -1;
    int samples = 0;
    unsigned seed = 1;
    bool maximal_only = false;
    bool pinned = false;
    bool compare_modes = false;
    std::vector<std::string> files;
};

CheckMode parse_mode(const std::string& s) {
    if (s == "normative") return CheckMode::Normative;
    if (s == "strict") return CheckMode::Strict;
    throw Error(ErrorKind::Schema, "--mode must be normative or strict");
}

CombinatorialCurve named_graph(const std::string& name) {
    CombinatorialCurve c;
    if (name == "K4") {
        for (int i = 1; i <= 4; ++i) c.add_vertex("v" + std::to_string(i));
        int id = 1;
        for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}) c.add_edge("e" + std::to_string(id++), a, b);
    } else if (name == "dumbbell") {
        c.add_vertex("v1");
        c.add_vertex("v2");
        c.add_edge("l1", 0, 0);
        c.add_edge("b", 0, 1);
        c.add_edge("l2", 1, 1);
    } else if (name == "theta") {
        c.add_vertex("v1");
        c.add_vertex("v2");
        for (const char* id : {"a", "b", "c"}) c.add_edge(id, 0, 1);
    } else {
        throw Error(ErrorKind::Schema, "unknown graph name '" + name + "'");
    }
    return c;
}

/// A graph name, a curve file, or an encoding taken verbatim.
std::string filter_encoding(const std::string& filter) {
    if (filter == "K4" || filter == "dumbbell" || filter == "theta") return canonical_form(named_graph(filter)).encoding;
    if (std::filesystem::exists(filter)) {
        auto m = MetricCurve{};
        m.base = io::curve_from_json(io::read_json_file(filter));
        m.length.assign(m.base.edges.size(), Rational(1));
        return canonical_form(suppress(m).curve.base).encoding;
    }
    return filter;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    // Written next to the target and renamed so readers never see a partial file.
    std::string tmp = opt.out + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw Error(ErrorKind::Schema, "cannot write '" + opt.out + "'");
        f << text;
    }
    std::filesystem::rename(tmp, opt.out);
}

void emit(const Options& opt, const json& j) { emit(opt, j.dump(2) + "\n"); }

MetricCurve load_curve(const std::string& path) { return io::metric_from_json(io::read_json_file(path)); }

json system_cells_json(const SystemCells& sys) {
    json out;
    out["minimal"] = io::to_json(sys.minimal);
    out["cells"] = json::array();
    for (const auto& cell : sys.cells) {
        json jc;
        jc["dimension"] = cell.dimension;
        jc["slopes"] = json::object();
        jc["pattern"] = json::object();
        for (int e = 0; e < sys.minimal.base.edge_count(); ++e) {
            jc["slopes"][sys.minimal.base.edges[e].id] = cell.slope[e];
            jc["pattern"][sys.minimal.base.edges[e].id] = cell.pattern[e];
        }
        jc["sample_divisor"] = io::to_json(sys.minimal, cell.sample_divisor);
        jc["sample_function"] = io::to_json(cell.sample);
        out["cells"].push_back(jc);
    }
    return out;
}

int run(const std::string& command, const Options& opt) {
    const auto mode = parse_mode(opt.mode);
    const auto& f = opt.files;
    if (command == "check") {
        auto m = load_curve(f.at(0));
        auto d = io::divisor_from_json(m, io::read_json_file(f.at(1)));
        emit(opt, io::to_json(check_pair(m, d, mode)));
    } else if (command == "stratum-check") {
        auto m = load_curve(f.at(0));
        auto d = io::divisor_from_json(m, io::read_json_file(f.at(1)));
        if (opt.mu.empty()) throw Error(ErrorKind::Schema, "stratum-check needs --mu");
        emit(opt, io::to_json(check_stratum(m, d, io::type_from_text(opt.mu), mode)));
    } else if (command == "solve-f") {
        auto m = load_curve(f.at(0));
        auto d = io::divisor_from_json(m, io::read_json_file(f.at(1)));
        validate(m, d);
        auto fn = solve_function(m, d);
        json out;
        out["equivalent"] = fn.has_value();
        if (fn) out["function"] = io::to_json(*fn);
        emit(opt, out);
    } else if (command == "canonical-system") {
        emit(opt, system_cells_json(canonical_system_cells(load_curve(f.at(0)), opt.bound)));
    } else if (command == "witness") {
        auto m = load_curve(f.at(0));
        auto w = construct_witness(m);
        json out;
        out["function"] = io::to_json(w.function);
        out["divisor"] = io::to_json(m, w.divisor);
        out["verdict"] = io::to_json(w.verdict);
        // Optional sampling: the same construction on random rational rescalings of each edge.
        if (opt.samples > 0) {
            std::mt19937 rng(opt.seed);
            std::uniform_int_distribution<int> num(1, 12), den(1, 6);
            int passed = 0;
            for (int i = 0; i < opt.samples; ++i) {
                MetricCurve r = m;
                for (auto& l : r.length) l = Rational(num(rng), den(rng));
                auto rw = construct_witness(r);
                passed += check_pair(r, rw.divisor, mode).verdict.realizable ? 1 : 0;
            }
            out["samples"] = {{"count", opt.samples}, {"seed", opt.seed}, {"realizable", passed}};
        }
        emit(opt, out);
    } else if (command == "enumerate") {
        CatalogOptions co;
        co.mode = mode;
        co.max_genus = opt.max_genus;
        co.maximal_only = opt.maximal_only;
        if (!opt.mu.empty()) co.mu = io::type_from_text(opt.mu);
        if (!opt.graph_filter.empty()) co.graph_filter = filter_encoding(opt.graph_filter);
        if (opt.genus > co.max_genus)
            throw Error(ErrorKind::SizeLimit, "genus " + std::to_string(opt.genus) + " exceeds the bound " + std::to_string(co.max_genus));
        auto catalog = build_catalog(opt.genus, co);
        if (!opt.compare_modes) {
            emit(opt, io::to_json(catalog));
            return 0;
        }
        co.mode = CheckMode::Strict;
        auto strict = build_catalog(opt.genus, co);
        co.mode = CheckMode::Normative;
        auto normative = build_catalog(opt.genus, co);
        std::set<std::string> s;
        for (const auto& c : strict.cones) s.insert(c.encoding);
        json out;
        out["normative"] = normative.cones.size();
        out["strict"] = strict.cones.size();
        out["normative_only"] = json::array();
        for (const auto& c : normative.cones)
            if (!s.count(c.encoding)) out["normative_only"].push_back(io::to_json(c));
        emit(opt, out);
    } else if (command == "fiber") {
        auto m = load_curve(f.at(0));
        std::optional<DivisorType> mu;
        if (!opt.mu.empty()) mu = io::type_from_text(opt.mu);
        emit(opt, io::to_json(fiber_over_metric(m, mode, mu)));
    } else if (command == "feasible") {
        auto g = io::level_graph_from_json(io::read_json_file(f.at(0)));
        auto m = load_curve(f.at(1));
        auto r = feasible_for_lengths(g, m, opt.pinned);
        json out;
        out["feasible"] = r.feasible;
        if (r.feasible) {
            out["depths"] = json::array();
            for (const auto& d : r.values) out["depths"].push_back(to_string(d));
            out["horizontal_lengths"] = json::array();
            for (const auto& l : r.horizontal_lengths) out["horizontal_lengths"].push_back(to_string(l));
            out["dimension"] = r.dimension;
        }
        emit(opt, out);
    } else if (command == "export-dot") {
        auto g = io::level_graph_from_json(io::read_json_file(f.at(0)));
        auto problems = validate(g);
        if (!problems.empty()) throw Error(ErrorKind::InvalidEnhancement, problems.front().kind + " " + problems.front().location);
        emit(opt, io::to_dot(g));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Realizability of tropical canonical divisors"};
    app.require_subcommand(1, 1);
    Options opt;
    auto common = [&](CLI::App* sub, int files, const std::string& names) {
        sub->add_option("files", opt.files, names)->expected(files)->required()->check(CLI::ExistingFile);
        sub->add_option("--mode", opt.mode, "normative or strict")->capture_default_str();
        sub->add_option("--out", opt.out, "write output here instead of stdout");
        return sub;
    };
    common(app.add_subcommand("check", "realizability of an effective canonical divisor"), 2, "curve.json divisor.json");
    auto stratum = common(app.add_subcommand("stratum-check", "realizability within a stratum"), 2, "curve.json divisor.json");
    stratum->add_option("--mu", opt.mu, "type, comma separated, e.g. 2 or 1,1");
    common(app.add_subcommand("solve-f", "function f with K + div(f) = D"), 2, "curve.json divisor.json");
    auto system = common(app.add_subcommand("canonical-system", "cells of the canonical linear system"), 1, "curve.json");
    system->add_option("--bound", opt.bound, "slope bound; negative selects 2g - 2");
    auto witness = common(app.add_subcommand("witness", "a realizable canonical divisor"), 1, "curve.json");
    witness->add_option("--samples", opt.samples, "random length samples to check as well")->capture_default_str();
    witness->add_option("--seed", opt.seed, "seed for the length samples")->capture_default_str();
    auto enumerate = app.add_subcommand("enumerate", "catalog of realizable cones");
    enumerate->add_option("--genus", opt.genus, "genus")->required();
    enumerate->add_option("--mode", opt.mode, "normative or strict")->capture_default_str();
    enumerate->add_option("--graph-filter", opt.graph_filter, "K4, dumbbell, theta, a curve file or an encoding");
    enumerate->add_option("--mu", opt.mu, "type, comma separated");
    enumerate->add_option("--max-genus", opt.max_genus, "genus bound")->capture_default_str();
    enumerate->add_flag("--maximal-only", opt.maximal_only, "keep maximal cones only");
    enumerate->add_flag("--compare-modes", opt.compare_modes, "report cones accepted by normative but not strict mode");
    enumerate->add_option("--out", opt.out, "write output here instead of stdout");
    auto fiber = common(app.add_subcommand("fiber", "cells of realizable divisors over a curve"), 1, "curve.json");
    fiber->add_option("--mu", opt.mu, "type, comma separated");
    auto feasible = common(app.add_subcommand("feasible", "does a cone reach a curve"), 2, "level_graph.json curve.json");
    feasible->add_flag("--pinned", opt.pinned, "keep vertex ids fixed");
    common(app.add_subcommand("export-dot", "DOT rendering of a level graph"), 1, "level_graph.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(app.get_subcommands().front()->get_name(), opt);
    } catch (const Error& e) {
        json err{{"error", to_string(e.kind())}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        switch (e.kind()) {
            case ErrorKind::Schema:
            case ErrorKind::InvalidCurve: return 2;
            case ErrorKind::SizeLimit: return 3;
            default: return 1;
        }
    }
}
