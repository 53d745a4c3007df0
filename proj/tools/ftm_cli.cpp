// ftm: explore finite type structure of an IFS and report local dimensions.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <ftm/ftm.hpp>

namespace {

using namespace ftm;

enum Exit { kOk = 0, kFailure = 1, kNotFiniteType = 2, kInput = 3, kNotInAttractor = 4 };

struct Options {
    std::string config;
    std::string cache;
    std::string json_path;
    std::string dot_path;
    std::string which = "reduced";
    std::string point;
    std::string prefix;
    std::string cycle;
    size_t max_vectors = 100000;
    int max_level = 200;
    int cycle_budget = 8;
    int max_block = 6;
    int depth = 200;
    double tol = 1e-2;
    bool json_stdout = false;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

std::string edge_count(const FiniteTypeStructure& st) {
    size_t e = 0;
    for (const auto& ch : st.expansion) e += ch.size();
    return std::to_string(e);
}

FiniteTypeStructure obtain(const IFSSystem& s, const Options& o, bool* loaded = nullptr) {
    if (!o.cache.empty() && std::filesystem::exists(o.cache)) {
        if (loaded) *loaded = true;
        return load_structure(s, o.cache);
    }
    ExploreOptions eo;
    eo.max_vectors = o.max_vectors;
    eo.max_level = o.max_level;
    FiniteTypeStructure st = explore(s, eo);
    if (st.saturated && !o.cache.empty()) save_structure(st, o.cache);
    return st;
}

int cmd_explore(const Options& o) {
    IFSSystem s = Config::load(o.config).build();
    bool loaded = false;
    FiniteTypeStructure st = obtain(s, o, &loaded);
    int depth = 0;
    for (int l : st.level) depth = std::max(depth, l);
    std::cout << st.reduced.size() << " reduced characteristic vectors\n";
    std::cout << st.size() << " characteristic vectors, " << edge_count(st) << " reduced transitions\n";
    std::cout << "deepest level with a new vector: " << depth << "\n";
    if (loaded) std::cout << "structure loaded from " << o.cache << "\n";
    if (!st.saturated) {
        std::cout << "finite type: not proven (" << st.limit_hit << ")\n";
        return kNotFiniteType;
    }
    std::cout << "finite type: yes\n";
    return kOk;
}

int cmd_report(const Options& o) {
    IFSSystem s = Config::load(o.config).build();
    FiniteTypeStructure st = obtain(s, o);
    st.require_saturated();
    ReportOptions ro;
    ro.cycle_budget = o.cycle_budget;
    ro.max_block = o.max_block;
    DimensionReport r = build_report(st, ro);
    auto j = report_to_json(st, r);
    if (!o.json_path.empty()) write_file(o.json_path, j.dump(2) + "\n");
    if (o.json_stdout) std::cout << j.dump(2) << "\n";
    else {
        std::cout << report_to_text(st, r);
        if (!r.has_measure) std::cout << "no probabilities given: measure results unavailable\n";
    }
    return kOk;
}

int cmd_graph(const Options& o) {
    IFSSystem s = Config::load(o.config).build();
    FiniteTypeStructure st = obtain(s, o);
    st.require_saturated();
    Decomposition d = decompose(st);
    std::string dot;
    if (o.which == "reduced") dot = reduced_diagram_dot(st, d);
    else dot = triple_diagram_dot(build_triple_diagram(st, d));
    if (o.dot_path.empty()) std::cout << dot;
    else write_file(o.dot_path, dot);
    return kOk;
}

std::vector<int> parse_edges(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
            out.push_back(v - 1);
        } catch (const std::exception&) {
            throw InputError("bad edge position '" + tok + "' (positions start at 1)");
        }
    }
    return out;
}

FieldElement parse_point(const FieldContext& f, const std::string& text) {
    ConfigValue v;
    try {
        v = Config::parse_string("point = " + text).value("point");
    } catch (const InputError&) {
        throw InputError("bad point '" + text + "': give a rational or a list of coefficients in rho");
    }
    if (!v.is_list) return f.constant(v.number);
    poly::QPoly c;
    for (const auto& x : v.items) {
        if (x.is_list) throw InputError("bad point '" + text + "'");
        c.push_back(x.number);
    }
    return f.element(c);
}

Representation path_representation(const FiniteTypeStructure& st, const std::vector<int>& prefix,
                                   const std::vector<int>& cycle) {
    if (cycle.empty()) throw InputError("--cycle must not be empty");
    Representation r;
    r.cvs.push_back(st.root());
    auto step = [&](int e) {
        const auto& ch = st.children(r.cvs.back());
        if (e >= static_cast<int>(ch.size()))
            throw PathError("vector has " + std::to_string(ch.size()) + " children, edge " + std::to_string(e + 1) +
                            " requested");
        r.edges.push_back(e);
        r.cvs.push_back(ch[e].child);
    };
    for (int e : prefix) step(e);
    for (int e : cycle) step(e);
    int start = static_cast<int>(prefix.size());
    if (r.cvs.back() != r.cvs[start]) throw PathError("cycle does not return to its starting vector");
    r.period_start = start;
    r.period = static_cast<int>(cycle.size());
    infer_endpoint(st, r);
    return r;
}

void print_dim(const char* label, const DimValue& v) { std::cout << label << format_dim(v) << "\n"; }

std::string edges_str(const Representation& r) {
    std::string s;
    int n = r.periodic() ? r.period_start + r.period : r.depth();
    for (int i = 0; i < n; ++i) {
        if (i == r.period_start) s += "(";
        s += std::to_string(r.edges[i] + 1);
        s += (i + 1 < n ? "," : "");
    }
    if (r.periodic()) s += ")*";
    return s;
}

void slope_table(const FiniteTypeStructure& st, const Representation& r, const Options& o) {
    auto pts = local_dim_estimate(st, r, o.depth);
    int step = std::max(1, o.depth / 10);
    std::cout << "  level   log mass            estimate\n";
    for (const auto& p : pts)
        if (p.level % step == 0 || p.level == o.depth)
            std::cout << "  " << std::setw(5) << p.level << "   " << std::setw(18) << std::setprecision(10) << p.log_mass
                      << "  " << std::setprecision(10) << p.slope << "\n";
    const auto& last = pts.back();
    const auto& mid = pts[std::max<size_t>(0, pts.size() * 3 / 4 - 1)];
    std::cout << "  estimate " << std::setprecision(10) << last.slope
              << (std::abs(last.slope - mid.slope) < o.tol ? " (stable" : " (not yet stable")
              << " within " << o.tol << " since level " << mid.level << ")\n";
}

int cmd_pointdim(const Options& o) {
    IFSSystem s = Config::load(o.config).build();
    require_probabilities(s);
    FiniteTypeStructure st = obtain(s, o);
    st.require_saturated();
    Decomposition d = decompose(st);
    PointLocation loc;
    PointClass cls;
    if (!o.point.empty()) {
        if (!o.cycle.empty() || !o.prefix.empty()) throw InputError("give either --point or --cycle, not both");
        loc = locate_point(st, parse_point(*s.field, o.point), o.depth);
        for (auto& r : loc.reps) infer_endpoint(st, r);
    } else {
        if (o.cycle.empty()) throw InputError("pointdim needs --point or --cycle");
        std::vector<int> prefix = o.prefix.empty() ? std::vector<int>{} : parse_edges(o.prefix);
        Representation given = path_representation(st, prefix, parse_edges(o.cycle));
        std::cout << "descent: edges " << edges_str(given) << "\n";
        print_dim("  cycle dimension ", representation_dimension(st, given));
        slope_table(st, given, o);
        if (given.endpoint_level >= 0) {
            FieldElement x = descent_endpoint(st, given);
            std::cout << "the descent ends at the point " << x.str() << "\n";
            loc = locate_point(st, x, std::max(o.depth, given.depth()));
            for (auto& r : loc.reps) infer_endpoint(st, r);
        } else {
            loc.reps.push_back(given);
        }
    }
    cls = classify_truly_essential(st, d, loc);
    std::cout << "classification: " << to_string(cls) << "\n";
    std::cout << (loc.reps.size() > 1 ? "two representations" : "one representation") << "\n";
    bool all_periodic = true;
    for (const auto& r : loc.reps) all_periodic = all_periodic && r.periodic();
    for (size_t i = 0; i < loc.reps.size(); ++i) {
        const auto& r = loc.reps[i];
        std::cout << "representation " << i + 1 << ": edges " << edges_str(r);
        if (r.endpoint_level >= 0)
            std::cout << ", " << (r.endpoint_side < 0 ? "left" : "right") << " endpoint from level " << r.endpoint_level;
        std::cout << "\n";
        if (r.periodic()) print_dim("  cycle dimension ", representation_dimension(st, r));
        if (!r.periodic()) slope_table(st, r, o);
    }
    if (all_periodic) {
        PointDimension pd = local_dim_periodic(st, loc);
        if (loc.reps.size() > 1)
            std::cout << "the representation with the larger mass decides: representation " << pd.chosen + 1 << "\n";
        print_dim("local dimension ", pd.dimension);
        if (cls == PointClass::non_essential) {
            OuterBounds ob = essential_interval_bounds(st, d, o.max_block);
            const auto& b = pd.dimension.bounds;
            bool outside = b.lo > ob.hi.bounds.hi || b.hi < ob.lo.bounds.lo;
            std::cout << "essential interval lies within [" << std::setprecision(12) << ob.lo.bounds.lo << ", "
                      << ob.hi.bounds.hi << "]: " << (outside ? "isolated" : "not isolated") << "\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite type structure and local dimensions of self-similar measures"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c) {
        c->add_option("--config", o.config, "system description")->required()->check(CLI::ExistingFile);
        c->add_option("--cache", o.cache, "structure cache file, read if present and written otherwise");
        c->add_option("--max-vectors", o.max_vectors, "exploration limit on characteristic vectors")
            ->check(CLI::PositiveNumber);
        c->add_option("--max-level", o.max_level, "exploration limit on depth")->check(CLI::PositiveNumber);
    };
    auto* ex = app.add_subcommand("explore", "build the characteristic vectors");
    common(ex);
    auto* rep = app.add_subcommand("report", "dimension report");
    common(rep);
    rep->add_option("--cycle-budget", o.cycle_budget, "longest cycle searched for inner bounds")
        ->check(CLI::PositiveNumber);
    rep->add_option("--max-block", o.max_block, "longest path block for outer bounds")->check(CLI::PositiveNumber);
    rep->add_option("--json", o.json_path, "also write the JSON report here");
    rep->add_flag("--json-stdout", o.json_stdout, "print JSON instead of text");
    auto* gr = app.add_subcommand("graph", "DOT rendering of the transition diagrams");
    common(gr);
    gr->add_option("--which", o.which, "reduced or triple")->check(CLI::IsMember({"reduced", "triple"}));
    gr->add_option("--dot", o.dot_path, "output file (stdout if omitted)");
    auto* pd = app.add_subcommand("pointdim", "local dimension at a point or along a cycle");
    common(pd);
    pd->add_option("--point", o.point, "rational, or [c0, c1, ...] meaning c0 + c1 rho + ...");
    pd->add_option("--prefix", o.prefix, "comma separated child positions from the root, starting at 1");
    pd->add_option("--cycle", o.cycle, "child positions repeated forever after the prefix");
    pd->add_option("--depth", o.depth, "levels for the search and the estimate")->check(CLI::PositiveNumber);
    pd->add_option("--max-block", o.max_block, "longest path block for outer bounds")->check(CLI::PositiveNumber);
    pd->add_option("--tol", o.tol, "stability tolerance for the estimate")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }
    try {
        if (*ex) return cmd_explore(o);
        if (*rep) return cmd_report(o);
        if (*gr) return cmd_graph(o);
        return cmd_pointdim(o);
    } catch (const NotProvenFiniteType& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotFiniteType;
    } catch (const NotInAttractor& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotInAttractor;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const PathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
