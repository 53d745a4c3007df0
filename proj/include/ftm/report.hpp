#pragma once

// Everything the command line tool reports about a system, as one value
// with JSON and text renderings.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimension.hpp"
#include "dot.hpp"

namespace ftm {

inline constexpr int kReportSchemaVersion = 1;

struct ReportOptions {
    int cycle_budget = 8;
    int max_block = 6;
};

struct DimensionReport {
    size_t vectors = 0, reduced_vectors = 0;
    int depth = 0;  // deepest level at which a new vector appeared
    Decomposition decomposition;
    HausdorffResult hausdorff;
    PisotCheck pisot;
    bool has_measure = false;
    bool positive_row = false;
    std::optional<OuterBounds> outer;
    std::optional<InnerBounds> inner;
    std::optional<IsolationScan> isolation;
    std::optional<ColumnSumCheck> column_sums;
    bool hausdorff_in_outer = false;
    bool inner_within_outer = false;
    // filled when the local dimensions are known to take only these values
    std::vector<DimValue> dimension_set;
};

inline DimensionReport build_report(const FiniteTypeStructure& st, const ReportOptions& opt = {}) {
    st.require_saturated();
    DimensionReport r;
    r.vectors = st.size();
    r.reduced_vectors = st.reduced.size();
    for (int l : st.level) r.depth = std::max(r.depth, l);
    r.decomposition = decompose(st);
    const auto& d = r.decomposition;
    r.hausdorff = hausdorff_dimension(st, d);
    r.pisot = pisot_check(*st.ifs.field);
    r.positive_row = positive_row_check(st, d);
    r.has_measure = st.ifs.has_probabilities();
    if (!r.has_measure) return r;
    r.outer = essential_interval_bounds(st, d, opt.max_block);
    r.inner = essential_inner_bounds(st, d, opt.cycle_budget);
    r.isolation = isolated_point_scan(st, *r.outer);
    r.column_sums = equal_column_sum_check(st, d, r.hausdorff);
    const auto& o = *r.outer;
    const auto& s = r.hausdorff.dimension.bounds;
    r.hausdorff_in_outer = s.hi >= o.lo.bounds.lo && s.lo <= o.hi.bounds.hi;
    r.inner_within_outer = !r.inner->found || (r.inner->lo.bounds.hi >= o.lo.bounds.lo && r.inner->hi.bounds.lo <= o.hi.bounds.hi);
    if (o.pmax == o.pmin && nonessential_only_at_ends(st, d)) {
        std::vector<DimValue> vals{o.lo, r.isolation->at0.dimension, r.isolation->at1.dimension};
        for (const auto& v : vals) {
            bool dup = false;
            for (const auto& w : r.dimension_set)
                dup = dup || (v.exact && w.exact ? *v.exact == *w.exact
                                                  : v.bounds.lo <= w.bounds.hi && w.bounds.lo <= v.bounds.hi);
            if (!dup) r.dimension_set.push_back(v);
        }
        std::sort(r.dimension_set.begin(), r.dimension_set.end(),
                  [](const DimValue& a, const DimValue& b) { return a.value < b.value; });
    }
    return r;
}

inline nlohmann::json to_json(const DimValue& v) {
    return {{"value", v.value},
            {"lo", v.bounds.lo},
            {"hi", v.bounds.hi},
            {"exact", v.exact ? nlohmann::json(v.exact->get_str()) : nlohmann::json(nullptr)},
            {"form", v.form}};
}

inline nlohmann::json to_json(const SpectralResult& s) {
    return {{"value", s.value},
            {"lo", s.lo.get_str()},
            {"hi", s.hi.get_str()},
            {"exact", s.exact ? nlohmann::json(s.exact->get_str()) : nlohmann::json(nullptr)},
            {"form", s.exact_form}};
}

inline nlohmann::json report_to_json(const FiniteTypeStructure& st, const DimensionReport& r) {
    using nlohmann::json;
    json j;
    j["schema_version"] = kReportSchemaVersion;
    json sys;
    sys["family"] = st.ifs.family;
    json mp = json::array();
    for (const auto& c : st.ifs.field->integer_minpoly()) mp.push_back(c.get_str());
    sys["minpoly"] = mp;
    sys["rho"] = st.ifs.field->approx();
    json tr = json::array();
    for (const auto& t : st.ifs.translations) tr.push_back(t.str());
    sys["translations"] = tr;
    json pr = json::array();
    for (const auto& p : st.ifs.probabilities) pr.push_back(p.get_str());
    sys["probabilities"] = pr;
    j["system"] = sys;
    j["structure"] = {{"vectors", r.vectors}, {"reduced_vectors", r.reduced_vectors}, {"depth", r.depth}};
    const auto& d = r.decomposition;
    json loops = json::array();
    for (int c : d.loop_classes) loops.push_back(d.components[c]);
    json ess_red = json::array();
    for (int x : d.essential_reduced) ess_red.push_back(x + 1);
    j["loop_classes"] = {{"count", d.loop_classes.size()},
                         {"classes", loops},
                         {"essential", d.essential_class()},
                         {"essential_reduced", ess_red}};
    j["hausdorff"] = {{"dimension", to_json(r.hausdorff.dimension)}, {"spectral_radius", to_json(r.hausdorff.spectral)}};
    j["pisot"] = {{"algebraic_integer", r.pisot.algebraic_integer},
                  {"pisot", r.pisot.pisot},
                  {"borderline", r.pisot.borderline},
                  {"largest_conjugate", r.pisot.largest_conjugate}};
    j["positive_row_property"] = r.positive_row;
    if (!r.has_measure) return j;
    const auto& o = *r.outer;
    j["outer_bounds"] = {{"lo", to_json(o.lo)},
                         {"hi", to_json(o.hi)},
                         {"max_column_sum", o.pmax.get_str()},
                         {"min_column_sum", o.pmin.get_str()},
                         {"block_lo", o.block_lo},
                         {"block_hi", o.block_hi}};
    const auto& in = *r.inner;
    json inner = {{"found", in.found},
                  {"cycles", in.cycles},
                  {"truly_essential_cycles", in.truly_essential},
                  {"positive_cycles", in.positive},
                  {"positive_only", in.used_positive},
                  {"truncated", in.truncated}};
    if (in.found) {
        inner["lo"] = to_json(in.lo);
        inner["hi"] = to_json(in.hi);
        inner["lo_cycle"] = {{"start", in.lo_witness.start}, {"edges", in.lo_witness.edges}};
        inner["hi_cycle"] = {{"start", in.hi_witness.start}, {"edges", in.hi_witness.edges}};
    }
    j["inner_bounds"] = inner;
    const auto& iso = *r.isolation;
    j["isolated_points"] = {{"at_0", {{"dimension", to_json(iso.at0.dimension)}, {"isolated", iso.at0.isolated}}},
                            {"at_1", {{"dimension", to_json(iso.at1.dimension)}, {"isolated", iso.at1.isolated}}},
                            {"first_weight_below_min_column_sum", iso.p0_below_pmin},
                            {"last_weight_below_min_column_sum", iso.pm_below_pmin}};
    const auto& cs = *r.column_sums;
    json csj = {{"equal", cs.equal}};
    if (cs.equal) {
        csj["value"] = cs.value.get_str();
        csj["dimension"] = to_json(cs.dimension);
        csj["matches_hausdorff"] = cs.matches_hausdorff;
    }
    j["equal_column_sums"] = csj;
    j["checks"] = {{"hausdorff_in_outer_interval", r.hausdorff_in_outer}, {"inner_within_outer", r.inner_within_outer}};
    json set = json::array();
    for (const auto& v : r.dimension_set) set.push_back(to_json(v));
    j["local_dimension_set"] = r.dimension_set.empty() ? json(nullptr) : set;
    return j;
}

inline std::string format_dim(const DimValue& v) {
    std::ostringstream os;
    os.precision(12);
    os << v.value;
    if (v.exact) os << " (exactly " << v.exact->get_str() << ")";
    os.precision(17);
    os << "  in [" << v.bounds.lo << ", " << v.bounds.hi << "]  = " << v.form;
    return os.str();
}

inline std::string report_to_text(const FiniteTypeStructure& st, const DimensionReport& r) {
    std::ostringstream os;
    const auto& d = r.decomposition;
    os << "characteristic vectors: " << r.vectors << " (" << r.reduced_vectors << " reduced), deepest new level "
       << r.depth << "\n";
    os << "loop classes: " << d.loop_classes.size() << ", essential class size " << d.essential_class().size()
       << ", essential reduced vectors:";
    for (int x : d.essential_reduced) os << " " << x + 1;
    os << "\n";
    os << "hausdorff dimension: " << format_dim(r.hausdorff.dimension) << "\n";
    os << "1/rho is " << (r.pisot.pisot ? "" : "not ") << "a Pisot number"
       << (r.pisot.borderline ? " (conjugate on the unit circle)" : "") << "\n";
    os << "positive row property: " << (r.positive_row ? "yes" : "no") << "\n";
    if (!r.has_measure) return os.str();
    const auto& o = *r.outer;
    os << "essential local dimensions within:\n  lo " << format_dim(o.lo) << "\n  hi " << format_dim(o.hi) << "\n";
    const auto& in = *r.inner;
    if (in.found) {
        os << "attained at essential periodic points (" << in.truly_essential << " cycles"
           << (in.used_positive ? ", positive products" : "") << "):\n  lo " << format_dim(in.lo) << "\n  hi "
           << format_dim(in.hi) << "\n";
    }
    const auto& iso = *r.isolation;
    os << "local dimension at 0: " << format_dim(iso.at0.dimension) << (iso.at0.isolated ? "  [isolated]" : "")
       << "\n";
    os << "local dimension at 1: " << format_dim(iso.at1.dimension) << (iso.at1.isolated ? "  [isolated]" : "")
       << "\n";
    if (r.column_sums->equal)
        os << "all essential column sums equal " << r.column_sums->value.get_str()
           << (r.column_sums->matches_hausdorff ? ", which is rho^s" : ", which is NOT rho^s") << "\n";
    if (!r.dimension_set.empty()) {
        os << "set of local dimensions:";
        for (const auto& v : r.dimension_set) os << " " << v.form << " ~ " << v.value;
        os << "\n";
    }
    os << "hausdorff dimension inside the essential interval: " << (r.hausdorff_in_outer ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace ftm
