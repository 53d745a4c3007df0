#pragma once

// Versioned on-disk form of a finite type structure. The structure does
// not depend on the probabilities, so a cache can be reused with any
// weights on the same maps.

#include <fstream>
#include <string>

#include <json.hpp>

#include "net_structure.hpp"

namespace ftm {

inline constexpr int kCacheVersion = 1;

namespace detail {

inline nlohmann::json to_json(const FieldElement& e) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : e.coeffs()) a.push_back(c.get_str());
    return a;
}

inline FieldElement element_from_json(const FieldPtr& f, const nlohmann::json& a) {
    poly::QPoly c;
    for (const auto& s : a) {
        Rational q(s.get<std::string>());
        q.canonicalize();
        c.push_back(q);
    }
    return FieldElement(f, c);
}

inline nlohmann::json system_signature(const IFSSystem& s) {
    nlohmann::json j;
    nlohmann::json mp = nlohmann::json::array();
    for (const auto& c : s.field->integer_minpoly()) mp.push_back(c.get_str());
    j["minpoly"] = mp;
    j["root_enclosure"] = {s.field->lo().get_str(), s.field->hi().get_str()};
    nlohmann::json t = nlohmann::json::array();
    for (const auto& d : s.translations) t.push_back(to_json(d));
    j["translations"] = t;
    return j;
}

}  // namespace detail

inline nlohmann::json structure_to_json(const FiniteTypeStructure& st) {
    using nlohmann::json;
    json j;
    j["format"] = "ftm-structure";
    j["version"] = kCacheVersion;
    j["system"] = detail::system_signature(st.ifs);
    j["saturated"] = st.saturated;
    j["limit_hit"] = st.limit_hit;
    json red = json::array();
    for (const auto& r : st.reduced) {
        json nb = json::array();
        for (const auto& v : r.neighbours) nb.push_back(detail::to_json(v));
        red.push_back({{"length", detail::to_json(r.length)}, {"neighbours", nb}});
    }
    j["reduced"] = red;
    json vec = json::array();
    for (size_t i = 0; i < st.size(); ++i) vec.push_back({st.vectors[i].reduced, st.vectors[i].sibling, st.level[i]});
    j["vectors"] = vec;
    json ex = json::array();
    for (size_t r = 0; r < st.reduced.size(); ++r) {
        if (!st.is_expanded(static_cast<int>(r))) {
            ex.push_back(nullptr);
            continue;
        }
        json ch = json::array();
        for (const auto& c : st.expansion[r]) {
            ch.push_back({{"child", c.child},
                          {"offset", detail::to_json(c.offset)},
                          {"end", detail::to_json(c.end)},
                          {"gap_before", c.gap_before},
                          {"abuts_left", c.abuts_left},
                          {"abuts_right", c.abuts_right},
                          {"rows", c.letters.rows},
                          {"cols", c.letters.cols},
                          {"letters", c.letters.letter}});
        }
        ex.push_back(ch);
    }
    j["expansion"] = ex;
    return j;
}

// Rebuild a structure for `s` from its cached form; throws if the cache
// belongs to a different system or version.
inline FiniteTypeStructure structure_from_json(const IFSSystem& s, const nlohmann::json& j) {
    if (j.value("format", "") != "ftm-structure") throw InputError("not a structure cache");
    if (j.value("version", -1) != kCacheVersion)
        throw InputError("structure cache version " + std::to_string(j.value("version", -1)) + " is not supported");
    auto sig = detail::system_signature(s);
    if (j.at("system").at("minpoly") != sig.at("minpoly") || j.at("system").at("translations") != sig.at("translations"))
        throw InputError("structure cache was built for a different system");
    FiniteTypeStructure st;
    st.ifs = s;
    for (const auto& r : j.at("reduced")) {
        ReducedVector rv{detail::element_from_json(s.field, r.at("length")), {}};
        for (const auto& v : r.at("neighbours")) rv.neighbours.push_back(detail::element_from_json(s.field, v));
        st.intern_reduced(rv);
    }
    for (const auto& v : j.at("vectors")) st.intern(v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>());
    const auto& ex = j.at("expansion");
    if (ex.size() != st.reduced.size()) throw InputError("structure cache is inconsistent");
    for (size_t r = 0; r < ex.size(); ++r) {
        if (ex[r].is_null()) continue;
        std::vector<ChildRecord> recs;
        for (const auto& c : ex[r]) {
            ChildRecord rec{c.at("child").get<int>(),
                            detail::element_from_json(s.field, c.at("offset")),
                            detail::element_from_json(s.field, c.at("end")),
                            c.at("gap_before").get<bool>(),
                            c.at("abuts_left").get<bool>(),
                            c.at("abuts_right").get<bool>(),
                            {c.at("rows").get<int>(), c.at("cols").get<int>(), c.at("letters").get<std::vector<int>>()}};
            if (rec.child < 0 || rec.child >= static_cast<int>(st.size())) throw InputError("structure cache is inconsistent");
            recs.push_back(std::move(rec));
        }
        st.expansion[r] = std::move(recs);
        st.mark_expanded(static_cast<int>(r));
    }
    st.saturated = j.at("saturated").get<bool>();
    st.limit_hit = j.at("limit_hit").get<std::string>();
    return st;
}

inline void save_structure(const FiniteTypeStructure& st, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write cache file " + path);
    out << structure_to_json(st).dump() << "\n";
}

inline FiniteTypeStructure load_structure(const IFSSystem& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read cache file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed cache file: ") + e.what());
    }
    try {
        return structure_from_json(s, j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed cache file: ") + e.what());
    }
}

}  // namespace ftm
