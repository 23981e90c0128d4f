#include "pdpair/io.hpp"

#include <fstream>
#include <sstream>

namespace pdpair {

namespace {

std::vector<Simplex> facets_from(const Json& j, const char* key) {
    std::vector<Simplex> out;
    if (!j.contains(key)) return out;
    const auto& list = j.at(key);
    if (!list.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    for (const auto& f : list) {
        if (!f.is_array() || f.empty()) throw ParseError(std::string("\"") + key + "\" entries must be nonempty arrays");
        Simplex s;
        for (const auto& v : f) {
            if (!v.is_number_unsigned()) throw ParseError(std::string("\"") + key + "\": vertex ids must be nonnegative integers");
            s.push_back(v.get<Vertex>());
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::size_t vertex_count_from(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.at("vertices").is_number_unsigned()) {
        throw ParseError("complex JSON needs a nonnegative integer \"vertices\"");
    }
    return j.at("vertices").get<std::size_t>();
}

SimplicialComplex build(std::size_t n, const std::vector<Simplex>& facets) {
    try {
        return SimplicialComplex::from_facets(n, facets);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Json facets_json(const SimplicialComplex& c) {
    Json arr = Json::array();
    for (const auto& f : c.facets()) arr.push_back(f);
    return arr;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col), line, col);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

SimplicialComplex complex_from_json(const Json& j) { return build(vertex_count_from(j), facets_from(j, "facets")); }

Json complex_to_json(const SimplicialComplex& c) {
    Json j;
    j["vertices"] = c.vertex_count();
    j["facets"] = facets_json(c);
    return j;
}

SimplicialPair pair_from_json(const Json& j) {
    std::size_t n = vertex_count_from(j);
    auto total = build(n, facets_from(j, "facets"));
    auto sub = build(n, facets_from(j, "sub_facets"));
    if (!sub.is_subcomplex_of(total)) throw ParseError("\"sub_facets\" do not span a subcomplex of \"facets\"");
    return SimplicialPair(std::move(total), std::move(sub));
}

Json pair_to_json(const SimplicialPair& p) {
    Json j = complex_to_json(p.total);
    j["sub_facets"] = facets_json(p.sub);
    return j;
}

SimplicialTriad triad_from_json(const Json& j) {
    std::size_t n = vertex_count_from(j);
    auto total = build(n, facets_from(j, "facets"));
    auto s1 = build(n, facets_from(j, "sub1_facets"));
    auto s2 = build(n, facets_from(j, "sub2_facets"));
    if (!s1.is_subcomplex_of(total) || !s2.is_subcomplex_of(total)) {
        throw ParseError("triad pieces do not span subcomplexes of \"facets\"");
    }
    return SimplicialTriad(std::move(total), std::move(s1), std::move(s2));
}

Json triad_to_json(const SimplicialTriad& t) {
    Json j = complex_to_json(t.total);
    j["sub1_facets"] = facets_json(t.sub1);
    j["sub2_facets"] = facets_json(t.sub2);
    return j;
}

Json homology_to_json(const HomologyGroup& h) {
    Json j;
    j["rank"] = h.free_rank;
    j["torsion"] = Json::array();
    for (const auto& t : h.torsion) {
        if (t.fits_slong_p()) {
            j["torsion"].push_back(t.get_si());
        } else {
            j["torsion"].push_back(t.get_str());
        }
    }
    return j;
}

HomologyGroup homology_from_json(const Json& j) {
    HomologyGroup h;
    h.free_rank = j.at("rank").get<std::size_t>();
    for (const auto& t : j.at("torsion")) {
        h.torsion.push_back(t.is_string() ? BigInt(t.get<std::string>()) : BigInt(t.get<long>()));
    }
    return h;
}

}  // namespace pdpair
