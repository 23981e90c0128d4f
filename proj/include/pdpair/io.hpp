#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pdpair/chain.hpp"
#include "pdpair/complex.hpp"

namespace pdpair {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(what), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

/// {"vertices": N, "facets": [[v, ...], ...]}
SimplicialComplex complex_from_json(const Json& j);
/// Canonical form: facets sorted lexicographically.
Json complex_to_json(const SimplicialComplex& c);

/// Complex format plus "sub_facets".
SimplicialPair pair_from_json(const Json& j);
Json pair_to_json(const SimplicialPair& p);

/// Complex format plus "sub1_facets" and "sub2_facets".
SimplicialTriad triad_from_json(const Json& j);
Json triad_to_json(const SimplicialTriad& t);

/// {"rank": n, "torsion": [d1, ...]}
Json homology_to_json(const HomologyGroup& h);
HomologyGroup homology_from_json(const Json& j);

}  // namespace pdpair
