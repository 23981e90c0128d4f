#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdpair/chain.hpp"
#include "pdpair/complex.hpp"

namespace pdpair {

struct Letter {
    std::uint32_t generator = 0;
    int exponent = 1;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word concat(const Word& a, const Word& b);

/// Edge-path presentation of pi_1 of a connected complex. edge_words[e] is the
/// group element carried by the e-th 1-simplex (oriented from its smaller to
/// its larger vertex), written in the surviving generators.
struct GroupPresentation {
    std::size_t generator_count = 0;
    std::vector<Word> relators;
    std::vector<Word> edge_words;
    Vertex basepoint = 0;

    /// Stable 64-bit hash (hex) of generator count and relators.
    std::string hash() const;
};

/// BFS spanning tree from the basepoint (default: least vertex); generators
/// are the non-tree edges, one relator per 2-simplex. With simplify, Tietze
/// moves then remove generators that occur exactly once in some relator.
GroupPresentation presentation(const SimplicialComplex& c, std::optional<Vertex> basepoint = std::nullopt,
                               bool simplify = true);
GroupPresentation simplify_presentation(GroupPresentation p);

/// Z^n + torsion of the abelianized group.
HomologyGroup abelianization(const GroupPresentation& p);

/// Right action of the generators on the cosets 0..degree-1 (coset 0 is the
/// subgroup itself): action[g][c] = c.g
struct CosetTable {
    std::size_t degree = 0;
    std::vector<std::vector<std::uint32_t>> action;

    std::uint32_t act(std::uint32_t c, const Word& w) const;
    std::uint32_t act(std::uint32_t c, const Letter& l) const;
};

/// Coset action consistency: permutations, relators act trivially, transitive.
std::optional<std::string> table_defect(const GroupPresentation& p, const CosetTable& t);

struct CosetLimitExceeded : std::runtime_error {
    explicit CosetLimitExceeded(std::size_t limit)
        : std::runtime_error("coset enumeration exceeded " + std::to_string(limit) + " cosets"), limit(limit) {}
    std::size_t limit;
};

/// HLT coset enumeration with coincidence processing.
CosetTable todd_coxeter(const GroupPresentation& p, const std::vector<Word>& subgroup,
                        std::size_t max_cosets = 1000000);

/// Transitive coset tables of index 2..max_index, one per conjugacy class of
/// subgroups. Stops after max_results tables.
std::vector<CosetTable> low_index_subgroups(const GroupPresentation& p, std::size_t max_index,
                                            std::size_t max_results = 64);

}  // namespace pdpair
