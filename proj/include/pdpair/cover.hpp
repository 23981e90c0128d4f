#pragma once

#include <vector>

#include "pdpair/complex.hpp"
#include "pdpair/group.hpp"
#include "pdpair/twisted.hpp"

namespace pdpair {

/// Finite cover of a connected pair. Cover vertex v * sheets + s lies over
/// base vertex v on sheet s; crossing base edge e from its smaller to its
/// larger vertex moves sheet s to sheet edge_permutations[e][s].
struct CoverPair {
    SimplicialPair base;
    SimplicialPair total;
    std::size_t sheets = 1;
    SimplicialMap projection;
    std::vector<std::vector<std::uint32_t>> edge_permutations;
};

/// p must be the presentation of pair.total and t a coset table for it.
CoverPair build_cover(const SimplicialPair& pair, const GroupPresentation& p, const CosetTable& t);

/// Sends each cell of the base (with coefficients in `base`) to the sum of
/// its lifts in `cover_space`, whose connection must be the pullback.
ChainMap transfer_chain(const CoverPair& cover, const TwistedComplex& base, const TwistedComplex& cover_space);

/// Projection of cover chains onto base chains (coefficients pulled back).
ChainMap projection_chain(const CoverPair& cover, const TwistedComplex& cover_space, const TwistedComplex& base);

}  // namespace pdpair
