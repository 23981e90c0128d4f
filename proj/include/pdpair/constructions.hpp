#pragma once

#include <vector>

#include "pdpair/complex.hpp"

namespace pdpair {

/// The full n-simplex on vertices 0..n.
SimplicialComplex full_simplex(int n);
/// Boundary of the n-simplex, a triangulated (n-1)-sphere.
SimplicialComplex boundary_sphere(int n);

/// (CY, Y) with the apex as a new last vertex.
SimplicialPair cone(const SimplicialComplex& c);

/// Vertex (i, j) of a product gets id i * nb + j (dictionary order).
inline Vertex product_vertex(Vertex i, Vertex j, std::size_t nb) { return static_cast<Vertex>(i * nb + j); }

/// Shuffle triangulation of a x b.
SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b);
/// (A, B) x (C, D) = (A x C, A x D u B x C).
SimplicialPair product_pair(const SimplicialPair& a, const SimplicialPair& b);

SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b);

/// Stellar subdivision of tau, with a new last vertex at its barycentre.
/// Each complex in `also` that contains tau is subdivided the same way; all
/// are moved to the enlarged vertex universe.
SimplicialComplex stellar_subdivide(const SimplicialComplex& c, const Simplex& tau,
                                    std::vector<SimplicialComplex*> also = {});

/// Subdivides (stellarly) every simplex of total that is not in sub but has
/// all its vertices in sub, until sub is a full subcomplex. Complexes in
/// `also` follow along.
SimplicialPair make_full(const SimplicialPair& pair, std::vector<SimplicialComplex*> also = {});

struct GlueResult {
    SimplicialComplex complex;
    SimplicialPair piece1, piece2;            // the inputs after make_full
    std::vector<Vertex> inclusion1, inclusion2;  // vertex maps piece -> complex
};

/// Pushout x1.total u_{sub} x2.total. `identification` maps each vertex of
/// x1.sub to a vertex of x2.sub (entries for other vertices are ignored) and
/// must be a simplicial isomorphism of the subs.
GlueResult glue(const SimplicialPair& x1, const SimplicialPair& x2, const std::vector<Vertex>& identification);

struct DoubleResult {
    SimplicialPair pair;
    SimplicialMap swap;  // exchanges the two copies, fixes the glued part
    GlueResult parts;
};

/// (X u_Y X, empty).
DoubleResult double_pair(const SimplicialPair& pair);
/// (X u_{Y2} X, Y1 u_{Y0} Y1).
DoubleResult double_triad(const SimplicialTriad& triad);

/// Removes the interior of one top-dimensional facet: (X - int s, boundary of s).
SimplicialPair puncture(const SimplicialComplex& c, std::size_t facet_index = 0);

/// 16-vertex Poincare homology sphere, checked on first use.
const SimplicialComplex& poincare_sphere();
/// 11-vertex RP^3.
const SimplicialComplex& projective_space3();
/// 6-vertex RP^2.
SimplicialComplex projective_plane();
/// 5-vertex Moebius band with its boundary circle.
SimplicialPair moebius_band();
SimplicialComplex klein_bottle();
SimplicialComplex torus();

/// Simplicial complex stored in an embedded data file, by file name.
SimplicialComplex embedded_complex(const std::string& name);

}  // namespace pdpair
