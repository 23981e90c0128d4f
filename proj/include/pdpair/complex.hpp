#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdpair/chain.hpp"

namespace pdpair {

using Vertex = std::uint32_t;
/// Strictly increasing vertex tuple; orientation comes from the vertex order.
using Simplex = std::vector<Vertex>;

/// Simplex with vertex k removed.
Simplex face(const Simplex& s, std::size_t k);

struct Diagnostics {
    std::vector<std::string> problems;
    bool valid() const { return problems.empty(); }
};

/// Finite ordered simplicial complex. Vertices are identifiers below
/// vertex_count(); a vertex is part of the complex only if it appears as a
/// 0-simplex. Simplices of each dimension are kept in lexicographic order,
/// which fixes the chain bases.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(std::size_t vertex_count) : vertex_count_(vertex_count) {}

    /// Closes the facets under faces. Facets may be given unsorted.
    static SimplicialComplex from_facets(std::size_t vertex_count, const std::vector<Simplex>& facets);
    /// Takes the simplices as given, without closing them; for validation.
    static SimplicialComplex from_simplices_unchecked(std::size_t vertex_count, std::vector<Simplex> simplices);

    std::size_t vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    bool empty() const { return by_dim_.empty(); }
    const std::vector<Simplex>& simplices(int p) const;
    std::size_t count(int p) const { return simplices(p).size(); }
    std::size_t size() const;
    std::vector<std::size_t> f_vector() const;
    long euler_characteristic() const;

    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    /// Index (in dimension p-1) of face k of the i-th p-simplex.
    std::size_t face_index(int p, std::size_t i, std::size_t k) const;

    std::vector<Vertex> vertices() const;
    /// Maximal simplices, lexicographically sorted.
    std::vector<Simplex> facets() const;
    bool is_pure() const;
    bool is_subcomplex_of(const SimplicialComplex& other) const;

    /// Connected components (same vertex universe), ordered by least vertex.
    std::vector<SimplicialComplex> components() const;
    bool is_connected() const;

    SimplicialComplex union_with(const SimplicialComplex& other) const;
    SimplicialComplex intersection(const SimplicialComplex& other) const;
    /// Same simplices on a larger vertex universe.
    SimplicialComplex widened(std::size_t vertex_count) const;
    /// Simplices all of whose vertices satisfy keep.
    SimplicialComplex induced(const std::vector<char>& keep) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertex_count_ == b.vertex_count_ && a.by_dim_ == b.by_dim_;
    }

private:
    void build_faces();

    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::vector<std::uint32_t>> faces_;  // per dimension, count(p) * (p+1)
};

Diagnostics validate(const SimplicialComplex& c);

/// Integer boundary matrix, count(p-1) x count(p).
SparseIntMatrix boundary_matrix(const SimplicialComplex& c, int p);

struct SimplicialPair {
    SimplicialComplex total;
    SimplicialComplex sub;

    SimplicialPair() = default;
    /// Throws unless sub is a subcomplex of total.
    SimplicialPair(SimplicialComplex total, SimplicialComplex sub);
    /// (X, empty)
    explicit SimplicialPair(SimplicialComplex total);
};

struct SimplicialTriad {
    SimplicialComplex total;
    SimplicialComplex sub1;
    SimplicialComplex sub2;

    SimplicialTriad(SimplicialComplex total, SimplicialComplex sub1, SimplicialComplex sub2);
    SimplicialComplex sub_union() const { return sub1.union_with(sub2); }
    SimplicialComplex sub_intersection() const { return sub1.intersection(sub2); }
};

using ComplexRef = std::shared_ptr<const SimplicialComplex>;

struct SimplicialMap {
    ComplexRef domain;
    ComplexRef codomain;
    std::vector<Vertex> vertex_images;  // indexed by domain vertex id

    /// Sorted, duplicate-free image vertex set.
    Simplex image(const Simplex& s) const;
    bool is_simplicial() const;
    bool is_isomorphism() const;
};

/// Integer chain complex of (X, Y), degrees 0..dim X, basis = simplices of X
/// not in Y, with vertex tuples as tags.
ChainComplexZ integer_chain_complex(const SimplicialPair& pair);
std::vector<HomologyGroup> integer_homology(const SimplicialPair& pair);
std::vector<HomologyGroup> integer_homology(const SimplicialComplex& c);
/// Reduced homology of a nonempty complex.
std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& c);

}  // namespace pdpair
