#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pdpair/chain.hpp"
#include "pdpair/complex.hpp"
#include "pdpair/local_system.hpp"

namespace pdpair {

enum class Variance { chains, cochains };

/// Simplicial (co)chains of a pair with coefficients in a connection. The
/// basis is (cell, b) with index cell * rank + b, where the cells in degree p
/// are the p-simplices of the total complex (minus those of the subcomplex
/// when relative). Coefficients sit at the least vertex of a simplex; face 0
/// is reached by transporting along the edge from vertex 0 to vertex 1.
/// Chains are realized in degree p, cochains in degree -p.
class TwistedComplex {
public:
    TwistedComplex(std::shared_ptr<const SimplicialPair> pair, Connection connection, bool relative,
                   Variance variance = Variance::chains);
    TwistedComplex(const SimplicialPair& pair, Connection connection, bool relative,
                   Variance variance = Variance::chains);

    const SimplicialPair& pair() const { return *pair_; }
    std::shared_ptr<const SimplicialPair> pair_ptr() const { return pair_; }
    const SimplicialComplex& total() const { return pair_->total; }
    const Connection& connection() const { return connection_; }
    std::size_t rank() const { return connection_.rank(); }
    bool relative() const { return relative_; }
    Variance variance() const { return variance_; }
    int dimension() const { return total().dimension(); }

    std::size_t cells(int p) const;
    /// Simplex index (in total) of a cell.
    std::size_t simplex(int p, std::size_t cell) const { return cells_[p][cell]; }
    /// Cell of a simplex, if it is one.
    std::optional<std::size_t> cell(int p, std::size_t simplex) const;

    const ChainComplexZ& realized() const { return *realized_; }
    ComplexPtr realized_ptr() const { return realized_; }
    /// Realized degree of (co)homological degree p.
    int realized_degree(int p) const { return variance_ == Variance::chains ? p : -p; }
    HomologyGroup homology(int p) const;

private:
    std::shared_ptr<const SimplicialPair> pair_;
    Connection connection_;
    bool relative_;
    Variance variance_;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<std::vector<long>> cell_of_;
    ComplexPtr realized_;
};

/// Index of the edge [s[i], s[j]] in c.
std::size_t edge_index(const SimplicialComplex& c, const Simplex& s, std::size_t i, std::size_t j);

/// Re-expresses a vector of `from` in the basis of `to` (same total complex
/// and rank); cells missing from `to` are dropped, missing from `from` are 0.
IntVector transfer_basis(const TwistedComplex& from, const TwistedComplex& to, int p, const IntVector& v);

/// z cap -, as a chain map from the cochains of `cochains` (cochain degree m
/// placed in degree n - m, with sign (-1)^(m(m+1)/2)) to the chains of the
/// same pair with coefficients z_space.connection() (x) cochains.connection(),
/// relative or absolute as requested. Cap follows front-face evaluation:
/// sigma cap phi = phi(v0..vm) transported to vm, times (vm..vn).
ChainMap cap_map(const TwistedComplex& z_space, const IntVector& z, int n, const TwistedComplex& cochains,
                 bool target_relative);

/// Plain chain-level cap sigma cap phi without regrading signs.
IntVector cap_chain(const TwistedComplex& chains, int n, const IntVector& z, const TwistedComplex& cochains,
                    int m, const IntVector& phi, const TwistedComplex& target);

/// (-) cap u for a cocycle u of degree k: chains of `chains` in degree k + p
/// go to degree p of `target` (coefficients chains (x) u), sign (-1)^(kp).
ChainMap thom_cap_map(const TwistedComplex& chains, const TwistedComplex& u_space, const IntVector& u, int k,
                      const TwistedComplex& target);

/// Cup product of cochains; the value on (v0..v_{p+q}) is
/// a(v0..vp) (x) b(vp..v_{p+q}) transported back to v0.
IntVector cup_chain(const TwistedComplex& a_space, int p, const IntVector& a, const TwistedComplex& b_space, int q,
                    const IntVector& b, const TwistedComplex& target);

/// Connection on a shuffle product built by `product`: the transport along
/// an edge is the Kronecker product of the factor transports.
Connection product_connection(const SimplicialComplex& a, const Connection& ca, const SimplicialComplex& b,
                              const Connection& cb, const SimplicialComplex& product);

/// Staircase simplices of the shuffle triangulation of sigma x tau with
/// their shuffle signs, as (product simplex, sign).
std::vector<std::pair<Simplex, int>> shuffle_terms(const Simplex& sigma, const Simplex& tau, std::size_t nb);

/// Chain-level cross product into the chains of the product.
IntVector cross_chain(const TwistedComplex& a_space, int p, const IntVector& a, const TwistedComplex& b_space,
                      int q, const IntVector& b, const TwistedComplex& target);

/// Cochain cross product pr1^* a cup pr2^* b.
IntVector cross_cochain(const TwistedComplex& a_space, int p, const IntVector& a, const TwistedComplex& b_space,
                        int q, const IntVector& b, const TwistedComplex& target);

/// Normalized ordered chains: vertex words spanning a simplex with no letter
/// repeated twice in a row, in degrees 0..dim + 1 (homology is correct up to
/// dim). Tags hold the words.
ChainComplexZ ordered_chain_complex(const SimplicialComplex& c);

/// Vertex reversal with sign (-1)^(p(p+1)/2), on a tagged complex produced by
/// integer_chain_complex or ordered_chain_complex.
ChainMap theta_map(ComplexPtr c);

/// Class files: {"degree": n, "coeffs": [[simplex, module index, value], ...]}.
struct CycleClass {
    int degree = 0;
    IntVector coeffs;
};
Json cycle_to_json(const TwistedComplex& space, const CycleClass& z);
CycleClass cycle_from_json(const TwistedComplex& space, const Json& j);

}  // namespace pdpair
