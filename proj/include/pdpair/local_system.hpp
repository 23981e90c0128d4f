#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdpair/complex.hpp"
#include "pdpair/group.hpp"
#include "pdpair/io.hpp"

namespace pdpair {

/// Square integer matrix stored by rows, acting on row vectors from the right.
class SmallMatrix {
public:
    using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;

    SmallMatrix() = default;
    static SmallMatrix identity(std::size_t n);
    static SmallMatrix scalar(std::size_t n, std::int64_t c);
    /// Row c has a single 1 in column perm[c].
    static SmallMatrix permutation(const std::vector<std::uint32_t>& perm);
    static SmallMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t size() const { return rows_.size(); }
    const Row& row(std::size_t i) const { return rows_[i]; }
    std::int64_t at(std::size_t i, std::size_t j) const;
    std::vector<std::vector<std::int64_t>> dense() const;
    bool is_identity() const;

    /// x * this for a row vector x.
    std::vector<std::int64_t> apply_left(const std::vector<std::int64_t>& x) const;
    SmallMatrix operator*(const SmallMatrix& other) const;
    /// Kronecker product; index i * other.size() + j.
    SmallMatrix kron(const SmallMatrix& other) const;
    friend bool operator==(const SmallMatrix&, const SmallMatrix&) = default;

private:
    std::vector<Row> rows_;
};

/// Monodromy representation of a presented group on Z^rank: generator g acts
/// on row vectors by generators[g], words act by the product in word order.
struct LocalSystem {
    std::size_t rank = 1;
    std::vector<SmallMatrix> generators;
    std::vector<SmallMatrix> inverses;
    std::string presentation_hash;
    std::string label;

    /// Checks invertibility over Z and that every relator acts trivially.
    static LocalSystem make(const GroupPresentation& p, std::vector<SmallMatrix> generators, std::string label = {});
    static LocalSystem trivial(const GroupPresentation& p, std::size_t rank = 1);

    SmallMatrix evaluate(const Word& w) const;
    bool is_trivial() const;
};

/// Every homomorphism to {+1, -1}, as rank-1 systems, trivial first. At most
/// max_count are returned.
std::vector<LocalSystem> orientation_systems(const GroupPresentation& p, std::size_t max_count = 64);

/// Permutation representation of the coset action (rank = degree).
LocalSystem permutation_system(const GroupPresentation& p, const CosetTable& t);

/// Per-edge transport of a complex: a coefficient x at the smaller vertex of
/// edge e becomes x * transport(e) at the larger one.
class Connection {
public:
    Connection() = default;
    Connection(std::size_t rank, std::vector<SmallMatrix> forward, std::vector<SmallMatrix> backward);

    static Connection trivial(const SimplicialComplex& c, std::size_t rank = 1);
    /// The complex must be connected and p its presentation.
    static Connection from_local_system(const SimplicialComplex& c, const GroupPresentation& p,
                                        const LocalSystem& s);
    /// Assembles a connection from connections on the components of c (each
    /// part a subcomplex on the same vertex universe, covering all edges).
    static Connection merge(const SimplicialComplex& c,
                            const std::vector<std::pair<SimplicialComplex, Connection>>& parts);

    std::size_t rank() const { return rank_; }
    std::size_t edge_count() const { return forward_.size(); }
    const SmallMatrix& transport(std::size_t edge) const { return forward_[edge]; }
    const SmallMatrix& inverse_transport(std::size_t edge) const { return backward_[edge]; }

    /// Connection on a subcomplex of `on`.
    Connection restrict(const SimplicialComplex& on, const SimplicialComplex& sub) const;
    Connection tensor(const Connection& other) const;
    /// Pulls back along f (this lives on f.codomain).
    Connection pullback(const SimplicialMap& f) const;
    /// Transport around every triangle of c is the identity.
    std::optional<std::string> flatness_defect(const SimplicialComplex& c) const;

private:
    std::size_t rank_ = 1;
    std::vector<SmallMatrix> forward_, backward_;
};

Json local_system_to_json(const LocalSystem& s);
LocalSystem local_system_from_json(const Json& j, const GroupPresentation& p);
Json coset_table_to_json(const CosetTable& t);
Json presentation_to_json(const GroupPresentation& p);

}  // namespace pdpair
