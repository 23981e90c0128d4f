#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdpair/matrix.hpp"

namespace pdpair {

/// Z^free_rank plus Z/t for each t in torsion (t > 1, each dividing the next).
struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const;
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Vertex tuple labelling one basis element, used by maps that need to know
/// which simplex a generator came from.
using BasisTag = std::vector<std::uint32_t>;

/// Finitely generated free chain complex over Z living in degrees [lo, hi].
/// Degrees outside the window have rank 0.
class ChainComplexZ {
public:
    ChainComplexZ() = default;
    /// boundaries[i] is the differential out of degree lo + i; its column
    /// count is the rank in that degree.
    ChainComplexZ(int lo, std::vector<SparseIntMatrix> boundaries);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool empty() const { return ranks_.empty(); }
    std::size_t rank(int p) const;
    std::size_t total_rank() const;
    /// rank(p-1) x rank(p)
    const SparseIntMatrix& boundary(int p) const;

    /// Checks shapes and d o d = 0. Returns an explanation on failure.
    std::optional<std::string> defect() const;
    bool verify() const { return !defect().has_value(); }

    ChainComplexZ shifted(int k) const;

    /// Optional basis labels per degree (index p - lo).
    std::vector<std::vector<BasisTag>> tags;
    bool has_tags() const { return tags.size() == ranks_.size(); }
    const std::vector<BasisTag>& tags_in(int p) const;

private:
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<SparseIntMatrix> boundaries_;  // degrees lo .. hi+1
};

using ComplexPtr = std::shared_ptr<const ChainComplexZ>;

inline ComplexPtr share(ChainComplexZ c) { return std::make_shared<const ChainComplexZ>(std::move(c)); }

/// Degree-0 chain map between two complexes.
class ChainMap {
public:
    ChainMap(ComplexPtr source, ComplexPtr target, std::map<int, SparseIntMatrix> components);

    static ChainMap identity(ComplexPtr c);
    static ChainMap zero(ComplexPtr source, ComplexPtr target);

    const ChainComplexZ& source() const { return *source_; }
    const ChainComplexZ& target() const { return *target_; }
    ComplexPtr source_ptr() const { return source_; }
    ComplexPtr target_ptr() const { return target_; }

    /// rank_target(p) x rank_source(p); zero when not stored
    SparseIntMatrix component(int p) const;
    int lo() const;
    int hi() const;

    bool is_chain_map() const;
    /// g o this
    ChainMap then(const ChainMap& g) const;

private:
    ComplexPtr source_, target_;
    std::map<int, SparseIntMatrix> components_;
};

HomologyGroup homology(const ChainComplexZ& c, int p);
std::map<int, HomologyGroup> homology_all(const ChainComplexZ& c);

/// cone_p = target_p + source_{p-1}, d = [[d_t, f], [0, -d_s]].
ChainComplexZ mapping_cone(const ChainMap& f);

struct QuasiIsoCertificate {
    bool quasi_iso = false;
    std::map<int, HomologyGroup> cone_homology;
    std::optional<int> failing_degree;
};

/// Decides whether f induces isomorphisms on all homology groups by testing
/// the mapping cone for acyclicity. With fail_fast the scan stops at the first
/// degree with nonzero cone homology.
QuasiIsoCertificate is_quasi_iso(const ChainMap& f, bool fail_fast = false);

/// Explicit generators of H_p and coordinates of cycles with respect to them.
class HomologyBasis {
public:
    HomologyBasis(const ChainComplexZ& c, int p);

    int degree() const { return degree_; }
    const HomologyGroup& group() const { return group_; }
    const std::vector<IntVector>& free_generators() const { return free_; }
    const std::vector<IntVector>& torsion_generators() const { return torsion_; }

    /// Free coordinates followed by torsion coordinates (reduced mod the
    /// order). Throws if z is not a cycle.
    std::vector<BigInt> coordinates(const IntVector& z) const;
    bool is_boundary(const IntVector& z) const;

private:
    int degree_;
    HomologyGroup group_;
    std::vector<IntVector> free_, torsion_;
    SparseIntMatrix boundary_;     // d_p, for the cycle check
    SparseIntMatrix coordinates_;  // (#free + #torsion) x rank(p)
};

}  // namespace pdpair
