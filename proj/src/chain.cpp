#include "pdpair/chain.hpp"

#include <sstream>
#include <stdexcept>

#include "pdpair/snf.hpp"

namespace pdpair {

std::string HomologyGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t.get_str();
        first = false;
    }
    return os.str();
}

ChainComplexZ::ChainComplexZ(int lo, std::vector<SparseIntMatrix> boundaries) : lo_(lo) {
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        ranks_.push_back(boundaries[i].cols());
        std::size_t below = i == 0 ? 0 : ranks_[i - 1];
        if (boundaries[i].rows() != below) {
            throw std::invalid_argument("chain complex: boundary shape mismatch in degree " +
                                        std::to_string(lo + static_cast<int>(i)));
        }
    }
    boundaries_ = std::move(boundaries);
    boundaries_.emplace_back(ranks_.empty() ? 0 : ranks_.back(), 0);
}

std::size_t ChainComplexZ::rank(int p) const {
    if (p < lo_ || p > hi()) return 0;
    return ranks_[p - lo_];
}

std::size_t ChainComplexZ::total_rank() const {
    std::size_t s = 0;
    for (auto r : ranks_) s += r;
    return s;
}

const SparseIntMatrix& ChainComplexZ::boundary(int p) const {
    static const SparseIntMatrix empty;
    if (p < lo_ || p > hi() + 1) return empty;
    return boundaries_[p - lo_];
}

const std::vector<BasisTag>& ChainComplexZ::tags_in(int p) const {
    if (!has_tags()) throw std::logic_error("chain complex has no basis tags");
    static const std::vector<BasisTag> none;
    if (p < lo_ || p > hi()) return none;
    return tags[p - lo_];
}

std::optional<std::string> ChainComplexZ::defect() const {
    for (int p = lo_; p <= hi() + 1; ++p) {
        const auto& d = boundary(p);
        if (d.rows() != rank(p - 1) || d.cols() != rank(p)) {
            return "boundary shape mismatch in degree " + std::to_string(p);
        }
    }
    for (int p = lo_ + 1; p <= hi(); ++p) {
        if (!(boundary(p) * boundary(p + 1)).is_zero()) {
            return "d o d != 0 in degree " + std::to_string(p);
        }
    }
    return std::nullopt;
}

ChainComplexZ ChainComplexZ::shifted(int k) const {
    ChainComplexZ c = *this;
    c.lo_ += k;
    return c;
}

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, std::map<int, SparseIntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
    for (auto& [p, m] : components) {
        if (m.rows() != target_->rank(p) || m.cols() != source_->rank(p)) {
            throw std::invalid_argument("chain map: component shape mismatch in degree " + std::to_string(p));
        }
        if (!m.is_zero()) components_.emplace(p, std::move(m));
    }
}

ChainMap ChainMap::identity(ComplexPtr c) {
    std::map<int, SparseIntMatrix> comps;
    for (int p = c->lo(); p <= c->hi(); ++p) comps.emplace(p, SparseIntMatrix::identity(c->rank(p)));
    return ChainMap(c, c, std::move(comps));
}

ChainMap ChainMap::zero(ComplexPtr source, ComplexPtr target) { return ChainMap(source, target, {}); }

SparseIntMatrix ChainMap::component(int p) const {
    auto it = components_.find(p);
    if (it != components_.end()) return it->second;
    return SparseIntMatrix(target_->rank(p), source_->rank(p));
}

int ChainMap::lo() const {
    if (source_->empty()) return target_->lo();
    if (target_->empty()) return source_->lo();
    return std::min(source_->lo(), target_->lo());
}

int ChainMap::hi() const {
    if (source_->empty()) return target_->hi();
    if (target_->empty()) return source_->hi();
    return std::max(source_->hi(), target_->hi());
}

bool ChainMap::is_chain_map() const {
    for (int p = lo(); p <= hi() + 1; ++p) {
        if (!(target_->boundary(p) * component(p) == component(p - 1) * source_->boundary(p))) return false;
    }
    return true;
}

ChainMap ChainMap::then(const ChainMap& g) const {
    if (g.source_.get() != target_.get() && !(g.source_->lo() == target_->lo() && g.source_->hi() == target_->hi())) {
        throw std::invalid_argument("chain map composition: target/source mismatch");
    }
    std::map<int, SparseIntMatrix> comps;
    for (int p = std::min(lo(), g.lo()); p <= std::max(hi(), g.hi()); ++p) {
        comps.emplace(p, g.component(p) * component(p));
    }
    return ChainMap(source_, g.target_, std::move(comps));
}

namespace {

HomologyGroup assemble_homology(std::size_t rank_p, const std::vector<BigInt>& out_factors,
                                const std::vector<BigInt>& in_factors) {
    HomologyGroup h;
    h.free_rank = rank_p - out_factors.size() - in_factors.size();
    for (const auto& d : in_factors) {
        if (d != 1) h.torsion.push_back(d);
    }
    return h;
}

}  // namespace

HomologyGroup homology(const ChainComplexZ& c, int p) {
    std::size_t r = c.rank(p);
    if (r == 0) return {};
    return assemble_homology(r, invariant_factors(c.boundary(p)), invariant_factors(c.boundary(p + 1)));
}

std::map<int, HomologyGroup> homology_all(const ChainComplexZ& c) {
    std::map<int, HomologyGroup> out;
    if (c.empty()) return out;
    std::map<int, std::vector<BigInt>> factors;
    for (int p = c.lo(); p <= c.hi() + 1; ++p) factors[p] = invariant_factors(c.boundary(p));
    for (int p = c.lo(); p <= c.hi(); ++p) out[p] = assemble_homology(c.rank(p), factors[p], factors[p + 1]);
    return out;
}

ChainComplexZ mapping_cone(const ChainMap& f) {
    const auto& s = f.source();
    const auto& t = f.target();
    int lo = f.lo();
    int hi = f.hi() + 1;
    if (s.empty() && t.empty()) return {};
    std::vector<SparseIntMatrix> ds;
    for (int p = lo; p <= hi; ++p) {
        // rows: t_{p-1} + s_{p-2}; cols: t_p + s_{p-1}
        SparseIntMatrix dt = t.boundary(p);
        SparseIntMatrix dsm = s.boundary(p - 1).scaled(-1);
        SparseIntMatrix zero(s.rank(p - 2), t.rank(p));
        SparseIntMatrix fm = f.component(p - 1);
        auto d = block_matrix(dt, fm, zero, dsm);
        if (p == lo) d = SparseIntMatrix(0, d.cols());
        ds.push_back(std::move(d));
    }
    ChainComplexZ cone(lo, std::move(ds));
    if (auto why = cone.defect()) throw std::logic_error("mapping cone: " + *why);
    return cone;
}

QuasiIsoCertificate is_quasi_iso(const ChainMap& f, bool fail_fast) {
    QuasiIsoCertificate cert;
    auto cone = mapping_cone(f);
    cert.quasi_iso = true;
    if (cone.empty()) return cert;
    std::map<int, std::vector<BigInt>> factors;
    auto factors_of = [&](int p) -> const std::vector<BigInt>& {
        auto it = factors.find(p);
        if (it == factors.end()) it = factors.emplace(p, invariant_factors(cone.boundary(p))).first;
        return it->second;
    };
    for (int p = cone.lo(); p <= cone.hi(); ++p) {
        HomologyGroup h;
        if (cone.rank(p) > 0) h = assemble_homology(cone.rank(p), factors_of(p), factors_of(p + 1));
        cert.cone_homology[p] = h;
        if (!h.is_zero()) {
            cert.quasi_iso = false;
            if (!cert.failing_degree) cert.failing_degree = p;
            if (fail_fast) break;
        }
    }
    return cert;
}

HomologyBasis::HomologyBasis(const ChainComplexZ& c, int p) : degree_(p), boundary_(c.boundary(p)) {
    const std::size_t n = c.rank(p);
    SnfOptions o1;
    o1.want_u = false;
    o1.want_u_inverse = false;
    auto s1 = smith_normal_form(boundary_, o1);
    const std::size_t r1 = s1.rank();
    const std::size_t k = n - r1;
    std::vector<std::size_t> kcols;
    for (std::size_t j = r1; j < n; ++j) kcols.push_back(j);
    SparseIntMatrix K = s1.V.select_columns(kcols);         // n x k
    SparseIntMatrix Kinv = s1.V_inverse.block(r1, n, 0, n);  // k x n

    const SparseIntMatrix& in = c.boundary(p + 1);
    SparseIntMatrix B = Kinv * in;  // k x rank(p+1)
    SnfOptions o2;
    o2.want_v = false;
    o2.want_v_inverse = false;
    auto s2 = smith_normal_form(B, o2);
    SparseIntMatrix gens = K * s2.U_inverse;   // columns: new kernel basis as chains
    SparseIntMatrix coord = s2.U * Kinv;       // rows: coordinates in that basis

    std::vector<std::size_t> keep_rows;
    std::vector<MatrixEntry> ce;
    auto column = [&](std::size_t j) {
        IntVector v(n);
        for (const auto& e : gens.entries()) {
            if (e.col == j) v[e.row] = e.value;
        }
        return v;
    };
    for (std::size_t i = s2.rank(); i < k; ++i) {
        free_.push_back(column(i));
        keep_rows.push_back(i);
    }
    for (std::size_t i = 0; i < s2.rank(); ++i) {
        if (s2.diagonal[i] != 1) {
            torsion_.push_back(column(i));
            group_.torsion.push_back(s2.diagonal[i]);
            keep_rows.push_back(i);
        }
    }
    group_.free_rank = free_.size();
    std::vector<std::size_t> where(k, SIZE_MAX);
    for (std::size_t t = 0; t < keep_rows.size(); ++t) where[keep_rows[t]] = t;
    for (const auto& e : coord.entries()) {
        if (where[e.row] != SIZE_MAX) ce.push_back({where[e.row], e.col, e.value});
    }
    coordinates_ = SparseIntMatrix::from_triplets(keep_rows.size(), n, std::move(ce));
}

std::vector<BigInt> HomologyBasis::coordinates(const IntVector& z) const {
    if (!is_zero(boundary_.apply(z))) throw std::invalid_argument("homology coordinates: not a cycle");
    auto w = coordinates_.apply(z);
    for (std::size_t t = 0; t < group_.torsion.size(); ++t) {
        auto& x = w[free_.size() + t];
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), group_.torsion[t].get_mpz_t());
    }
    return w;
}

bool HomologyBasis::is_boundary(const IntVector& z) const {
    for (const auto& x : coordinates(z)) {
        if (x != 0) return false;
    }
    return true;
}

}  // namespace pdpair
