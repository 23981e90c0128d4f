#include "pdpair/local_system.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "detail/int_ops.hpp"
#include "pdpair/snf.hpp"

namespace pdpair {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    try {
        return detail::bounded(detail::add(a, b));
    } catch (const detail::Overflow&) {
        throw std::overflow_error("local system: matrix entries overflow");
    }
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    try {
        return detail::bounded(detail::mul(a, b));
    } catch (const detail::Overflow&) {
        throw std::overflow_error("local system: matrix entries overflow");
    }
}

SparseIntMatrix to_sparse(const SmallMatrix& m) {
    std::vector<MatrixEntry> e;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (auto [j, v] : m.row(i)) e.push_back({i, j, BigInt(static_cast<long>(v))});
    }
    return SparseIntMatrix::from_triplets(m.size(), m.size(), std::move(e));
}

}  // namespace

SmallMatrix SmallMatrix::identity(std::size_t n) { return scalar(n, 1); }

SmallMatrix SmallMatrix::scalar(std::size_t n, std::int64_t c) {
    SmallMatrix m;
    m.rows_.resize(n);
    if (c != 0) {
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({static_cast<std::uint32_t>(i), c});
    }
    return m;
}

SmallMatrix SmallMatrix::permutation(const std::vector<std::uint32_t>& perm) {
    SmallMatrix m;
    m.rows_.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] >= perm.size()) throw std::invalid_argument("permutation: image out of range");
        m.rows_[i].push_back({perm[i], 1});
    }
    return m;
}

SmallMatrix SmallMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
    SmallMatrix m;
    m.rows_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix must be square");
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] != 0) m.rows_[i].push_back({static_cast<std::uint32_t>(j), rows[i][j]});
        }
    }
    return m;
}

std::int64_t SmallMatrix::at(std::size_t i, std::size_t j) const {
    for (auto [c, v] : rows_[i]) {
        if (c == j) return v;
    }
    return 0;
}

std::vector<std::vector<std::int64_t>> SmallMatrix::dense() const {
    std::vector<std::vector<std::int64_t>> d(size(), std::vector<std::int64_t>(size(), 0));
    for (std::size_t i = 0; i < size(); ++i) {
        for (auto [j, v] : rows_[i]) d[i][j] = v;
    }
    return d;
}

bool SmallMatrix::is_identity() const { return *this == identity(size()); }

std::vector<std::int64_t> SmallMatrix::apply_left(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) {
        if (x[i] == 0) continue;
        for (auto [j, v] : rows_[i]) y[j] = checked_add(y[j], checked_mul(x[i], v));
    }
    return y;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& other) const {
    if (size() != other.size()) throw std::invalid_argument("matrix size mismatch");
    SmallMatrix m;
    m.rows_.resize(size());
    std::map<std::uint32_t, std::int64_t> acc;
    for (std::size_t i = 0; i < size(); ++i) {
        acc.clear();
        for (auto [k, a] : rows_[i]) {
            for (auto [j, b] : other.rows_[k]) acc[j] = checked_add(acc[j], checked_mul(a, b));
        }
        for (auto [j, v] : acc) {
            if (v != 0) m.rows_[i].push_back({j, v});
        }
    }
    return m;
}

SmallMatrix SmallMatrix::kron(const SmallMatrix& other) const {
    const std::size_t n = other.size();
    SmallMatrix m;
    m.rows_.resize(size() * n);
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            auto& row = m.rows_[i * n + k];
            for (auto [j, a] : rows_[i]) {
                for (auto [l, b] : other.rows_[k]) {
                    row.push_back({static_cast<std::uint32_t>(j * n + l), checked_mul(a, b)});
                }
            }
        }
    }
    return m;
}

LocalSystem LocalSystem::make(const GroupPresentation& p, std::vector<SmallMatrix> generators, std::string label) {
    if (generators.size() != p.generator_count) throw std::invalid_argument("local system: wrong number of generators");
    LocalSystem s;
    s.rank = generators.empty() ? 1 : generators.front().size();
    s.presentation_hash = p.hash();
    s.label = std::move(label);
    for (const auto& g : generators) {
        if (g.size() != s.rank) throw std::invalid_argument("local system: generator matrices differ in size");
        auto a = to_sparse(g);
        BigInt det = determinant(a);
        if (det != 1 && det != -1) throw std::invalid_argument("local system: generator matrix not invertible over Z");
        std::vector<std::vector<std::int64_t>> inv(s.rank, std::vector<std::int64_t>(s.rank, 0));
        // columns of the inverse solve a x = e_j
        for (std::size_t j = 0; j < s.rank; ++j) {
            IntVector e(s.rank, BigInt(0));
            e[j] = 1;
            auto x = solve_integer(a, e);
            if (!x) throw std::logic_error("local system: unimodular matrix without inverse");
            for (std::size_t i = 0; i < s.rank; ++i) {
                if (!fits_int64((*x)[i])) throw std::overflow_error("local system: inverse entries overflow");
                inv[i][j] = to_int64((*x)[i]);
            }
        }
        s.inverses.push_back(SmallMatrix::from_dense(inv));
    }
    s.generators = std::move(generators);
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        if (!s.evaluate(p.relators[i]).is_identity()) {
            throw std::invalid_argument("local system: relator " + std::to_string(i) + " acts nontrivially");
        }
    }
    return s;
}

LocalSystem LocalSystem::trivial(const GroupPresentation& p, std::size_t rank) {
    LocalSystem s;
    s.rank = rank;
    s.presentation_hash = p.hash();
    s.label = "trivial";
    s.generators.assign(p.generator_count, SmallMatrix::identity(rank));
    s.inverses = s.generators;
    return s;
}

SmallMatrix LocalSystem::evaluate(const Word& w) const {
    SmallMatrix m = SmallMatrix::identity(rank);
    for (const auto& l : w) m = m * (l.exponent > 0 ? generators[l.generator] : inverses[l.generator]);
    return m;
}

bool LocalSystem::is_trivial() const {
    return std::all_of(generators.begin(), generators.end(), [](const SmallMatrix& m) { return m.is_identity(); });
}

std::vector<LocalSystem> orientation_systems(const GroupPresentation& p, std::size_t max_count) {
    const std::size_t n = p.generator_count;
    // Row-reduce the exponent sums mod 2 and read off a nullspace basis.
    std::vector<std::vector<char>> rows;
    for (const auto& r : p.relators) {
        std::vector<char> row(n, 0);
        for (const auto& l : r) row[l.generator] ^= 1;
        rows.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    std::vector<char> is_pivot(n, 0);
    for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
        std::size_t r = rank;
        while (r < rows.size() && !rows[r][c]) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[r], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && rows[i][c]) {
                for (std::size_t k = 0; k < n; ++k) rows[i][k] ^= rows[rank][k];
            }
        }
        pivot_col.push_back(static_cast<int>(c));
        is_pivot[c] = 1;
        ++rank;
    }
    std::vector<std::vector<char>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<char> v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) {
            if (rows[i][f]) v[pivot_col[i]] = 1;
        }
        basis.push_back(std::move(v));
    }
    std::vector<LocalSystem> out;
    const std::size_t total = basis.size() >= 63 ? SIZE_MAX : (std::size_t(1) << basis.size());
    for (std::size_t mask = 0; mask < total && out.size() < max_count; ++mask) {
        std::vector<char> chi(n, 0);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (mask >> b & 1) {
                for (std::size_t k = 0; k < n; ++k) chi[k] ^= basis[b][k];
            }
        }
        std::vector<SmallMatrix> gens;
        std::string label = mask == 0 ? "trivial" : "sign:";
        for (std::size_t k = 0; k < n; ++k) {
            gens.push_back(SmallMatrix::scalar(1, chi[k] ? -1 : 1));
            if (mask != 0) label += chi[k] ? '1' : '0';
        }
        out.push_back(LocalSystem::make(p, std::move(gens), label));
    }
    return out;
}

LocalSystem permutation_system(const GroupPresentation& p, const CosetTable& t) {
    if (auto why = table_defect(p, t)) throw std::invalid_argument("permutation system: " + *why);
    std::vector<SmallMatrix> gens;
    for (const auto& a : t.action) gens.push_back(SmallMatrix::permutation(a));
    if (t.degree == 1) return LocalSystem::trivial(p);
    return LocalSystem::make(p, std::move(gens), "permutation:" + std::to_string(t.degree));
}

Connection::Connection(std::size_t rank, std::vector<SmallMatrix> forward, std::vector<SmallMatrix> backward)
    : rank_(rank), forward_(std::move(forward)), backward_(std::move(backward)) {
    if (forward_.size() != backward_.size()) throw std::invalid_argument("connection: transport lists differ");
}

Connection Connection::trivial(const SimplicialComplex& c, std::size_t rank) {
    std::vector<SmallMatrix> id(c.count(1), SmallMatrix::identity(rank));
    return Connection(rank, id, id);
}

Connection Connection::from_local_system(const SimplicialComplex& c, const GroupPresentation& p,
                                         const LocalSystem& s) {
    if (!s.presentation_hash.empty() && s.presentation_hash != p.hash()) {
        throw std::invalid_argument("connection: local system belongs to a different presentation");
    }
    if (p.edge_words.size() != c.count(1)) throw std::invalid_argument("connection: presentation does not match complex");
    std::vector<SmallMatrix> fwd, bwd;
    for (const auto& w : p.edge_words) {
        fwd.push_back(s.evaluate(w));
        bwd.push_back(s.evaluate(inverse(w)));
    }
    return Connection(s.rank, std::move(fwd), std::move(bwd));
}

Connection Connection::merge(const SimplicialComplex& c,
                             const std::vector<std::pair<SimplicialComplex, Connection>>& parts) {
    if (parts.empty()) return trivial(c);
    const std::size_t rank = parts.front().second.rank();
    std::vector<SmallMatrix> fwd(c.count(1)), bwd(c.count(1));
    std::vector<char> seen(c.count(1), 0);
    for (const auto& [piece, conn] : parts) {
        if (conn.rank() != rank) throw std::invalid_argument("connection merge: ranks differ");
        for (std::size_t e = 0; e < piece.count(1); ++e) {
            auto i = c.index_of(piece.simplices(1)[e]);
            if (!i) throw std::invalid_argument("connection merge: piece is not a subcomplex");
            fwd[*i] = conn.transport(e);
            bwd[*i] = conn.inverse_transport(e);
            seen[*i] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw std::invalid_argument("connection merge: pieces do not cover every edge");
    }
    return Connection(rank, std::move(fwd), std::move(bwd));
}

Connection Connection::restrict(const SimplicialComplex& on, const SimplicialComplex& sub) const {
    std::vector<SmallMatrix> fwd, bwd;
    for (const auto& e : sub.simplices(1)) {
        auto i = on.index_of(e);
        if (!i) throw std::invalid_argument("connection restrict: not a subcomplex");
        fwd.push_back(forward_[*i]);
        bwd.push_back(backward_[*i]);
    }
    return Connection(rank_, std::move(fwd), std::move(bwd));
}

Connection Connection::tensor(const Connection& other) const {
    if (edge_count() != other.edge_count()) throw std::invalid_argument("connection tensor: different complexes");
    std::vector<SmallMatrix> fwd, bwd;
    for (std::size_t e = 0; e < edge_count(); ++e) {
        fwd.push_back(forward_[e].kron(other.forward_[e]));
        bwd.push_back(backward_[e].kron(other.backward_[e]));
    }
    return Connection(rank_ * other.rank_, std::move(fwd), std::move(bwd));
}

Connection Connection::pullback(const SimplicialMap& f) const {
    std::vector<SmallMatrix> fwd, bwd;
    for (const auto& e : f.domain->simplices(1)) {
        Vertex a = f.vertex_images[e[0]], b = f.vertex_images[e[1]];
        if (a == b) {
            fwd.push_back(SmallMatrix::identity(rank_));
            bwd.push_back(SmallMatrix::identity(rank_));
            continue;
        }
        auto i = f.codomain->index_of({std::min(a, b), std::max(a, b)});
        if (!i) throw std::invalid_argument("connection pullback: map is not simplicial");
        // an edge whose order is reversed by f transports backwards
        fwd.push_back(a < b ? forward_[*i] : backward_[*i]);
        bwd.push_back(a < b ? backward_[*i] : forward_[*i]);
    }
    return Connection(rank_, std::move(fwd), std::move(bwd));
}

std::optional<std::string> Connection::flatness_defect(const SimplicialComplex& c) const {
    if (c.count(1) != edge_count()) return "edge count mismatch";
    for (std::size_t e = 0; e < edge_count(); ++e) {
        if (!(forward_[e] * backward_[e]).is_identity()) return "transport of edge " + std::to_string(e) + " not inverted";
    }
    for (std::size_t t = 0; t < c.count(2); ++t) {
        auto ab = c.face_index(2, t, 2), bc = c.face_index(2, t, 0), ac = c.face_index(2, t, 1);
        if (!(forward_[ab] * forward_[bc] == forward_[ac])) return "holonomy around triangle " + std::to_string(t);
    }
    return std::nullopt;
}

Json local_system_to_json(const LocalSystem& s) {
    Json gens = Json::array();
    for (const auto& g : s.generators) gens.push_back(g.dense());
    return Json{{"rank", s.rank}, {"generators", gens}, {"presentation_hash", s.presentation_hash}};
}

LocalSystem local_system_from_json(const Json& j, const GroupPresentation& p) {
    try {
        auto rank = j.at("rank").get<std::size_t>();
        std::string hash = j.value("presentation_hash", std::string{});
        if (!hash.empty() && hash != p.hash()) {
            throw std::invalid_argument("local system: presentation hash " + hash + " does not match " + p.hash());
        }
        std::vector<SmallMatrix> gens;
        for (const auto& g : j.at("generators")) {
            auto m = SmallMatrix::from_dense(g.get<std::vector<std::vector<std::int64_t>>>());
            if (m.size() != rank) throw std::invalid_argument("local system: generator size differs from rank");
            gens.push_back(std::move(m));
        }
        if (p.generator_count == 0) return LocalSystem::trivial(p, rank);
        return LocalSystem::make(p, std::move(gens), "file");
    } catch (const Json::exception& e) {
        throw ParseError(std::string("local system: ") + e.what());
    }
}

Json coset_table_to_json(const CosetTable& t) {
    return Json{{"degree", t.degree}, {"generators", t.action}};
}

Json presentation_to_json(const GroupPresentation& p) {
    auto words = [](const std::vector<Word>& ws) {
        Json out = Json::array();
        for (const auto& w : ws) {
            Json word = Json::array();
            for (const auto& l : w) word.push_back(l.exponent > 0 ? int(l.generator) + 1 : -int(l.generator) - 1);
            out.push_back(word);
        }
        return out;
    };
    return Json{{"generators", p.generator_count},
                {"relators", words(p.relators)},
                {"edge_words", words(p.edge_words)},
                {"hash", p.hash()}};
}

}  // namespace pdpair
