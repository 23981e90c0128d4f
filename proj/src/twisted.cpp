#include "pdpair/twisted.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pdpair {

namespace {

int cap_sign(int m) { return (m * (m + 1) / 2) % 2 == 0 ? 1 : -1; }

Simplex slice(const Simplex& s, std::size_t from, std::size_t to) {
    return Simplex(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to) + 1);
}

std::size_t simplex_index(const SimplicialComplex& c, const Simplex& s) {
    auto i = c.index_of(s);
    if (!i) throw std::logic_error("simplex missing from complex");
    return *i;
}

/// Row vector x (BigInt) times an integer transport matrix.
IntVector times(const IntVector& x, const SmallMatrix& t) {
    IntVector y(x.size(), BigInt(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (auto [j, v] : t.row(i)) y[j] += x[i] * BigInt(static_cast<long>(v));
    }
    return y;
}

IntVector kron(const IntVector& x, const IntVector& y) {
    IntVector out(x.size() * y.size(), BigInt(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
    }
    return out;
}

IntVector block(const TwistedComplex& space, const IntVector& v, std::size_t cell) {
    const std::size_t r = space.rank();
    return IntVector(v.begin() + static_cast<long>(cell * r), v.begin() + static_cast<long>((cell + 1) * r));
}

/// Coefficient block of a (co)chain on a simplex of the total complex, zero
/// when the simplex is not a cell.
IntVector value_on(const TwistedComplex& space, int p, const IntVector& v, std::size_t simplex) {
    auto c = space.cell(p, simplex);
    if (!c) return IntVector(space.rank(), BigInt(0));
    return block(space, v, *c);
}

void check_same_total(const TwistedComplex& a, const TwistedComplex& b) {
    if (a.total().vertex_count() != b.total().vertex_count() || a.total().size() != b.total().size()) {
        throw std::invalid_argument("twisted complexes live on different complexes");
    }
}

void check_length(const TwistedComplex& s, int p, const IntVector& v) {
    if (v.size() != s.cells(p) * s.rank()) throw std::invalid_argument("vector length does not match basis");
}

}  // namespace

std::size_t edge_index(const SimplicialComplex& c, const Simplex& s, std::size_t i, std::size_t j) {
    return simplex_index(c, {s[i], s[j]});
}

TwistedComplex::TwistedComplex(const SimplicialPair& pair, Connection connection, bool relative, Variance variance)
    : TwistedComplex(std::make_shared<const SimplicialPair>(pair), std::move(connection), relative, variance) {}

TwistedComplex::TwistedComplex(std::shared_ptr<const SimplicialPair> pair, Connection connection, bool relative,
                               Variance variance)
    : pair_(std::move(pair)), connection_(std::move(connection)), relative_(relative), variance_(variance) {
    const auto& x = pair_->total;
    if (connection_.edge_count() != x.count(1)) throw std::invalid_argument("connection does not match complex");
    const int dim = x.dimension();
    const std::size_t r = rank();
    cells_.resize(std::max(dim + 1, 0));
    cell_of_.resize(std::max(dim + 1, 0));
    for (int p = 0; p <= dim; ++p) {
        cell_of_[p].assign(x.count(p), -1);
        for (std::size_t i = 0; i < x.count(p); ++i) {
            if (relative_ && pair_->sub.contains(x.simplices(p)[i])) continue;
            cell_of_[p][i] = static_cast<long>(cells_[p].size());
            cells_[p].push_back(i);
        }
    }
    std::vector<SparseIntMatrix> ds;
    if (variance_ == Variance::chains) {
        for (int p = 0; p <= dim; ++p) {
            std::vector<MatrixEntry> e;
            if (p > 0) {
                for (std::size_t c = 0; c < cells_[p].size(); ++c) {
                    const std::size_t s = cells_[p][c];
                    const Simplex& sigma = x.simplices(p)[s];
                    for (std::size_t k = 0; k <= static_cast<std::size_t>(p); ++k) {
                        long f = cell_of_[p - 1][x.face_index(p, s, k)];
                        if (f < 0) continue;
                        const int sign = k % 2 == 0 ? 1 : -1;
                        if (k == 0) {
                            const auto& t = connection_.transport(edge_index(x, sigma, 0, 1));
                            for (std::size_t b = 0; b < r; ++b) {
                                for (auto [b2, v] : t.row(b)) {
                                    e.push_back({f * r + b2, c * r + b, BigInt(static_cast<long>(sign * v))});
                                }
                            }
                        } else {
                            for (std::size_t b = 0; b < r; ++b) e.push_back({f * r + b, c * r + b, BigInt(sign)});
                        }
                    }
                }
            }
            std::size_t rows = p == 0 ? 0 : cells_[p - 1].size() * r;
            ds.push_back(SparseIntMatrix::from_triplets(rows, cells_[p].size() * r, std::move(e)));
        }
        realized_ = share(ChainComplexZ(0, std::move(ds)));
    } else {
        for (int p = dim; p >= 0; --p) {
            std::vector<MatrixEntry> e;
            std::size_t rows = p == dim ? 0 : cells_[p + 1].size() * r;
            if (p < dim) {
                for (std::size_t c = 0; c < cells_[p + 1].size(); ++c) {
                    const std::size_t s = cells_[p + 1][c];
                    const Simplex& tau = x.simplices(p + 1)[s];
                    for (std::size_t k = 0; k <= static_cast<std::size_t>(p + 1); ++k) {
                        long f = cell_of_[p][x.face_index(p + 1, s, k)];
                        if (f < 0) continue;
                        const int sign = k % 2 == 0 ? 1 : -1;
                        if (k == 0) {
                            const auto& t = connection_.inverse_transport(edge_index(x, tau, 0, 1));
                            for (std::size_t b = 0; b < r; ++b) {
                                for (auto [b2, v] : t.row(b)) {
                                    e.push_back({c * r + b2, f * r + b, BigInt(static_cast<long>(sign * v))});
                                }
                            }
                        } else {
                            for (std::size_t b = 0; b < r; ++b) e.push_back({c * r + b, f * r + b, BigInt(sign)});
                        }
                    }
                }
            }
            ds.push_back(SparseIntMatrix::from_triplets(rows, cells_[p].size() * r, std::move(e)));
        }
        realized_ = share(ChainComplexZ(-dim, std::move(ds)));
    }
    if (auto why = realized_->defect()) throw std::logic_error("twisted complex: " + *why);
}

std::size_t TwistedComplex::cells(int p) const {
    if (p < 0 || p >= static_cast<int>(cells_.size())) return 0;
    return cells_[p].size();
}

std::optional<std::size_t> TwistedComplex::cell(int p, std::size_t simplex) const {
    if (p < 0 || p >= static_cast<int>(cell_of_.size())) return std::nullopt;
    long c = cell_of_[p][simplex];
    if (c < 0) return std::nullopt;
    return static_cast<std::size_t>(c);
}

HomologyGroup TwistedComplex::homology(int p) const { return pdpair::homology(*realized_, realized_degree(p)); }

IntVector transfer_basis(const TwistedComplex& from, const TwistedComplex& to, int p, const IntVector& v) {
    check_same_total(from, to);
    check_length(from, p, v);
    const std::size_t r = from.rank();
    IntVector out(to.cells(p) * r, BigInt(0));
    for (std::size_t c = 0; c < from.cells(p); ++c) {
        auto d = to.cell(p, from.simplex(p, c));
        if (!d) continue;
        for (std::size_t b = 0; b < r; ++b) out[*d * r + b] = v[c * r + b];
    }
    return out;
}

ChainMap cap_map(const TwistedComplex& z_space, const IntVector& z, int n, const TwistedComplex& cochains,
                 bool target_relative) {
    check_same_total(z_space, cochains);
    check_length(z_space, n, z);
    if (z_space.variance() != Variance::chains || cochains.variance() != Variance::cochains) {
        throw std::invalid_argument("cap_map: expects chains and cochains");
    }
    TwistedComplex target(z_space.pair_ptr(), z_space.connection().tensor(cochains.connection()), target_relative);
    const auto& x = z_space.total();
    const std::size_t rb = cochains.rank(), rt = target.rank();
    std::map<int, std::vector<MatrixEntry>> entries;
    for (std::size_t c = 0; c < z_space.cells(n); ++c) {
        IntVector o = block(z_space, z, c);
        if (is_zero(o)) continue;
        const Simplex& sigma = x.simplices(n)[z_space.simplex(n, c)];
        for (int m = 0; m <= n; ++m) {
            auto fc = cochains.cell(m, simplex_index(x, slice(sigma, 0, m)));
            auto bc = target.cell(n - m, simplex_index(x, slice(sigma, m, n)));
            if (!fc || !bc) continue;
            for (std::size_t j = 0; j < rb; ++j) {
                IntVector ej(rb, BigInt(0));
                ej[j] = 1;
                IntVector w = kron(o, ej);
                if (m > 0) w = times(w, target.connection().transport(edge_index(x, sigma, 0, m)));
                for (std::size_t t = 0; t < rt; ++t) {
                    if (w[t] != 0) entries[n - m].push_back({*bc * rt + t, *fc * rb + j, cap_sign(m) * w[t]});
                }
            }
        }
    }
    auto source = share(cochains.realized().shifted(n));
    std::map<int, SparseIntMatrix> comps;
    for (auto& [d, e] : entries) {
        comps.emplace(d, SparseIntMatrix::from_triplets(target.realized().rank(d), source->rank(d), std::move(e)));
    }
    ChainMap f(source, target.realized_ptr(), std::move(comps));
    if (!f.is_chain_map()) throw std::logic_error("cap_map: not a chain map (is z a cycle?)");
    return f;
}

IntVector cap_chain(const TwistedComplex& chains, int n, const IntVector& z, const TwistedComplex& cochains, int m,
                    const IntVector& phi, const TwistedComplex& target) {
    check_same_total(chains, cochains);
    check_same_total(chains, target);
    check_length(chains, n, z);
    check_length(cochains, m, phi);
    const auto& x = chains.total();
    IntVector out(target.cells(n - m) * target.rank(), BigInt(0));
    if (m > n) return out;
    for (std::size_t c = 0; c < chains.cells(n); ++c) {
        IntVector o = block(chains, z, c);
        if (is_zero(o)) continue;
        const Simplex& sigma = x.simplices(n)[chains.simplex(n, c)];
        auto bc = target.cell(n - m, simplex_index(x, slice(sigma, m, n)));
        if (!bc) continue;
        IntVector f = value_on(cochains, m, phi, simplex_index(x, slice(sigma, 0, m)));
        if (is_zero(f)) continue;
        IntVector w = kron(o, f);
        if (m > 0) w = times(w, target.connection().transport(edge_index(x, sigma, 0, m)));
        for (std::size_t t = 0; t < w.size(); ++t) out[*bc * target.rank() + t] += w[t];
    }
    return out;
}

ChainMap thom_cap_map(const TwistedComplex& chains, const TwistedComplex& u_space, const IntVector& u, int k,
                      const TwistedComplex& target) {
    check_same_total(chains, u_space);
    check_same_total(chains, target);
    check_length(u_space, k, u);
    const auto& x = chains.total();
    const std::size_t rb = chains.rank(), rt = target.rank();
    std::map<int, std::vector<MatrixEntry>> entries;
    for (int d = k; d <= x.dimension(); ++d) {
        const int p = d - k;
        const int sign = (k * p) % 2 == 0 ? 1 : -1;
        for (std::size_t c = 0; c < chains.cells(d); ++c) {
            const Simplex& sigma = x.simplices(d)[chains.simplex(d, c)];
            IntVector f = value_on(u_space, k, u, simplex_index(x, slice(sigma, 0, k)));
            if (is_zero(f)) continue;
            auto bc = target.cell(p, simplex_index(x, slice(sigma, k, d)));
            if (!bc) continue;
            for (std::size_t j = 0; j < rb; ++j) {
                IntVector ej(rb, BigInt(0));
                ej[j] = 1;
                IntVector w = kron(ej, f);
                if (k > 0) w = times(w, target.connection().transport(edge_index(x, sigma, 0, k)));
                for (std::size_t t = 0; t < rt; ++t) {
                    if (w[t] != 0) entries[p].push_back({*bc * rt + t, c * rb + j, sign * w[t]});
                }
            }
        }
    }
    auto source = share(chains.realized().shifted(-k));
    std::map<int, SparseIntMatrix> comps;
    for (auto& [d, e] : entries) {
        comps.emplace(d, SparseIntMatrix::from_triplets(target.realized().rank(d), source->rank(d), std::move(e)));
    }
    ChainMap f(source, target.realized_ptr(), std::move(comps));
    if (!f.is_chain_map()) throw std::logic_error("thom_cap_map: not a chain map (is u a cocycle?)");
    return f;
}

IntVector cup_chain(const TwistedComplex& a_space, int p, const IntVector& a, const TwistedComplex& b_space, int q,
                    const IntVector& b, const TwistedComplex& target) {
    check_same_total(a_space, b_space);
    check_same_total(a_space, target);
    check_length(a_space, p, a);
    check_length(b_space, q, b);
    const auto& x = target.total();
    IntVector out(target.cells(p + q) * target.rank(), BigInt(0));
    for (std::size_t c = 0; c < target.cells(p + q); ++c) {
        const Simplex& tau = x.simplices(p + q)[target.simplex(p + q, c)];
        IntVector fa = value_on(a_space, p, a, simplex_index(x, slice(tau, 0, p)));
        if (is_zero(fa)) continue;
        IntVector fb = value_on(b_space, q, b, simplex_index(x, slice(tau, p, p + q)));
        if (is_zero(fb)) continue;
        if (p > 0) fb = times(fb, b_space.connection().inverse_transport(edge_index(x, tau, 0, p)));
        IntVector w = kron(fa, fb);
        for (std::size_t t = 0; t < w.size(); ++t) out[c * target.rank() + t] = w[t];
    }
    return out;
}

Connection product_connection(const SimplicialComplex& a, const Connection& ca, const SimplicialComplex& b,
                              const Connection& cb, const SimplicialComplex& product) {
    const std::size_t nb = b.vertex_count();
    std::vector<SmallMatrix> fwd, bwd;
    for (const auto& e : product.simplices(1)) {
        Vertex i0 = e[0] / nb, j0 = e[0] % nb, i1 = e[1] / nb, j1 = e[1] % nb;
        SmallMatrix fa = SmallMatrix::identity(ca.rank()), ia = fa;
        SmallMatrix fb = SmallMatrix::identity(cb.rank()), ib = fb;
        if (i0 != i1) {
            auto k = simplex_index(a, {i0, i1});
            fa = ca.transport(k);
            ia = ca.inverse_transport(k);
        }
        if (j0 != j1) {
            auto k = simplex_index(b, {j0, j1});
            fb = cb.transport(k);
            ib = cb.inverse_transport(k);
        }
        fwd.push_back(fa.kron(fb));
        bwd.push_back(ia.kron(ib));
    }
    return Connection(ca.rank() * cb.rank(), std::move(fwd), std::move(bwd));
}

std::vector<std::pair<Simplex, int>> shuffle_terms(const Simplex& sigma, const Simplex& tau, std::size_t nb) {
    const std::size_t p = sigma.size() - 1, q = tau.size() - 1;
    std::vector<std::pair<Simplex, int>> out;
    // step pattern: 0 = advance in sigma, 1 = advance in tau
    std::vector<int> steps(p, 0);
    steps.resize(p + q, 1);
    do {
        std::size_t i = 0, j = 0;
        long inversions = 0, seen_tau = 0;
        Simplex s{static_cast<Vertex>(sigma[0] * nb + tau[0])};
        for (int st : steps) {
            if (st == 0) {
                ++i;
                inversions += seen_tau;
            } else {
                ++j;
                ++seen_tau;
            }
            s.push_back(static_cast<Vertex>(sigma[i] * nb + tau[j]));
        }
        out.emplace_back(std::move(s), inversions % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(steps.begin(), steps.end()));
    return out;
}

IntVector cross_chain(const TwistedComplex& a_space, int p, const IntVector& a, const TwistedComplex& b_space, int q,
                      const IntVector& b, const TwistedComplex& target) {
    check_length(a_space, p, a);
    check_length(b_space, q, b);
    const std::size_t nb = b_space.total().vertex_count();
    const auto& x = target.total();
    IntVector out(target.cells(p + q) * target.rank(), BigInt(0));
    for (std::size_t c = 0; c < a_space.cells(p); ++c) {
        IntVector xa = block(a_space, a, c);
        if (is_zero(xa)) continue;
        const Simplex& sigma = a_space.total().simplices(p)[a_space.simplex(p, c)];
        for (std::size_t d = 0; d < b_space.cells(q); ++d) {
            IntVector xb = block(b_space, b, d);
            if (is_zero(xb)) continue;
            const Simplex& tau = b_space.total().simplices(q)[b_space.simplex(q, d)];
            IntVector w = kron(xa, xb);
            for (const auto& [s, sign] : shuffle_terms(sigma, tau, nb)) {
                auto cell = target.cell(p + q, simplex_index(x, s));
                if (!cell) continue;
                for (std::size_t t = 0; t < w.size(); ++t) out[*cell * target.rank() + t] += sign * w[t];
            }
        }
    }
    return out;
}

IntVector cross_cochain(const TwistedComplex& a_space, int p, const IntVector& a, const TwistedComplex& b_space,
                        int q, const IntVector& b, const TwistedComplex& target) {
    check_length(a_space, p, a);
    check_length(b_space, q, b);
    const std::size_t nb = b_space.total().vertex_count();
    const auto& x = target.total();
    const auto& ax = a_space.total();
    const auto& bx = b_space.total();
    IntVector out(target.cells(p + q) * target.rank(), BigInt(0));
    for (std::size_t c = 0; c < target.cells(p + q); ++c) {
        const Simplex& tau = x.simplices(p + q)[target.simplex(p + q, c)];
        Simplex front, back;
        for (int k = 0; k <= p; ++k) front.push_back(tau[k] / nb);
        for (int k = p; k <= p + q; ++k) back.push_back(tau[k] % nb);
        if (std::adjacent_find(front.begin(), front.end()) != front.end()) continue;
        if (std::adjacent_find(back.begin(), back.end()) != back.end()) continue;
        IntVector fa = value_on(a_space, p, a, simplex_index(ax, front));
        if (is_zero(fa)) continue;
        IntVector fb = value_on(b_space, q, b, simplex_index(bx, back));
        if (is_zero(fb)) continue;
        Vertex j0 = tau[0] % nb, jp = tau[p] % nb;
        if (j0 != jp) fb = times(fb, b_space.connection().inverse_transport(simplex_index(bx, {j0, jp})));
        IntVector w = kron(fa, fb);
        for (std::size_t t = 0; t < w.size(); ++t) out[c * target.rank() + t] = w[t];
    }
    return out;
}

namespace {

// Words of the given length over `letters` using every letter, with no letter
// repeated twice in a row.
void spanning_words(const Simplex& letters, std::size_t length, BasisTag& word, std::vector<BasisTag>& out) {
    if (word.size() == length) {
        for (auto v : letters) {
            if (std::find(word.begin(), word.end(), v) == word.end()) return;
        }
        out.push_back(word);
        return;
    }
    for (auto v : letters) {
        if (!word.empty() && word.back() == v) continue;
        word.push_back(v);
        spanning_words(letters, length, word, out);
        word.pop_back();
    }
}

}  // namespace

ChainComplexZ ordered_chain_complex(const SimplicialComplex& c) {
    const int top = c.dimension() + 1;
    std::vector<std::vector<BasisTag>> tags(std::max(top + 1, 0));
    for (int p = 0; p <= top; ++p) {
        for (int q = 0; q <= std::min(p, c.dimension()); ++q) {
            for (const auto& s : c.simplices(q)) {
                BasisTag word;
                spanning_words(s, static_cast<std::size_t>(p) + 1, word, tags[p]);
            }
        }
        std::sort(tags[p].begin(), tags[p].end());
    }
    std::vector<SparseIntMatrix> ds;
    for (int p = 0; p <= top; ++p) {
        std::vector<MatrixEntry> e;
        if (p > 0) {
            for (std::size_t i = 0; i < tags[p].size(); ++i) {
                for (std::size_t k = 0; k <= static_cast<std::size_t>(p); ++k) {
                    BasisTag f = tags[p][i];
                    f.erase(f.begin() + static_cast<long>(k));
                    if (std::adjacent_find(f.begin(), f.end()) != f.end()) continue;  // degenerate
                    auto it = std::lower_bound(tags[p - 1].begin(), tags[p - 1].end(), f);
                    e.push_back({static_cast<std::size_t>(it - tags[p - 1].begin()), i, BigInt(k % 2 == 0 ? 1 : -1)});
                }
            }
        }
        ds.push_back(SparseIntMatrix::from_triplets(p == 0 ? 0 : tags[p - 1].size(), tags[p].size(), std::move(e)));
    }
    ChainComplexZ out(0, std::move(ds));
    out.tags = std::move(tags);
    return out;
}

ChainMap theta_map(ComplexPtr c) {
    if (!c->has_tags()) throw std::invalid_argument("theta_map: complex has no simplex tags");
    std::map<int, SparseIntMatrix> comps;
    for (int p = c->lo(); p <= c->hi(); ++p) {
        const auto& tags = c->tags_in(p);
        std::map<BasisTag, std::size_t> index;
        for (std::size_t i = 0; i < tags.size(); ++i) index.emplace(tags[i], i);
        const int sign = cap_sign(p);
        std::vector<MatrixEntry> e;
        for (std::size_t i = 0; i < tags.size(); ++i) {
            BasisTag r(tags[i].rbegin(), tags[i].rend());
            auto it = index.find(r);
            int s = sign;
            if (it == index.end()) {
                // oriented chains: the reversed simplex is the sorted one up to sign
                BasisTag sorted = r;
                long inversions = 0;
                for (std::size_t a = 0; a < r.size(); ++a) {
                    for (std::size_t b = a + 1; b < r.size(); ++b) inversions += r[a] > r[b];
                }
                std::sort(sorted.begin(), sorted.end());
                it = index.find(sorted);
                if (it == index.end()) throw std::invalid_argument("theta_map: reversed simplex not in basis");
                s *= inversions % 2 == 0 ? 1 : -1;
            }
            e.push_back({it->second, i, BigInt(s)});
        }
        comps.emplace(p, SparseIntMatrix::from_triplets(tags.size(), tags.size(), std::move(e)));
    }
    ChainMap f(c, c, std::move(comps));
    if (!f.is_chain_map()) throw std::logic_error("theta_map: not a chain map");
    return f;
}

Json cycle_to_json(const TwistedComplex& space, const CycleClass& z) {
    check_length(space, z.degree, z.coeffs);
    Json coeffs = Json::array();
    const std::size_t r = space.rank();
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) {
        if (z.coeffs[i] == 0) continue;
        Json value = fits_int64(z.coeffs[i]) ? Json(to_int64(z.coeffs[i])) : Json(to_string(z.coeffs[i]));
        coeffs.push_back(Json::array({space.simplex(z.degree, i / r), i % r, value}));
    }
    return Json{{"degree", z.degree}, {"coeffs", coeffs}};
}

CycleClass cycle_from_json(const TwistedComplex& space, const Json& j) {
    try {
        CycleClass z;
        z.degree = j.at("degree").get<int>();
        z.coeffs.assign(space.cells(z.degree) * space.rank(), BigInt(0));
        for (const auto& t : j.at("coeffs")) {
            auto s = t.at(0).get<std::size_t>();
            auto b = t.at(1).get<std::size_t>();
            BigInt v = t.at(2).is_string() ? BigInt(t.at(2).get<std::string>()) : BigInt(t.at(2).get<long>());
            if (s >= space.total().count(z.degree) || b >= space.rank()) throw ParseError("class: index out of range");
            auto c = space.cell(z.degree, s);
            if (!c) throw ParseError("class: simplex " + std::to_string(s) + " lies in the subcomplex");
            z.coeffs[*c * space.rank() + b] += v;
        }
        return z;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("class: ") + e.what());
    }
}

}  // namespace pdpair
